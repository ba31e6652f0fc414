// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

// The key equation f h_y = q + r with f in L(F), q in L(K+F+D-G) and
// r in L(K+F-G*). f is read off the kernel of the W-component of
// f -> f h_y; the error is then e_j = res_{P_j}(r eta / f).

#pragma once

#include "agkey/agcode.hpp"
#include "agkey/funcspace.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace agkey::keyeq {

using agcode::CodePtr;
using curve::Divisor;
using funcspace::DifferentialContext;
using gf::Element;
using linalg::Matrix;
using linalg::Vector;

struct KeyEquationSolution {
    Vector f; // coordinates in L(F)
    Vector q; // coordinates in L(K+F+D-G)
    Vector r; // coordinates in L(K+F-G*)
    Vector e;
    Vector codeword; // y - e
};

enum class KeyStatus { Accepted, NoKernel, Rejected };

const char* to_string(KeyStatus s);

struct KeyResult {
    KeyStatus status = KeyStatus::NoKernel;
    // Present for Accepted and Rejected.
    std::optional<KeyEquationSolution> solution;
    std::string reason;
};

// Everything about one (code, F) pair that does not depend on y.
class KeyEquation {
public:
    // t_limit < 0 means the code's own capacity. Throws BadDivisorRange,
    // DegenerateDecomposition.
    KeyEquation(CodePtr code, const DifferentialContext& ctx, Divisor F, int t_limit = -1);

    const agcode::AGCode& code() const noexcept { return *code_; }
    const DifferentialContext& context() const noexcept { return *ctx_; }
    const Divisor& F() const noexcept { return F_; }
    int t_limit() const noexcept { return t_; }
    const funcspace::SpacePtr& LF() const noexcept { return LF_; }
    const funcspace::SpaceDecomposition& decomposition() const noexcept { return *dec_; }

    // ell(F) x dim(big) matrix: row a holds the (Q | R | W) coordinates of
    // f_a h_y.
    Matrix epsilon(std::span<const Element> y) const;
    KeyResult solve(std::span<const Element> y) const;
    // res_D(r eta / f) for coordinate vectors f in L(F) and r in L(K+F-G*).
    Vector error_from(std::span<const Element> f, std::span<const Element> r) const;

private:
    CodePtr code_;
    const DifferentialContext* ctx_;
    Divisor F_;
    int t_ = 0;
    funcspace::SpacePtr LF_;
    std::unique_ptr<funcspace::SpaceDecomposition> dec_;
    // Basis expansions at the anchors.
    std::vector<std::vector<series::Laurent>> f_anchor_, u_anchor_;
    // Basis expansions at the points of D.
    std::vector<std::vector<series::Laurent>> f_D_, r_D_;
    std::vector<series::Laurent> eta_D_;
};

// One-shot wrapper around KeyEquation.
KeyResult key_solve(CodePtr code, const DifferentialContext& ctx, const Divisor& F, std::span<const Element> y);

// Independent check of a solution: f, q, r have the right poles everywhere
// on the curve, f is nonzero and f h_y = q + r in the frame of the big space.
bool verify_solution(const KeyEquation& ke, const KeyEquationSolution& sol, std::span<const Element> y);

} // namespace agkey::keyeq
