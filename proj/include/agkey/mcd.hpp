// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

// One coset-decoding round for C0 = C(H1 - P), C1 = C(H1), C2 = C(H1 + P)
// with P = P_inf. Functions are handled through their evaluation vectors
// at D, which is injective for the divisors met here (degree < n), so
// subspaces of different L(F) compare directly.

#pragma once

#include "agkey/agcode.hpp"
#include "agkey/funcspace.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace agkey::mcd {

using agcode::CodePtr;
using curve::Divisor;
using funcspace::DifferentialContext;
using gf::Element;
using linalg::Matrix;
using linalg::Subspace;
using linalg::Vector;

struct ConditionA {
    bool a1 = false; // K1(F+P) != K0(F)
    bool a2 = false; // K0(F) == K1(F)
    bool a3 = false; // L(H1-F) != L(H1-F-P)
    bool holds() const noexcept { return a1 && a2 && a3; }
};

struct CosetStepReport {
    int index = 0;
    Vector f_eval; // f at D
    Vector g_eval; // g at D
    std::optional<Element> lambda;
    bool abstained = false;
    std::string reason;
};

class CosetContext {
public:
    // H1 must satisfy the extended degree bounds for H1 - P and H1 + P.
    CosetContext(const DifferentialContext& ctx, Divisor H1);

    const Divisor& H1() const noexcept { return H1_; }
    const agcode::AGCode& C0() const noexcept { return *C0_; }
    const agcode::AGCode& C1() const noexcept { return *C1_; }
    const agcode::AGCode& C2() const noexcept { return *C2_; }
    const CodePtr& C1_ptr() const noexcept { return C1_; }
    int d1star() const noexcept { return C1_->dstar(); }
    // First generator row of C1 outside C2; empty when C1 = C2.
    const std::optional<Vector>& c0() const noexcept { return c0_; }
    // Replaces c0; throws NotSubspace unless c in C1 \ C2.
    void set_c0(Vector c);

    // Evaluations at D of the functions in K_level(F'), F' = F or F + P.
    Subspace kernel_K(std::span<const Element> y1, const Divisor& F, int level, bool bump) const;
    ConditionA condition_A(std::span<const Element> y1, const Divisor& F) const;
    // Throws ConditionAViolated.
    CosetStepReport coset_step(std::span<const Element> y1, const Divisor& F, int index) const;

    // Evaluation rows of a basis of L(A) at D.
    const Matrix& evaluations(const Divisor& A) const;

private:
    const DifferentialContext* ctx_;
    Divisor H1_;
    Divisor P_;
    CodePtr C0_, C1_, C2_;
    std::optional<Vector> c0_;

    mutable std::mutex mu_;
    mutable std::map<Divisor, std::unique_ptr<Matrix>> evals_;
};

struct VoteResult {
    bool tie = false;
    Element lambda;
    // lambda value -> count, non-abstaining reports only.
    std::map<Element, int> tally;
};

// Strict plurality over non-abstaining reports. Throws EmptyVote.
VoteResult vote(std::span<const CosetStepReport> reports);

} // namespace agkey::mcd
