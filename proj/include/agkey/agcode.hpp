// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

// The residue code C_Omega(D, G), held as the dual of the evaluation code:
// y is a codeword iff sum_j y_j h(P_j) = 0 for every h in L(G).

#pragma once

#include "agkey/curve.hpp"
#include "agkey/funcspace.hpp"
#include "agkey/linalg.hpp"

#include <memory>
#include <span>
#include <vector>

namespace agkey::agcode {

using curve::CurvePtr;
using curve::Divisor;
using funcspace::RationalFunction;
using funcspace::SpacePtr;
using gf::Element;
using linalg::Matrix;
using linalg::Subspace;
using linalg::Vector;

// Strong: 2g-2 < deg G < n. Extended: 2g-2 < deg G < n+g, as for the
// enlarged divisors G + rP_inf used while decoding.
enum class Bounds { Strong, Extended };

class AGCode {
public:
    // Throws SupportOverlap, DegreeOutOfRange, UnsupportedDivisor.
    static std::shared_ptr<const AGCode> build(CurvePtr c, std::vector<std::size_t> D, Divisor G,
                                               Bounds bounds = Bounds::Strong,
                                               funcspace::SpaceCache* cache = nullptr);

    const CurvePtr& curve() const noexcept { return curve_; }
    const std::vector<std::size_t>& D() const noexcept { return D_; }
    const Divisor& G() const noexcept { return G_; }
    std::size_t n() const noexcept { return D_.size(); }
    std::size_t k() const noexcept { return gen_.rows(); }
    int genus() const noexcept { return curve_->genus(); }
    // Goppa distance deg G + 2 - 2g and capacity floor((d* - 1) / 2).
    int dstar() const noexcept { return G_.degree() + 2 - 2 * genus(); }
    int t() const noexcept { return (dstar() - 1) / 2; }

    const SpacePtr& LG() const noexcept { return LG_; }
    // Rows: evaluations of the L(G) basis at D.
    const Matrix& parity() const noexcept { return H_; }
    // Rows: reduced basis of the code.
    const Matrix& generator() const noexcept { return gen_; }
    const Subspace& space() const noexcept { return space_; }

    // One syndrome per L(G) basis element. Throws LengthMismatch.
    Vector syndromes(std::span<const Element> y) const;
    bool in_code(std::span<const Element> y) const;
    // message * generator. Throws LengthMismatch.
    Vector encode(std::span<const Element> message) const;

private:
    AGCode() = default;

    CurvePtr curve_;
    std::vector<std::size_t> D_;
    Divisor G_;
    SpacePtr LG_;
    Matrix H_, gen_;
    Subspace space_;
};

using CodePtr = std::shared_ptr<const AGCode>;

// S_y(h) = sum_j y_j h(P_j). Throws PoleOnD, LengthMismatch.
Element syndrome(const curve::PlaneCurve& c, std::span<const std::size_t> D, std::span<const Element> y,
                 const RationalFunction& h);

// Syndromes of y against evaluation rows of `small`'s L(H2) that complete
// the rows of `big`'s L(H1). Equal exactly on cosets of small in big.
// Throws NotSubspace when small is not inside big.
Vector coset_id(const AGCode& big, const AGCode& small, std::span<const Element> y);

int weight(std::span<const Element> v);

} // namespace agkey::agcode
