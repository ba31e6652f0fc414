// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

// Rational functions on a plane curve, Riemann-Roch spaces, the fixed
// differential eta = dx / f_y, residues and the spaces built on them.
//
// A space L(A) is stored as {G / H0 : G in a finite set of forms of one
// degree}, where H0 is a product of rational lines whose divisor dominates
// the positive part of A. Everything else (membership, products, the W
// decomposition) happens on truncated Laurent expansions at a handful of
// anchor points, which turns subspace relations into linear algebra.

#pragma once

#include "agkey/curve.hpp"
#include "agkey/linalg.hpp"
#include "agkey/poly.hpp"
#include "agkey/series.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace agkey::funcspace {

using curve::CurvePtr;
using curve::Divisor;
using curve::PlaneCurve;
using gf::Element;
using gf::Field;
using linalg::Matrix;
using linalg::Vector;
using poly::Form;
using series::Laurent;

struct RationalFunction {
    Form num;
    Form den;

    // "a^3 + Z^3/(X^2*Y)" style input; throws NotHomogeneous unless the
    // weight is 0.
    static RationalFunction parse(const PlaneCurve& c, std::string_view text);
    static RationalFunction constant(const Field& f, Element v);
    std::string to_string() const;
};

// ord_p(num/den); nullopt when num vanishes on the curve. Throws
// PoleOrderUnbounded when den does.
std::optional<int> function_valuation(const PlaneCurve& c, const Form& num, const Form& den, std::size_t p);

// num/den near p, absolute precision E. Throws PoleOrderUnbounded when den
// vanishes on the curve.
Laurent function_series(const PlaneCurve& c, const Form& num, const Form& den, std::size_t p, int E);
inline Laurent function_series(const PlaneCurve& c, const RationalFunction& fn, std::size_t p, int E)
{
    return function_series(c, fn.num, fn.den, p, E);
}

class FunctionSpace;
using SpacePtr = std::shared_ptr<const FunctionSpace>;

// L(A). Immutable apart from an internal series memo.
class FunctionSpace {
public:
    FunctionSpace(const FunctionSpace&) = delete;
    FunctionSpace& operator=(const FunctionSpace&) = delete;

    const CurvePtr& curve() const noexcept { return curve_; }
    const Divisor& divisor() const noexcept { return A_; }
    std::size_t dim() const noexcept { return num_.size(); }
    const Form& denominator() const noexcept { return H0_; }
    const Divisor& denominator_divisor() const noexcept { return H0div_; }
    const std::vector<Form>& numerators() const noexcept { return num_; }

    RationalFunction basis_function(std::size_t i) const;
    RationalFunction function(std::span<const Element> coeffs) const;

    // Expansions of the basis at p to absolute precision E. Each starts at
    // or above -A_p.
    std::vector<Laurent> basis_series(std::size_t p, int E) const;
    Laurent series(std::span<const Element> coeffs, std::size_t p, int E) const;

    // dim x |points| matrix of values. Throws PoleOnD when some basis
    // function has a pole at one of the points.
    Matrix evaluation_matrix(std::span<const std::size_t> points) const;

private:
    friend SpacePtr rr_space(const CurvePtr& c, const Divisor& A);
    FunctionSpace() = default;

    CurvePtr curve_;
    Divisor A_;
    Form H0_;
    Divisor H0div_;
    std::vector<Form> num_;

    mutable std::mutex mu_;
    mutable std::map<std::size_t, std::pair<int, std::vector<Laurent>>> memo_;
};

// Throws UnsupportedDivisor for points off the curve's point list and
// AmbientTooSmall when the dimension disagrees with Riemann-Roch twice.
SpacePtr rr_space(const CurvePtr& c, const Divisor& A);

// Thread-safe memo of rr_space by divisor.
class SpaceCache {
public:
    explicit SpaceCache(CurvePtr c) : curve_(std::move(c)) {}
    SpacePtr get(const Divisor& A) const;
    const CurvePtr& curve() const noexcept { return curve_; }

private:
    CurvePtr curve_;
    mutable std::mutex mu_;
    mutable std::map<Divisor, SpacePtr> spaces_;
};

// Coefficient windows at anchor points. The fingerprint of a function is
// the concatenation of its coefficients of t^lower .. t^(lower+length-1)
// at each anchor; on L(A) with A <= A_max it is injective once the budget
// exceeds deg A_max.
struct Frame {
    std::vector<std::size_t> anchors;
    std::vector<int> lower;
    std::vector<int> length;

    std::size_t size() const noexcept;
    // Absolute precision needed at anchor i.
    int precision(std::size_t i) const noexcept { return lower[i] + length[i]; }
    // series[i] is the expansion at anchors[i].
    Vector fingerprint(const Field& f, std::span<const Laurent> series) const;
};

Frame make_frame(std::vector<std::size_t> anchors, const Divisor& A_max, int budget);

// Fingerprint of a single function, expanded from its forms.
Vector fingerprint_of(const PlaneCurve& c, const Frame& frame, const RationalFunction& fn);

// sum_i coeffs[i] * basis[i] to absolute precision E.
Laurent combine(const Field& f, std::span<const Laurent> basis, std::span<const Element> coeffs, int E);

// A space together with its fingerprint matrix in a frame and a left
// inverse on a set of pivot columns.
class FramedSpace {
public:
    FramedSpace(SpacePtr space, Frame frame);

    const SpacePtr& space() const noexcept { return space_; }
    const Frame& frame() const noexcept { return frame_; }
    std::size_t dim() const noexcept { return space_->dim(); }
    // dim x frame.size()
    const Matrix& fingerprints() const noexcept { return M_; }
    const std::vector<std::size_t>& pivots() const noexcept { return piv_; }
    const Matrix& pivot_inverse() const noexcept { return inv_; }

    // Basis coordinates of a fingerprint; throws NotInSpace.
    Vector coordinates(std::span<const Element> fp) const;
    std::optional<Vector> try_coordinates(std::span<const Element> fp) const;

private:
    SpacePtr space_;
    Frame frame_;
    Matrix M_;
    std::vector<std::size_t> piv_;
    Matrix inv_; // dim x dim, inverse of M_ restricted to piv_
};

// eta = dx / f_y, its divisor K, the residue map on D and the space U.
class DifferentialContext {
public:
    // Throws SupportOverlap, BadDivisorRange, UnsupportedDivisor (G* with
    // sections or G* not below G), InvariantViolation (deg K, residue rank).
    DifferentialContext(CurvePtr c, std::vector<std::size_t> D, Divisor G, std::size_t P_inf,
                        std::optional<Divisor> G_star = {}, std::size_t anchor_count = 4);

    const CurvePtr& curve() const noexcept { return curve_; }
    const PlaneCurve& plane() const noexcept { return *curve_; }
    const Field& field() const noexcept { return curve_->field(); }
    std::size_t n() const noexcept { return D_.size(); }
    const std::vector<std::size_t>& D() const noexcept { return D_; }
    const Divisor& D_divisor() const noexcept { return Ddiv_; }
    const Divisor& G() const noexcept { return G_; }
    const Divisor& G_star() const noexcept { return Gs_; }
    const Divisor& K() const noexcept { return K_; }
    std::size_t P_inf() const noexcept { return P_inf_; }
    const std::vector<std::size_t>& anchors() const noexcept { return anchors_; }
    SpaceCache& spaces() const noexcept { return *cache_; }

    // L(K + D - G*) and the n x dim residue matrix of its basis.
    const SpacePtr& U_ambient() const noexcept { return Uamb_; }
    const Matrix& residue_matrix() const noexcept { return Res_; }
    // Basis indices of U inside U_ambient.
    const std::vector<std::size_t>& U_indices() const noexcept { return Upiv_; }

    // Coefficients of h_y in the U_ambient basis (zero off U).
    Vector h_coeffs(std::span<const Element> y) const;
    RationalFunction h_from_word(std::span<const Element> y) const;

    // eta/dt at p to absolute precision E; starts at K_p.
    Laurent eta_series(std::size_t p, int E) const;
    // Coefficient of t^-1 in h * eta/dt. Throws PrecisionExhausted when h is
    // not known far enough.
    Element residue(const Laurent& h, std::size_t p) const;
    Element residue(const RationalFunction& fn, std::size_t p) const;
    // (res_{P_1}(fn eta), ..., res_{P_n}(fn eta))
    Vector residues_on_D(const RationalFunction& fn) const;

    // Frame for spaces inside L(A_max) in this context's anchors.
    Frame frame_for(const Divisor& A_max) const;

private:
    CurvePtr curve_;
    std::vector<std::size_t> D_;
    Divisor Ddiv_, G_, Gs_, K_;
    std::size_t P_inf_ = 0;
    std::vector<std::size_t> anchors_;
    std::unique_ptr<SpaceCache> cache_;
    SpacePtr Uamb_;
    Matrix Res_;
    std::vector<std::size_t> Upiv_;
    Matrix Rinv_; // inverse of Res_ on the U columns

    mutable std::mutex mu_;
    mutable std::map<std::size_t, Laurent> eta_memo_;
};

// L(K+F+D-G*) = L(K+F+D-G) + L(K+F-G*) + W, all in one frame. G is the
// code divisor, which need not be the context's.
class SpaceDecomposition {
public:
    // Throws BadDivisorRange unless deg(G - F) > 2g - 2, and
    // DegenerateDecomposition when the two named spaces meet.
    SpaceDecomposition(const DifferentialContext& ctx, const Divisor& G, const Divisor& F);

    const Divisor& G() const noexcept { return G_; }
    const Divisor& F() const noexcept { return F_; }
    const FramedSpace& big() const noexcept { return *big_; }
    const FramedSpace& Q() const noexcept { return *Q_; }
    const FramedSpace& R() const noexcept { return *R_; }
    std::size_t dim_Q() const noexcept { return Q_->dim(); }
    std::size_t dim_R() const noexcept { return R_->dim(); }
    std::size_t dim_W() const noexcept { return dimW_; }
    // Rows: Q basis, R basis, W basis, all in big-space coordinates.
    const Matrix& block_basis() const noexcept { return T_; }

    // Big coordinates -> (Q | R | W) coordinates.
    Vector split(std::span<const Element> big_coords) const;
    // Fingerprint -> (Q | R | W) coordinates, with the NotInSpace check.
    Vector split_fingerprint(std::span<const Element> fp) const;
    // Projector onto block b (0 = Q, 1 = R, 2 = W) in big coordinates.
    Matrix projector(int b) const;

private:
    Divisor G_, F_;
    std::unique_ptr<FramedSpace> big_, Q_, R_;
    std::size_t dimW_ = 0;
    Matrix T_, Tinv_;
};

// Coordinates of f*h in target; throws NotInSpace.
Vector multiply_into(const DifferentialContext& ctx, const RationalFunction& f, const RationalFunction& h,
                     const FramedSpace& target);

} // namespace agkey::funcspace
