// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#include "agkey/keyeq.hpp"

#include "agkey/errors.hpp"

#include <cstdlib>
#include <string>

namespace agkey::keyeq {

using series::Laurent;

const char* to_string(KeyStatus s)
{
    switch (s) {
    case KeyStatus::Accepted:
        return "accepted";
    case KeyStatus::NoKernel:
        return "no-kernel";
    case KeyStatus::Rejected:
        return "rejected";
    }
    return "?";
}

KeyEquation::KeyEquation(CodePtr code, const DifferentialContext& ctx, Divisor F, int t_limit)
    : code_(std::move(code)), ctx_(&ctx), F_(std::move(F))
{
    t_ = t_limit < 0 ? code_->t() : t_limit;
    dec_ = std::make_unique<funcspace::SpaceDecomposition>(ctx, code_->G(), F_);
    LF_ = ctx.spaces().get(F_);

    const auto& frame = dec_->big().frame();
    const Divisor Udiv = ctx.K() + ctx.D_divisor() - ctx.G_star();
    for (std::size_t i = 0; i < frame.anchors.size(); ++i) {
        const std::size_t a = frame.anchors[i];
        const int P = frame.precision(i);
        // f starts at >= -F_a and h at >= -Udiv_a; each factor must reach
        // P minus the other's lowest order.
        f_anchor_.push_back(LF_->basis_series(a, P + Udiv[a]));
        u_anchor_.push_back(ctx.U_ambient()->basis_series(a, P + F_[a]));
    }

    const Divisor Rdiv = ctx.K() + F_ - ctx.G_star();
    const int degFp = F_.positive_part().degree();
    for (const std::size_t p : ctx.D()) {
        // ord_p(f) <= deg F+, and r eta starts at >= -F_p + G*_p.
        const int E = 2 * degFp + 2 * std::abs(F_[p]) + std::abs(ctx.G_star()[p]) + 2;
        f_D_.push_back(LF_->basis_series(p, E));
        r_D_.push_back(dec_->R().space()->basis_series(p, E));
        eta_D_.push_back(ctx.eta_series(p, E + Rdiv[p]));
    }
}

Matrix KeyEquation::epsilon(std::span<const Element> y) const
{
    const auto& f = ctx_->field();
    const auto hc = ctx_->h_coeffs(y);
    const auto& frame = dec_->big().frame();
    std::vector<Laurent> h;
    for (std::size_t i = 0; i < frame.anchors.size(); ++i)
        h.push_back(funcspace::combine(f, u_anchor_[i], hc, frame.precision(i) + F_[frame.anchors[i]]));
    Matrix E(f, LF_->dim(), dec_->big().dim());
    for (std::size_t a = 0; a < LF_->dim(); ++a) {
        std::vector<Laurent> prod;
        for (std::size_t i = 0; i < frame.anchors.size(); ++i)
            prod.push_back(series::mul(f, f_anchor_[i][a], h[i]));
        const Vector row = dec_->split_fingerprint(frame.fingerprint(f, prod));
        std::copy(row.begin(), row.end(), E.row(a).begin());
    }
    return E;
}

Vector KeyEquation::error_from(std::span<const Element> fc, std::span<const Element> rc) const
{
    const auto& f = ctx_->field();
    const auto& cv = ctx_->plane();
    Vector e(ctx_->n());
    for (std::size_t j = 0; j < ctx_->n(); ++j) {
        const int E = f_D_[j].empty() ? 0 : f_D_[j].front().precision();
        const Laurent fs = funcspace::combine(f, f_D_[j], fc, E).normalized();
        if (fs.coeffs().empty())
            throw InvariantViolation("f vanishes past the expected order at " + cv.point_string(ctx_->D()[j]));
        const Laurent rs = funcspace::combine(f, r_D_[j], rc, E);
        const Laurent q = series::divide(f, series::mul(f, rs, eta_D_[j]), fs);
        e[j] = q.coeff(-1);
    }
    return e;
}

KeyResult KeyEquation::solve(std::span<const Element> y) const
{
    KeyResult res;
    if (y.size() != ctx_->n())
        throw LengthMismatch("word length " + std::to_string(y.size()) + " != n = " + std::to_string(ctx_->n()));
    if (LF_->dim() == 0) {
        res.reason = "L(F) = 0";
        return res;
    }
    const auto& f = ctx_->field();
    const Matrix E = epsilon(y);
    const std::size_t dQ = dec_->dim_Q(), dR = dec_->dim_R(), dW = dec_->dim_W();
    const auto ker = linalg::left_kernel(E.block(0, dQ + dR, E.rows(), dW));
    if (ker.dim() == 0) {
        res.reason = "ker(pi_W eps_y) = 0";
        return res;
    }
    KeyEquationSolution sol;
    sol.f = ker.vector(0);
    const Vector row = E.apply_left(sol.f);
    sol.q.assign(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(dQ));
    sol.r.assign(row.begin() + static_cast<std::ptrdiff_t>(dQ), row.begin() + static_cast<std::ptrdiff_t>(dQ + dR));
    sol.e = error_from(sol.f, sol.r);
    sol.codeword.resize(y.size());
    for (std::size_t j = 0; j < y.size(); ++j)
        sol.codeword[j] = f.sub(y[j], sol.e[j]);
    const int w = agcode::weight(sol.e);
    if (w > t_) {
        res.status = KeyStatus::Rejected;
        res.reason = "wt(e) = " + std::to_string(w) + " > " + std::to_string(t_);
    } else if (!code_->in_code(sol.codeword)) {
        res.status = KeyStatus::Rejected;
        res.reason = "y - e not in C";
    } else {
        res.status = KeyStatus::Accepted;
    }
    res.solution = std::move(sol);
    return res;
}

KeyResult key_solve(CodePtr code, const DifferentialContext& ctx, const Divisor& F, std::span<const Element> y)
{
    return KeyEquation(std::move(code), ctx, F).solve(y);
}

namespace {

bool has_poles_within(const curve::PlaneCurve& c, const funcspace::RationalFunction& fn, const Divisor& A)
{
    for (std::size_t p = 0; p < c.points().size(); ++p) {
        const auto v = funcspace::function_valuation(c, fn.num, fn.den, p);
        if (v && *v < -A[p])
            return false;
    }
    return true;
}

} // namespace

bool verify_solution(const KeyEquation& ke, const KeyEquationSolution& sol, std::span<const Element> y)
{
    const auto& ctx = ke.context();
    const auto& cv = ctx.plane();
    const auto& f = ctx.field();
    const auto& dec = ke.decomposition();
    if (sol.f.size() != ke.LF()->dim() || sol.q.size() != dec.dim_Q() || sol.r.size() != dec.dim_R())
        return false;
    if (agcode::weight(sol.f) == 0)
        return false;
    const auto fn = ke.LF()->function(sol.f);
    const auto qn = dec.Q().space()->function(sol.q);
    const auto rn = dec.R().space()->function(sol.r);
    if (!has_poles_within(cv, fn, ke.F()) || !has_poles_within(cv, qn, dec.Q().space()->divisor()) ||
        !has_poles_within(cv, rn, dec.R().space()->divisor()))
        return false;

    // f h_y and q + r agree on the frame of the big space, which is
    // injective there.
    const auto h = ctx.h_from_word(y);
    const auto& frame = dec.big().frame();
    std::vector<Laurent> prod;
    for (std::size_t i = 0; i < frame.anchors.size(); ++i) {
        const std::size_t a = frame.anchors[i];
        const int P = frame.precision(i);
        const auto vf = funcspace::function_valuation(cv, fn.num, fn.den, a);
        const auto vh = funcspace::function_valuation(cv, h.num, h.den, a);
        if (!vf || !vh) {
            prod.emplace_back(P, std::vector<Element>{});
            continue;
        }
        prod.push_back(series::mul(f, funcspace::function_series(cv, fn, a, P - *vh),
                                   funcspace::function_series(cv, h, a, P - *vf)));
    }
    const Vector lhs = frame.fingerprint(f, prod);
    const Vector fq = funcspace::fingerprint_of(cv, frame, qn);
    const Vector fr = funcspace::fingerprint_of(cv, frame, rn);
    for (std::size_t k = 0; k < lhs.size(); ++k)
        if (lhs[k] != f.add(fq[k], fr[k]))
            return false;
    return true;
}

} // namespace agkey::keyeq
