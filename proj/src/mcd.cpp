// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#include "agkey/mcd.hpp"

#include "agkey/errors.hpp"

#include <string>

namespace agkey::mcd {

CosetContext::CosetContext(const DifferentialContext& ctx, Divisor H1)
    : ctx_(&ctx), H1_(std::move(H1)), P_(Divisor::point(ctx.P_inf()))
{
    auto& cache = ctx.spaces();
    const auto& D = ctx.D();
    C0_ = agcode::AGCode::build(ctx.curve(), D, H1_ - P_, agcode::Bounds::Extended, &cache);
    C1_ = agcode::AGCode::build(ctx.curve(), D, H1_, agcode::Bounds::Extended, &cache);
    C2_ = agcode::AGCode::build(ctx.curve(), D, H1_ + P_, agcode::Bounds::Extended, &cache);
    for (std::size_t i = 0; i < C1_->k(); ++i) {
        const Vector c = C1_->generator().row_vector(i);
        if (!C2_->in_code(c)) {
            c0_ = c;
            break;
        }
    }
}

void CosetContext::set_c0(Vector c)
{
    if (!C1_->in_code(c) || C2_->in_code(c))
        throw NotSubspace("c0 must lie in C1 but not in C2");
    c0_ = std::move(c);
}

const Matrix& CosetContext::evaluations(const Divisor& A) const
{
    {
        std::lock_guard lock(mu_);
        const auto it = evals_.find(A);
        if (it != evals_.end())
            return *it->second;
    }
    auto m = std::make_unique<Matrix>(ctx_->spaces().get(A)->evaluation_matrix(ctx_->D()));
    std::lock_guard lock(mu_);
    auto& slot = evals_[A];
    if (!slot)
        slot = std::move(m);
    return *slot;
}

Subspace CosetContext::kernel_K(std::span<const Element> y1, const Divisor& F, int level, bool bump) const
{
    if (level != 0 && level != 1)
        throw InvariantViolation("only K0 and K1 are computable from the received word");
    if (y1.size() != ctx_->n())
        throw LengthMismatch("word length does not match D");
    const auto& f = ctx_->field();
    const Divisor Fp = bump ? F + P_ : F;
    const Divisor H = level == 0 ? H1_ - P_ : H1_;
    const Matrix& Ef = evaluations(Fp);
    const Matrix& Eg = evaluations(H - Fp);
    const std::size_t n = ctx_->n();
    if (Ef.rows() == 0)
        return Subspace(f, n);
    if (Eg.rows() == 0)
        return Subspace::span(Ef);
    // B[b][a] = S_y(f_a g_b)
    Matrix Gy = Eg;
    for (std::size_t b = 0; b < Gy.rows(); ++b)
        for (std::size_t j = 0; j < n; ++j)
            Gy(b, j) = f.mul(Gy(b, j), y1[j]);
    const Matrix B = linalg::matmul(Gy, Ef.transpose());
    const auto ker = linalg::kernel(B);
    if (ker.dim() == 0)
        return Subspace(f, n);
    return Subspace::span(linalg::matmul(ker.basis(), Ef));
}

ConditionA CosetContext::condition_A(std::span<const Element> y1, const Divisor& F) const
{
    ConditionA c;
    const auto K1b = kernel_K(y1, F, 1, true);
    const auto K0 = kernel_K(y1, F, 0, false);
    const auto K1 = kernel_K(y1, F, 1, false);
    if (!K1b.contains(K0) || !K0.contains(K1))
        throw InvariantViolation("K1(F) <= K0(F) <= K1(F+P) fails");
    if (K1b.dim() > K0.dim() + 1 || K0.dim() > K1.dim() + 1)
        throw InvariantViolation("kernel quotient of dimension > 1");
    c.a1 = K1b.dim() != K0.dim();
    c.a2 = K0.dim() == K1.dim();
    const auto l_big = evaluations(H1_ - F).rows();
    const auto l_small = evaluations(H1_ - F - P_).rows();
    c.a3 = l_big != l_small;
    return c;
}

CosetStepReport CosetContext::coset_step(std::span<const Element> y1, const Divisor& F, int index) const
{
    CosetStepReport rep;
    rep.index = index;
    if (!condition_A(y1, F).holds())
        throw ConditionAViolated("condition (A) fails for i = " + std::to_string(index));
    if (!c0_) {
        rep.abstained = true;
        rep.reason = "C1 = C2";
        return rep;
    }
    const auto& f = ctx_->field();
    const auto K1b = kernel_K(y1, F, 1, true);
    const auto K0 = kernel_K(y1, F, 0, false);
    rep.f_eval = linalg::complement_in(K0, K1b).vector(0);
    const auto Lg = Subspace::span(evaluations(H1_ - F));
    const auto Lg_small = Subspace::span(evaluations(H1_ - F - P_));
    rep.g_eval = linalg::complement_in(Lg_small, Lg).vector(0);
    Element sy{}, sc{};
    for (std::size_t j = 0; j < ctx_->n(); ++j) {
        const Element fg = f.mul(rep.f_eval[j], rep.g_eval[j]);
        sy = f.add(sy, f.mul(y1[j], fg));
        sc = f.add(sc, f.mul((*c0_)[j], fg));
    }
    if (sc.is_zero()) {
        rep.abstained = true;
        rep.reason = "S_c0(fg) = 0";
        return rep;
    }
    rep.lambda = f.div(sy, sc);
    return rep;
}

VoteResult vote(std::span<const CosetStepReport> reports)
{
    VoteResult v;
    for (const auto& r : reports)
        if (!r.abstained && r.lambda)
            ++v.tally[*r.lambda];
    if (v.tally.empty())
        throw EmptyVote("every candidate abstained");
    int best = -1, second = -1;
    for (const auto& [lam, count] : v.tally) {
        if (count > best) {
            second = best;
            best = count;
            v.lambda = lam;
        } else if (count > second) {
            second = count;
        }
    }
    v.tie = best == second;
    return v;
}

} // namespace agkey::mcd
