// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "agkey/errors.hpp"
#include "agkey/mcd.hpp"
#include "support.hpp"

#include <random>
#include <set>

using namespace agkey;
using agkey::curve::Divisor;
using agkey::gf::Element;
using agkey::gf::Field;
using agkey::linalg::Subspace;
using agkey::mcd::CosetContext;
using agkey::mcd::CosetStepReport;

namespace {

// K at an arbitrary level H, built from the true error. Only tests may do
// this: it needs syndromes of e beyond L(H1).
Subspace kernel_true(const CosetContext& rc, std::span<const Element> e, const Divisor& Fp, const Divisor& H)
{
    const Field& f = rc.C1().curve()->field();
    const std::size_t n = e.size();
    const auto& Ef = rc.evaluations(Fp);
    const auto& Eg = rc.evaluations(H - Fp);
    if (Ef.rows() == 0)
        return Subspace(f, n);
    if (Eg.rows() == 0)
        return Subspace::span(Ef);
    linalg::Matrix B(f, Eg.rows(), Ef.rows());
    for (std::size_t b = 0; b < Eg.rows(); ++b)
        for (std::size_t a = 0; a < Ef.rows(); ++a) {
            Element s{};
            for (std::size_t j = 0; j < n; ++j)
                s = f.add(s, f.mul(e[j], f.mul(Ef(a, j), Eg(b, j))));
            B(b, a) = s;
        }
    const auto ker = linalg::kernel(B);
    if (ker.dim() == 0)
        return Subspace(f, n);
    return Subspace::span(linalg::matmul_reference(ker.basis(), Ef));
}

std::vector<Divisor> ladder(const Divisor& F0, std::size_t P, int count)
{
    std::vector<Divisor> F;
    for (int i = 0; i < count; ++i)
        F.push_back(F0 + Divisor::point(P, i));
    return F;
}

CosetStepReport report(int i, const char* lambda, const Field& f)
{
    CosetStepReport r;
    r.index = i;
    r.lambda = f.parse(lambda);
    return r;
}

} // namespace

TEST_CASE("kernels of the zero word are the whole spaces")
{
    const auto& ctx = testing::klein_ctx();
    const CosetContext rc(ctx, ctx.G());
    const linalg::Vector zero(ctx.n());
    const auto P = Divisor::point(ctx.P_inf());
    for (const auto& F : ladder(Divisor::point(ctx.P_inf(), 3), ctx.P_inf(), 5)) {
        CHECK(rc.kernel_K(zero, F, 0, false) == Subspace::span(rc.evaluations(F)));
        CHECK(rc.kernel_K(zero, F, 1, false) == Subspace::span(rc.evaluations(F)));
        CHECK(rc.kernel_K(zero, F, 1, true) == Subspace::span(rc.evaluations(F + P)));
    }
}

TEST_CASE("zero-word candidate set on the Hermitian code")
{
    // With every kernel full, (A) reduces to 7 + i and 17 - i both being
    // pole orders at P_inf, i.e. elements of the semigroup <4, 5>.
    std::set<int> semigroup;
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 6; ++b)
            semigroup.insert(4 * a + 5 * b);
    std::vector<int> want;
    for (int i = 0; i <= 10; ++i)
        if (semigroup.count(7 + i) && semigroup.count(17 - i))
            want.push_back(i);
    CHECK(want == std::vector<int>{1, 2, 3, 5, 7, 8, 9});

    const auto& ctx = testing::hermitian_ctx();
    const CosetContext rc(ctx, ctx.G());
    const linalg::Vector zero(ctx.n());
    std::vector<int> got;
    const auto F = ladder(Divisor::point(ctx.P_inf(), 6), ctx.P_inf(), 11);
    for (int i = 0; i <= 10; ++i)
        if (rc.condition_A(zero, F[static_cast<std::size_t>(i)]).holds())
            got.push_back(i);
    CHECK(got == want);
}

TEST_CASE("kernel chain and quotient dimensions")
{
    std::mt19937_64 rng(1);
    for (const auto* ctx : {&testing::klein_ctx(), &testing::hermitian_ctx()}) {
        const CosetContext rc(*ctx, ctx->G());
        const int g = ctx->plane().genus();
        const auto F = ladder(Divisor::point(ctx->P_inf(), rc.C1().t()), ctx->P_inf(), 2 * g - 1);
        const int trials = ctx == &testing::klein_ctx() ? 100 : 20;
        for (int trial = 0; trial < trials; ++trial) {
            const auto y = testing::random_error(ctx->field(), ctx->n(), 1 + trial % rc.C1().t(), rng);
            for (const auto& Fi : F) {
                const auto K1b = rc.kernel_K(y, Fi, 1, true);
                const auto K0 = rc.kernel_K(y, Fi, 0, false);
                const auto K1 = rc.kernel_K(y, Fi, 1, false);
                CHECK(K0.contains(K1));
                CHECK(K1b.contains(K0));
                CHECK(K1b.dim() <= K0.dim() + 1);
                CHECK(K0.dim() <= K1.dim() + 1);
                CHECK_NOTHROW(rc.condition_A(y, Fi));
            }
        }
    }
}

TEST_CASE("candidates agree with the true conditions")
{
    // (B) needs K2, computed here from the injected error.
    std::mt19937_64 rng(2);
    for (const auto* ctx : {&testing::klein_ctx(), &testing::hermitian_ctx()}) {
        const CosetContext rc(*ctx, ctx->G());
        const Field& f = ctx->field();
        const int g = ctx->plane().genus();
        const int t = rc.C1().t();
        const auto P = Divisor::point(ctx->P_inf());
        const auto H0 = ctx->G() - P, H1 = ctx->G(), H2 = ctx->G() + P;
        const auto F = ladder(Divisor::point(ctx->P_inf(), t), ctx->P_inf(), 2 * g - 1);
        const int trials = ctx == &testing::klein_ctx() ? 300 : 40;
        for (int trial = 0; trial < trials; ++trial) {
            const auto e = testing::random_error(f, ctx->n(), t, rng);
            int T = 0, Fc = 0;
            for (std::size_t i = 0; i < F.size(); ++i) {
                const auto& Fi = F[i];
                const auto K1b = kernel_true(rc, e, Fi + P, H1);
                const auto K2b = kernel_true(rc, e, Fi + P, H2);
                const auto K0 = kernel_true(rc, e, Fi, H0);
                const auto K1 = kernel_true(rc, e, Fi, H1);
                CHECK(rc.kernel_K(e, Fi, 0, false) == K0);
                CHECK(rc.kernel_K(e, Fi, 1, true) == K1b);
                const bool a1 = K1b.dim() != K0.dim(), a2 = K0.dim() == K1.dim();
                const bool b1 = K1b.dim() == K2b.dim(), b2 = K2b.dim() != K1.dim();
                CHECK((a1 && b1) == (a2 && b2));
                const auto A = rc.condition_A(e, Fi);
                if (!A.holds())
                    continue;
                const bool B = b1 && b2;
                B ? ++T : ++Fc;
                const auto rep = rc.coset_step(e, Fi, static_cast<int>(i));
                if (B && !rep.abstained) {
                    // The true step lands in e + C2.
                    auto y2 = e;
                    f.axpy(y2, f.neg(*rep.lambda), *rc.c0());
                    CHECK(rc.C2().in_code(testing::add(f, y2, e)));
                }
            }
            if (T + Fc > 0)
                CHECK(T > Fc);
        }
    }
}

TEST_CASE("lambda depends only on the coset modulo C2")
{
    std::mt19937_64 rng(3);
    const auto& ctx = testing::klein_ctx();
    const CosetContext rc(ctx, ctx.G());
    const Field& f = ctx.field();
    const auto F = ladder(Divisor::point(ctx.P_inf(), 3), ctx.P_inf(), 5);
    int steps = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto e = testing::random_error(f, ctx.n(), 3, rng);
        const auto c = rc.C2().encode(testing::random_vector(f, rc.C2().k(), rng));
        const auto y = testing::add(f, e, c);
        for (std::size_t i = 0; i < F.size(); ++i) {
            const auto A = rc.condition_A(e, F[i]);
            CHECK(A.holds() == rc.condition_A(y, F[i]).holds());
            if (!A.holds())
                continue;
            const auto r1 = rc.coset_step(e, F[i], static_cast<int>(i));
            const auto r2 = rc.coset_step(y, F[i], static_cast<int>(i));
            CHECK(r1.lambda == r2.lambda);
            ++steps;
        }
    }
    CHECK(steps > 0);
}

TEST_CASE("scaling c0 scales lambda inversely")
{
    std::mt19937_64 rng(4);
    const auto& ctx = testing::klein_ctx();
    CosetContext rc(ctx, ctx.G());
    const Field& f = ctx.field();
    const auto F = ladder(Divisor::point(ctx.P_inf(), 3), ctx.P_inf(), 5);
    const auto c0 = *rc.c0();
    CHECK(rc.C1().in_code(c0));
    CHECK_FALSE(rc.C2().in_code(c0));
    for (int trial = 0; trial < 30; ++trial) {
        // A random word, so that lambda is usually nonzero.
        const auto y = rc.C1().encode(testing::random_vector(f, rc.C1().k(), rng));
        const auto yv = testing::add(f, y, testing::random_error(f, ctx.n(), 2, rng));
        for (std::size_t i = 0; i < F.size(); ++i) {
            if (!rc.condition_A(yv, F[i]).holds())
                continue;
            rc.set_c0(c0);
            const auto r1 = rc.coset_step(yv, F[i], static_cast<int>(i));
            const Element mu = testing::random_nonzero(f, rng);
            linalg::Vector scaled(c0.size());
            for (std::size_t j = 0; j < c0.size(); ++j)
                scaled[j] = f.mul(mu, c0[j]);
            rc.set_c0(scaled);
            const auto r2 = rc.coset_step(yv, F[i], static_cast<int>(i));
            REQUIRE(r1.lambda.has_value());
            CHECK(*r2.lambda == f.div(*r1.lambda, mu));
        }
    }
    rc.set_c0(c0);
}

TEST_CASE("coset step preconditions")
{
    const auto& ctx = testing::klein_ctx();
    CosetContext rc(ctx, ctx.G());
    const linalg::Vector zero(ctx.n());
    // deg F = 3 with e = 0: K1(F+P) = L(4P) = L(3P) = K0(F), so A1 fails.
    const auto F = Divisor::point(ctx.P_inf(), 3);
    CHECK_FALSE(rc.condition_A(zero, F).a1);
    CHECK_THROWS_AS(rc.coset_step(zero, F, 0), ConditionAViolated);
    CHECK_THROWS_AS(rc.set_c0(zero), NotSubspace);
    CHECK_THROWS_AS(rc.set_c0(rc.C2().generator().row_vector(0)), NotSubspace);
    CHECK_THROWS_AS(rc.kernel_K(zero, F, 2, false), InvariantViolation);
}

TEST_CASE("plurality vote")
{
    const Field& f = *testing::f8();
    std::vector<CosetStepReport> reps;
    for (int i = 0; i < 4; ++i)
        reps.push_back(report(i, "a^3", f));
    for (int i = 4; i < 7; ++i)
        reps.push_back(report(i, "0", f));
    auto v = mcd::vote(reps);
    CHECK_FALSE(v.tie);
    CHECK(v.lambda == f.parse("a^3"));
    CHECK(v.tally.at(f.parse("a^3")) == 4);
    CHECK(v.tally.at(f.parse("0")) == 3);

    const std::vector<CosetStepReport> tie{report(0, "a^1", f), report(1, "a^2", f), report(2, "a^1", f),
                                           report(3, "a^2", f)};
    CHECK(mcd::vote(tie).tie);

    std::vector<CosetStepReport> single{report(3, "a^3", f)};
    v = mcd::vote(single);
    CHECK_FALSE(v.tie);
    CHECK(v.lambda == f.parse("a^3"));

    // Abstentions are left out of the count.
    single.push_back(report(4, "a^5", f));
    single.back().abstained = true;
    CHECK(mcd::vote(single).tally.size() == 1);
    single.front().abstained = true;
    CHECK_THROWS_AS(mcd::vote(single), EmptyVote);
}
