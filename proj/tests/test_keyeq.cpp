// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "agkey/errors.hpp"
#include "agkey/keyeq.hpp"
#include "support.hpp"

#include <random>

using namespace agkey;
using agkey::curve::Divisor;
using agkey::funcspace::DifferentialContext;
using agkey::funcspace::RationalFunction;
using agkey::gf::Element;
using agkey::gf::Field;
using agkey::keyeq::KeyEquation;
using agkey::keyeq::KeyStatus;

namespace {

agcode::CodePtr code_of(const DifferentialContext& ctx)
{
    return agcode::AGCode::build(ctx.curve(), ctx.D(), ctx.G(), agcode::Bounds::Strong, &ctx.spaces());
}

// nu = floor((d* - g - 1) / 2), F = (nu + g) P_inf.
int nu_of(const agcode::AGCode& C)
{
    return (C.dstar() - C.genus() - 1) / 2;
}

Divisor key_divisor(const DifferentialContext& ctx, const agcode::AGCode& C)
{
    return Divisor::point(ctx.P_inf(), nu_of(C) + C.genus());
}

// res_p(num eta / den), expanded straight from the forms.
Element residue_of_ratio(const DifferentialContext& ctx, const RationalFunction& num, const RationalFunction& den,
                         std::size_t p)
{
    const auto& c = ctx.plane();
    const auto vd = funcspace::function_valuation(c, den.num, den.den, p);
    REQUIRE(vd.has_value());
    const int E = 2 * *vd + 2 * std::abs(ctx.K()[p]) + 6;
    const auto a = funcspace::function_series(c, num, p, E);
    const auto b = funcspace::function_series(c, den, p, E).normalized();
    return ctx.residue(series::divide(ctx.field(), a, b), p);
}

linalg::Vector residues_of_ratio(const DifferentialContext& ctx, const RationalFunction& num,
                                 const RationalFunction& den)
{
    linalg::Vector r(ctx.n());
    for (std::size_t j = 0; j < ctx.n(); ++j)
        r[j] = residue_of_ratio(ctx, num, den, ctx.D()[j]);
    return r;
}

// Coordinates in L(F) of a function given by its values on D.
linalg::Vector coordinates_from_values(const KeyEquation& ke, std::span<const Element> values)
{
    const auto E = ke.LF()->evaluation_matrix(ke.context().D());
    const auto x = linalg::solve_particular(E.transpose(), values);
    REQUIRE(x.has_value());
    return *x;
}

// Some h in L(K + D - G) with res_D(h eta) = c.
RationalFunction code_preimage(const DifferentialContext& ctx, std::span<const Element> c)
{
    const auto L = funcspace::rr_space(ctx.curve(), ctx.K() + ctx.D_divisor() - ctx.G());
    linalg::Matrix M(ctx.field(), 0, ctx.n());
    for (std::size_t i = 0; i < L->dim(); ++i)
        M.append_row(ctx.residues_on_D(L->basis_function(i)));
    const auto x = linalg::solve_particular(M.transpose(), c);
    REQUIRE(x.has_value());
    return L->function(*x);
}

} // namespace

TEST_CASE("codewords are accepted with e = 0")
{
    std::mt19937_64 rng(1);
    for (const auto* ctx : {&testing::klein_ctx(), &testing::hermitian_ctx()}) {
        const auto C = code_of(*ctx);
        const KeyEquation ke(C, *ctx, key_divisor(*ctx, *C));
        for (int trial = 0; trial < 5; ++trial) {
            const auto c = C->encode(testing::random_vector(ctx->field(), C->k(), rng));
            const auto res = ke.solve(c);
            REQUIRE(res.status == KeyStatus::Accepted);
            CHECK(agcode::weight(res.solution->e) == 0);
            CHECK(keyeq::verify_solution(ke, *res.solution, c));
        }
    }
}

TEST_CASE("key equation soundness on random instances")
{
    // Injected (c, e) are the oracle: every accepted solution must return
    // them through both residue maps.
    std::mt19937_64 rng(2);
    for (const auto* ctx : {&testing::klein_ctx(), &testing::hermitian_ctx()}) {
        const auto C = code_of(*ctx);
        const Field& f = ctx->field();
        const int nu = nu_of(*C);
        CHECK(nu == (ctx == &testing::klein_ctx() ? 2 : 3));
        const KeyEquation ke(C, *ctx, key_divisor(*ctx, *C));
        const auto& dec = ke.decomposition();
        int accepted = 0;
        const int trials = 1000;
        for (int trial = 0; trial < trials; ++trial) {
            const auto c = C->encode(testing::random_vector(f, C->k(), rng));
            const auto e = testing::random_error(f, C->n(), static_cast<int>(rng() % (nu + 1)), rng);
            const auto y = testing::add(f, c, e);
            const auto res = ke.solve(y);
            REQUIRE(res.status == KeyStatus::Accepted);
            ++accepted;
            const auto& sol = *res.solution;
            CHECK(sol.e == e);
            CHECK(sol.codeword == c);
            if (trial % 10 != 0)
                continue;
            CHECK(keyeq::verify_solution(ke, sol, y));
            const auto fn = ke.LF()->function(sol.f);
            CHECK(residues_of_ratio(*ctx, dec.Q().space()->function(sol.q), fn) == c);
            CHECK(residues_of_ratio(*ctx, dec.R().space()->function(sol.r), fn) == e);
        }
        CHECK(accepted == trials);
    }
}

TEST_CASE("recovered error does not depend on the kernel vector")
{
    std::mt19937_64 rng(3);
    for (const auto* ctx : {&testing::klein_ctx(), &testing::hermitian_ctx()}) {
        const auto C = code_of(*ctx);
        const Field& f = ctx->field();
        const KeyEquation ke(C, *ctx, key_divisor(*ctx, *C));
        const auto& dec = ke.decomposition();
        int multi = 0;
        for (int trial = 0; trial < 20; ++trial) {
            const auto e = testing::random_error(f, C->n(), 1, rng);
            const auto E = ke.epsilon(e);
            const auto ker = linalg::left_kernel(E.block(0, dec.dim_Q() + dec.dim_R(), E.rows(), dec.dim_W()));
            REQUIRE(ker.dim() >= 1);
            if (ker.dim() > 1)
                ++multi;
            for (std::size_t v = 0; v < ker.dim(); ++v) {
                const auto fv = ker.vector(v);
                const auto row = E.apply_left(fv);
                const linalg::Vector r(row.begin() + static_cast<std::ptrdiff_t>(dec.dim_Q()),
                                       row.begin() + static_cast<std::ptrdiff_t>(dec.dim_Q() + dec.dim_R()));
                CHECK(ke.error_from(fv, r) == e);
            }
        }
        CHECK(multi > 0);
    }
}

TEST_CASE("existence: f in L(F - D_e) solves the key equation")
{
    std::mt19937_64 rng(4);
    for (const auto* ctx : {&testing::klein_ctx(), &testing::hermitian_ctx()}) {
        const auto C = code_of(*ctx);
        const Field& f = ctx->field();
        const KeyEquation ke(C, *ctx, key_divisor(*ctx, *C));
        const auto& dec = ke.decomposition();
        for (int trial = 0; trial < 10; ++trial) {
            const auto c = C->encode(testing::random_vector(f, C->k(), rng));
            const auto e = testing::random_error(f, C->n(), nu_of(*C), rng);
            const auto y = testing::add(f, c, e);
            Divisor De;
            for (std::size_t j = 0; j < e.size(); ++j)
                if (!e[j].is_zero())
                    De.add(ctx->D()[j], 1);
            const auto Lsub = funcspace::rr_space(ctx->curve(), ke.F() - De);
            REQUIRE(Lsub->dim() >= 1);
            const auto fn = Lsub->basis_function(0);
            const auto fc = coordinates_from_values(ke, Lsub->evaluation_matrix(ctx->D()).row(0));

            // The W part of f h_y vanishes.
            const auto split = ke.epsilon(y).apply_left(fc);
            for (std::size_t i = dec.dim_Q() + dec.dim_R(); i < split.size(); ++i)
                CHECK(split[i].is_zero());

            // (f, f h_c, f h_e) is a solution, with h_c taken in L(K+D-G).
            const auto split_y = dec.split(funcspace::multiply_into(*ctx, fn, ctx->h_from_word(y), dec.big()));
            keyeq::KeyEquationSolution sol;
            sol.f = fc;
            sol.q = funcspace::multiply_into(*ctx, fn, code_preimage(*ctx, c), dec.Q());
            sol.r.assign(split_y.begin() + static_cast<std::ptrdiff_t>(dec.dim_Q()),
                         split_y.begin() + static_cast<std::ptrdiff_t>(dec.dim_Q() + dec.dim_R()));
            CHECK(linalg::Vector(split_y.begin(), split_y.begin() + static_cast<std::ptrdiff_t>(dec.dim_Q())) ==
                  sol.q);
            CHECK(keyeq::verify_solution(ke, sol, y));
            CHECK(ke.error_from(sol.f, sol.r) == e);
        }
    }
}

TEST_CASE("verify_solution rejects perturbed triples")
{
    std::mt19937_64 rng(5);
    const auto& ctx = testing::klein_ctx();
    const auto C = code_of(ctx);
    const Field& f = ctx.field();
    const KeyEquation ke(C, ctx, key_divisor(ctx, *C));
    const auto y = testing::add(f, C->encode(testing::random_vector(f, C->k(), rng)),
                                testing::random_error(f, C->n(), 2, rng));
    const auto res = ke.solve(y);
    REQUIRE(res.status == KeyStatus::Accepted);
    auto sol = *res.solution;
    CHECK(keyeq::verify_solution(ke, sol, y));

    auto bad = sol;
    const auto delta = testing::random_nonzero(f, rng);
    bad.r[0] = f.add(bad.r[0], delta);
    CHECK_FALSE(keyeq::verify_solution(ke, bad, y));

    bad = sol;
    bad.f.assign(sol.f.size(), Element{});
    CHECK_FALSE(keyeq::verify_solution(ke, bad, y));

    bad = sol;
    bad.q.pop_back();
    CHECK_FALSE(keyeq::verify_solution(ke, bad, y));
}

TEST_CASE("key equation alone stops at nu errors on the Klein code")
{
    const auto& ctx = testing::klein_ctx();
    const auto C = code_of(ctx);
    const Field& f = ctx.field();
    const KeyEquation ke(C, ctx, key_divisor(ctx, *C));
    CHECK(ke.F().degree() == 5);
    const auto y = testing::word(f, {"1", "0", "1", "a^1"}, 21);
    const auto res = ke.solve(y);
    CHECK(res.status != KeyStatus::Accepted);

    std::mt19937_64 rng(6);
    int failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto e = testing::random_error(f, C->n(), 3, rng);
        const auto r = ke.solve(e);
        if (r.status != KeyStatus::Accepted)
            ++failures;
        else
            CHECK(r.solution->e == e);
    }
    CHECK(failures > 0);
}

TEST_CASE("preconditions")
{
    const auto& ctx = testing::klein_ctx();
    const auto C = code_of(ctx);
    // deg(G - F) must exceed 2g - 2.
    CHECK_THROWS_AS(KeyEquation(C, ctx, Divisor::point(ctx.P_inf(), 8)), BadDivisorRange);
    const KeyEquation ke(C, ctx, Divisor::point(ctx.P_inf(), -1));
    CHECK(ke.LF()->dim() == 0);
    CHECK(ke.solve(linalg::Vector(21)).status == KeyStatus::NoKernel);
    CHECK_THROWS_AS(ke.solve(linalg::Vector(5)), LengthMismatch);
}
