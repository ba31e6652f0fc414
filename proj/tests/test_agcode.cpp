// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "agkey/agcode.hpp"
#include "agkey/errors.hpp"
#include "support.hpp"

#include <random>

using namespace agkey;
using agkey::agcode::AGCode;
using agkey::curve::Divisor;
using agkey::gf::Field;

TEST_CASE("Klein code parameters")
{
    const testing::KleinSetup k;
    CHECK(k.c->points().size() == 24);
    CHECK(k.c->genus() == 3);
    const auto C = AGCode::build(k.c, k.D, k.G);
    CHECK(C->n() == 21);
    CHECK(C->k() == 11);
    CHECK(C->dstar() == 8);
    CHECK(C->t() == 3);
    CHECK(C->LG()->dim() == 10);
    CHECK(linalg::rank(C->parity()) == 10);
}

TEST_CASE("Hermitian code parameters")
{
    const testing::HermitianSetup h;
    CHECK(h.c->num_affine() == 64);
    CHECK(h.c->points().size() == 65);
    const auto C = AGCode::build(h.c, h.D, h.G);
    CHECK(C->n() == 64);
    CHECK(C->k() == 46);
    CHECK(C->dstar() == 13);
    CHECK(C->t() == 6);
}

TEST_CASE("residue definition agrees with the dual description")
{
    // C = res_D(h eta) over h in L(K + D - G), computed without the parity
    // matrix.
    for (const auto* ctx : {&testing::klein_ctx(), &testing::hermitian_ctx()}) {
        const auto C = AGCode::build(ctx->curve(), ctx->D(), ctx->G());
        const auto L = funcspace::rr_space(ctx->curve(), ctx->K() + ctx->D_divisor() - ctx->G());
        linalg::Matrix rows(ctx->field(), 0, ctx->n());
        for (std::size_t i = 0; i < L->dim(); ++i)
            rows.append_row(ctx->residues_on_D(L->basis_function(i)));
        CHECK(linalg::Subspace::span(rows) == C->space());
    }
}

TEST_CASE("generator rows satisfy every parity check")
{
    for (const auto* ctx : {&testing::klein_ctx(), &testing::hermitian_ctx()}) {
        const auto C = AGCode::build(ctx->curve(), ctx->D(), ctx->G());
        const auto prod = linalg::matmul_reference(C->parity(), C->generator().transpose());
        CHECK(prod == linalg::Matrix(ctx->field(), prod.rows(), prod.cols()));
        // Syndromes through the rational functions themselves.
        const auto& c = ctx->plane();
        for (std::size_t i = 0; i < C->LG()->dim(); ++i)
            CHECK(agcode::syndrome(c, C->D(), C->generator().row(0), C->LG()->basis_function(i)).is_zero());
    }
}

TEST_CASE("encode and membership")
{
    std::mt19937_64 rng(1);
    const auto& ctx = testing::klein_ctx();
    const Field& f = ctx.field();
    const auto C = AGCode::build(ctx.curve(), ctx.D(), ctx.G());
    for (int trial = 0; trial < 20; ++trial) {
        const auto msg = testing::random_vector(f, C->k(), rng);
        const auto cw = C->encode(msg);
        CHECK(C->in_code(cw));
        CHECK(C->space().coordinates(cw).has_value());
        if (agcode::weight(msg) > 0)
            CHECK(agcode::weight(cw) >= C->dstar());
        const auto e = testing::random_error(f, C->n(), 1 + trial % 3, rng);
        CHECK_FALSE(C->in_code(testing::add(f, cw, e)));
    }
    CHECK_THROWS_AS(C->encode(linalg::Vector(3)), LengthMismatch);
    CHECK_THROWS_AS(C->syndromes(linalg::Vector(3)), LengthMismatch);
}

TEST_CASE("syndromes are coset invariants")
{
    std::mt19937_64 rng(2);
    const auto& ctx = testing::hermitian_ctx();
    const Field& f = ctx.field();
    const auto C = AGCode::build(ctx.curve(), ctx.D(), ctx.G());
    for (int trial = 0; trial < 10; ++trial) {
        const auto y = testing::random_vector(f, C->n(), rng);
        const auto c = C->encode(testing::random_vector(f, C->k(), rng));
        CHECK(C->syndromes(testing::add(f, y, c)) == C->syndromes(y));
    }
}

TEST_CASE("nested codes along the ladder")
{
    std::mt19937_64 rng(3);
    const testing::KleinSetup k;
    const auto P = Divisor::point(k.q2);
    std::vector<agcode::CodePtr> ladder;
    for (int r = 0; r <= 4; ++r)
        ladder.push_back(AGCode::build(k.c, k.D, k.G + r * P, agcode::Bounds::Extended));
    for (std::size_t r = 0; r + 1 < ladder.size(); ++r) {
        CHECK(ladder[r]->space().contains(ladder[r + 1]->space()));
        // Codimension is ell(G_r + P) - ell(G_r), i.e. 1 once deg G_r > 2g - 2.
        CHECK(ladder[r]->k() == ladder[r + 1]->k() + 1);
        CHECK(ladder[r + 1]->dstar() == ladder[r]->dstar() + 1);
    }
    const Field& f = k.c->field();
    const auto& big = *ladder[0];
    const auto& small = *ladder[1];
    const auto y = testing::random_vector(f, big.n(), rng);
    const auto c = small.encode(testing::random_vector(f, small.k(), rng));
    CHECK(agcode::coset_id(big, small, testing::add(f, y, c)) == agcode::coset_id(big, small, y));
    CHECK(agcode::coset_id(big, small, y).size() == 1);
}

TEST_CASE("construction errors")
{
    const testing::KleinSetup k;
    auto D = k.D;
    D.push_back(k.q1);
    CHECK_THROWS_AS(AGCode::build(k.c, D, k.G), SupportOverlap);
    CHECK_THROWS_AS(AGCode::build(k.c, k.D, Divisor::point(k.q2, 4)), DegreeOutOfRange);
    CHECK_THROWS_AS(AGCode::build(k.c, k.D, Divisor::point(k.q2, 21)), DegreeOutOfRange);
    CHECK_NOTHROW(AGCode::build(k.c, k.D, Divisor::point(k.q2, 21), agcode::Bounds::Extended));
    auto dup = k.D;
    dup.push_back(k.D.front());
    CHECK_THROWS_AS(AGCode::build(k.c, dup, k.G), UnsupportedDivisor);
}
