// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "agkey/errors.hpp"
#include "agkey/gf.hpp"
#include "support.hpp"

#include <set>

using namespace agkey;
using agkey::gf::Element;
using agkey::gf::Field;

TEST_CASE("bundled moduli give the expected relations")
{
    const auto& F8 = *testing::f8();
    const Element a = F8.generator();
    CHECK(F8.size() == 8);
    CHECK(F8.pow(a, 3) == F8.add(a, Field::one()));
    // x^4 = x*x^3 = x^2 + x
    CHECK(F8.pow(a, 4) == F8.add(F8.mul(a, a), a));
    CHECK(F8.add(Field::one(), F8.mul(F8.pow(a, 3), a)) == F8.pow(a, 5));
    CHECK(F8.pow(a, 5) == F8.add(F8.add(F8.mul(a, a), a), Field::one()));

    const auto& F16 = *testing::f16();
    const Element b = F16.generator();
    CHECK(F16.pow(b, 4) == F16.add(b, Field::one()));
}

TEST_CASE("reducible moduli are rejected")
{
    CHECK_THROWS_AS(Field::make({2, 2, {1, 0, 1}}), ReducibleModulus);
    CHECK_THROWS_AS(Field::make({2, 4, {1, 0, 0, 0, 1}}), ReducibleModulus);
    CHECK_THROWS_AS(Field::make({4, 1, {0, 1}}), UnsupportedField);
    CHECK_NOTHROW(Field::make({3, 2, {1, 0, 1}}));
}

TEST_CASE("generator order")
{
    for (const auto& fp : {testing::f8(), testing::f16()}) {
        const Field& F = *fp;
        CHECK(F.generator_is_primitive());
        const Element a = F.generator();
        for (std::uint32_t k = 1; k + 1 < F.size(); ++k)
            CHECK(F.pow(a, k) != Field::one());
        CHECK(F.pow(a, F.size() - 1) == Field::one());
    }
}

TEST_CASE("enumerate")
{
    const auto F2 = Field::make({2, 1, {0, 1}});
    const auto e2 = F2->enumerate();
    REQUIRE(e2.size() == 2);
    CHECK(e2[0] == Field::zero());
    CHECK(e2[1] == Field::one());

    for (const auto& fp : {testing::f8(), testing::f16()}) {
        const auto all = fp->enumerate();
        CHECK(all.size() == fp->size());
        CHECK(std::set<Element>(all.begin(), all.end()).size() == fp->size());
        CHECK(all[0] == Field::zero());
        for (std::size_t k = 1; k < all.size(); ++k)
            CHECK(all[k] == fp->pow(fp->generator(), static_cast<long long>(k - 1)));
    }
}

TEST_CASE("field axioms on random triples")
{
    std::mt19937_64 rng(7);
    const auto F3 = Field::make({3, 2, {2, 2, 1}});
    for (const auto& fp : {testing::f8(), testing::f16(), F3}) {
        const Field& F = *fp;
        for (int it = 0; it < 500; ++it) {
            const Element a = testing::random_element(F, rng);
            const Element b = testing::random_element(F, rng);
            const Element c = testing::random_element(F, rng);
            CHECK(F.add(a, b) == F.add(b, a));
            CHECK(F.mul(a, b) == F.mul(b, a));
            CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
            CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            CHECK(F.add(a, F.neg(a)) == Field::zero());
            CHECK(F.sub(F.add(a, b), b) == a);
            CHECK(F.mul(a, b) == F.mul_canonical(a, b));
            const unsigned p = F.characteristic();
            CHECK(F.pow(F.add(a, b), p) == F.add(F.pow(a, p), F.pow(b, p)));
            if (!a.is_zero()) {
                CHECK(F.mul(a, F.inv(a)) == Field::one());
                CHECK(F.pow(a, -3) == F.inv(F.pow(a, 3)));
            }
        }
    }
}

TEST_CASE("inverse of zero and mixed fields")
{
    const auto& F8 = *testing::f8();
    CHECK_THROWS_AS(F8.inv(Field::zero()), DivisionByZero);
    const gf::FieldElement x(F8, F8.generator());
    const gf::FieldElement y(*testing::f16(), testing::f16()->generator());
    CHECK_THROWS_AS(x + y, MixedFields);
    CHECK((x * x.inv()).value() == Field::one());
}

TEST_CASE("printing and parsing")
{
    const auto& F8 = *testing::f8();
    CHECK(F8.to_string(Field::zero()) == "0");
    CHECK(F8.to_string(Field::one()) == "a^0");
    CHECK(F8.to_string(F8.pow(F8.generator(), 5)) == "a^5");
    for (const Element e : F8.enumerate())
        CHECK(F8.parse(F8.to_string(e)) == e);
    CHECK(F8.parse("1") == Field::one());
    CHECK(F8.parse("a") == F8.generator());
    CHECK(F8.parse("a^2 + a + 1") == F8.pow(F8.generator(), 5));
    CHECK_THROWS_AS(F8.parse("b"), ParseError);
    CHECK_THROWS_AS(F8.parse(""), ParseError);
}

TEST_CASE("first_irreducible")
{
    CHECK(gf::first_irreducible(2, 3) == std::vector<unsigned>{1, 1, 0, 1});
    CHECK(gf::first_irreducible(2, 4) == std::vector<unsigned>{1, 1, 0, 0, 1});
    const auto m = gf::first_irreducible(2, 12);
    CHECK(gf::is_irreducible(2, m));
}
