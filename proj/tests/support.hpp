// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "agkey/gf.hpp"
#include "agkey/linalg.hpp"

#include <algorithm>
#include <initializer_list>
#include <random>
#include <span>

namespace agkey::testing {

inline gf::FieldPtr f8()
{
    static const gf::FieldPtr f = gf::Field::make({2, 3, {1, 1, 0, 1}});
    return f;
}

inline gf::FieldPtr f16()
{
    static const gf::FieldPtr f = gf::Field::make({2, 4, {1, 1, 0, 0, 1}});
    return f;
}

inline gf::Element random_element(const gf::Field& f, std::mt19937_64& rng)
{
    return gf::Element{static_cast<std::uint32_t>(rng() % f.size())};
}

inline gf::Element random_nonzero(const gf::Field& f, std::mt19937_64& rng)
{
    return gf::Element{static_cast<std::uint32_t>(1 + rng() % (f.size() - 1))};
}

inline linalg::Matrix random_matrix(const gf::Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng)
{
    linalg::Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = random_element(f, rng);
    return m;
}

inline linalg::Vector random_vector(const gf::Field& f, std::size_t n, std::mt19937_64& rng)
{
    linalg::Vector v(n);
    for (auto& e : v)
        e = random_element(f, rng);
    return v;
}

} // namespace agkey::testing

#include "agkey/curve.hpp"
#include "agkey/poly.hpp"

namespace agkey::testing {

inline curve::CurvePtr klein()
{
    static const curve::CurvePtr c =
        curve::PlaneCurve::make(f8(), poly::parse_form(*f8(), "X^3*Y + Y^3*Z + Z^3*X"));
    return c;
}

inline curve::CurvePtr hermitian()
{
    static const curve::CurvePtr c =
        curve::PlaneCurve::make(f16(), poly::parse_form(*f16(), "Y^4*Z + Y*Z^4 + X^5"));
    return c;
}

} // namespace agkey::testing

#include "agkey/funcspace.hpp"

namespace agkey::testing {

inline std::size_t pt(const curve::PlaneCurve& c, const char* s)
{
    return c.index_checked(c.parse_point(s));
}

// D = the 21 points with xyz != 0, G = 4(Q0 + Q1 + Q2), P_inf = Q2.
struct KleinSetup {
    curve::CurvePtr c = klein();
    std::size_t q0 = pt(*c, "(1:0:0)");
    std::size_t q1 = pt(*c, "(0:1:0)");
    std::size_t q2 = pt(*c, "(0:0:1)");
    std::vector<std::size_t> D;
    curve::Divisor G;

    KleinSetup()
    {
        for (std::size_t i = 0; i < c->points().size(); ++i)
            if (i != q0 && i != q1 && i != q2)
                D.push_back(i);
        G = 4 * (curve::Divisor::point(q0) + curve::Divisor::point(q1) + curve::Divisor::point(q2));
    }
};

// D = the 64 affine points, G = 23 P_inf.
struct HermitianSetup {
    curve::CurvePtr c = hermitian();
    std::size_t pinf = pt(*c, "(0:1:0)");
    std::vector<std::size_t> D;
    curve::Divisor G = curve::Divisor::point(pinf, 23);

    HermitianSetup()
    {
        for (std::size_t i = 0; i < c->num_affine(); ++i)
            D.push_back(i);
    }
};

inline const funcspace::DifferentialContext& klein_ctx()
{
    static const KleinSetup s;
    static const funcspace::DifferentialContext ctx(s.c, s.D, s.G, s.q2);
    return ctx;
}

inline const funcspace::DifferentialContext& hermitian_ctx()
{
    static const HermitianSetup s;
    static const funcspace::DifferentialContext ctx(s.c, s.D, s.G, s.pinf);
    return ctx;
}

} // namespace agkey::testing

namespace agkey::testing {

// Random vector of weight exactly w.
inline linalg::Vector random_error(const gf::Field& f, std::size_t n, int w, std::mt19937_64& rng)
{
    linalg::Vector e(n);
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i)
        pos[i] = i;
    std::shuffle(pos.begin(), pos.end(), rng);
    for (int k = 0; k < w; ++k)
        e[pos[static_cast<std::size_t>(k)]] = random_nonzero(f, rng);
    return e;
}

inline linalg::Vector add(const gf::Field& f, std::span<const gf::Element> a, std::span<const gf::Element> b)
{
    linalg::Vector out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = f.add(a[j], b[j]);
    return out;
}

// Words written as "0" / "a^k" strings, padded with zeros to length n.
inline linalg::Vector word(const gf::Field& f, std::initializer_list<const char*> head, std::size_t n)
{
    linalg::Vector v(n);
    std::size_t j = 0;
    for (const char* s : head)
        v[j++] = f.parse(s);
    return v;
}

} // namespace agkey::testing
