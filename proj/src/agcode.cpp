// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#include "agkey/agcode.hpp"

#include "agkey/errors.hpp"

#include <algorithm>
#include <string>

namespace agkey::agcode {

std::shared_ptr<const AGCode> AGCode::build(CurvePtr c, std::vector<std::size_t> D, Divisor G, Bounds bounds,
                                            funcspace::SpaceCache* cache)
{
    const int g = c->genus();
    const int n = static_cast<int>(D.size());
    for (const std::size_t p : D) {
        if (p >= c->points().size())
            throw UnsupportedDivisor("D refers to a point not on the curve");
        if (G[p] != 0)
            throw SupportOverlap(c->point_string(p) + " is in both D and supp G");
    }
    auto sorted = D;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw UnsupportedDivisor("D repeats a point");
    const int upper = bounds == Bounds::Strong ? n : n + g;
    if (!(2 * g - 2 < G.degree() && G.degree() < upper))
        throw DegreeOutOfRange("deg G = " + std::to_string(G.degree()) + " outside (" + std::to_string(2 * g - 2) +
                               ", " + std::to_string(upper) + ")");

    std::shared_ptr<AGCode> code(new AGCode());
    code->LG_ = cache ? cache->get(G) : funcspace::rr_space(c, G);
    code->H_ = code->LG_->evaluation_matrix(D);
    const auto ker = linalg::kernel(code->H_);
    code->gen_ = ker.basis();
    code->space_ = ker;
    code->curve_ = std::move(c);
    code->D_ = std::move(D);
    code->G_ = std::move(G);
    return code;
}

Vector AGCode::syndromes(std::span<const Element> y) const
{
    if (y.size() != n())
        throw LengthMismatch("word length " + std::to_string(y.size()) + " != n = " + std::to_string(n()));
    return H_.apply(y);
}

bool AGCode::in_code(std::span<const Element> y) const
{
    const auto s = syndromes(y);
    return std::all_of(s.begin(), s.end(), [](Element e) { return e.is_zero(); });
}

Vector AGCode::encode(std::span<const Element> message) const
{
    if (message.size() != k())
        throw LengthMismatch("message length " + std::to_string(message.size()) + " != k = " + std::to_string(k()));
    return gen_.apply_left(message);
}

Element syndrome(const curve::PlaneCurve& c, std::span<const std::size_t> D, std::span<const Element> y,
                 const RationalFunction& h)
{
    if (y.size() != D.size())
        throw LengthMismatch("word length does not match D");
    const auto& f = c.field();
    Element s{};
    for (std::size_t j = 0; j < D.size(); ++j) {
        const auto v = funcspace::function_series(c, h, D[j], 1);
        for (int k = v.start(); k < 0; ++k)
            if (!v.coeff(k).is_zero())
                throw PoleOnD("function has a pole at " + c.point_string(D[j]));
        s = f.add(s, f.mul(y[j], v.coeff(0)));
    }
    return s;
}

Vector coset_id(const AGCode& big, const AGCode& small, std::span<const Element> y)
{
    if (big.n() != small.n())
        throw DimensionMismatch("codes of different length");
    const auto rows_big = Subspace::span(big.parity());
    const auto rows_small = Subspace::span(small.parity());
    const auto extra = linalg::complement_in(rows_big, rows_small);
    if (y.size() != big.n())
        throw LengthMismatch("word length does not match the codes");
    return extra.dim() == 0 ? Vector{} : extra.basis().apply(y);
}

int weight(std::span<const Element> v)
{
    return static_cast<int>(std::count_if(v.begin(), v.end(), [](Element e) { return !e.is_zero(); }));
}

} // namespace agkey::agcode
