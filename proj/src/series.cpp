// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#include "agkey/series.hpp"

#include "agkey/errors.hpp"

#include <algorithm>
#include <string>

namespace agkey::series {

Laurent Laurent::zero(int start, int precision)
{
    return Laurent(start, std::vector<Element>(static_cast<std::size_t>(std::max(0, precision - start))));
}

Laurent Laurent::constant(Element c, int precision)
{
    Laurent s = zero(0, precision);
    if (!s.c_.empty())
        s.c_[0] = c;
    return s;
}

Element Laurent::coeff(int order) const
{
    if (order < start_)
        return Element{};
    if (order >= precision())
        throw PrecisionExhausted("coefficient t^" + std::to_string(order) + " requested, series known to t^" +
                                 std::to_string(precision()));
    return c_[static_cast<std::size_t>(order - start_)];
}

std::optional<int> Laurent::valuation() const
{
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero())
            return start_ + static_cast<int>(i);
    return std::nullopt;
}

Laurent Laurent::truncated(int precision) const
{
    if (precision >= this->precision())
        return *this;
    const int keep = std::max(0, precision - start_);
    return Laurent(start_, std::vector<Element>(c_.begin(), c_.begin() + keep));
}

Laurent Laurent::with_start(int start) const
{
    if (start >= start_)
        return *this;
    std::vector<Element> c(static_cast<std::size_t>(start_ - start));
    c.insert(c.end(), c_.begin(), c_.end());
    return Laurent(start, std::move(c));
}

Laurent Laurent::normalized() const
{
    std::size_t k = 0;
    while (k < c_.size() && c_[k].is_zero())
        ++k;
    return Laurent(start_ + static_cast<int>(k), std::vector<Element>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
}

Laurent add(const Field& f, const Laurent& a, const Laurent& b)
{
    const int start = std::min(a.start(), b.start());
    const int prec = std::min(a.precision(), b.precision());
    Laurent r = Laurent::zero(start, prec);
    for (int k = start; k < prec; ++k)
        r.coeffs()[static_cast<std::size_t>(k - start)] = f.add(a.coeff(k), b.coeff(k));
    return r;
}

Laurent sub(const Field& f, const Laurent& a, const Laurent& b)
{
    return add(f, a, scale(f, b, f.neg(Field::one())));
}

Laurent scale(const Field& f, const Laurent& a, Element c)
{
    Laurent r = a;
    for (auto& e : r.coeffs())
        e = f.mul(e, c);
    return r;
}

Laurent mul(const Field& f, const Laurent& a, const Laurent& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    std::vector<Element> c(n);
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();
    for (std::size_t i = 0; i < n; ++i) {
        if (ac[i].is_zero())
            continue;
        f.axpy(std::span<Element>(c.data() + i, n - i), ac[i], std::span<const Element>(bc.data(), n - i));
    }
    return Laurent(a.start() + b.start(), std::move(c));
}

Laurent inverse(const Field& f, const Laurent& a)
{
    const auto v = a.valuation();
    if (!v)
        throw PrecisionExhausted("inverse of a series with no known nonzero coefficient");
    const std::size_t off = static_cast<std::size_t>(*v - a.start());
    const std::size_t n = a.size() - off;
    const auto& ac = a.coeffs();
    std::vector<Element> r(n);
    const Element lead_inv = f.inv(ac[off]);
    r[0] = lead_inv;
    for (std::size_t k = 1; k < n; ++k) {
        Element acc{};
        for (std::size_t j = 1; j <= k; ++j)
            acc = f.add(acc, f.mul(ac[off + j], r[k - j]));
        r[k] = f.neg(f.mul(acc, lead_inv));
    }
    return Laurent(-*v, std::move(r));
}

Laurent divide(const Field& f, const Laurent& a, const Laurent& b)
{
    return mul(f, a, inverse(f, b));
}

Laurent derivative(const Field& f, const Laurent& a)
{
    // d/dt sum c_k t^k = sum k c_k t^(k-1)
    std::vector<Element> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long long k = a.start() + static_cast<long long>(i);
        c[i] = f.mul(f.from_int(k), a.coeffs()[i]);
    }
    return Laurent(a.start() - 1, std::move(c));
}

} // namespace agkey::series
