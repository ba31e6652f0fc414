// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

// Truncated Laurent series in one local parameter t.
//
// A series stores coefficients for orders start .. start+size-1 and is known
// up to O(t^(start+size)); precision() is that absolute bound. Coefficients
// below start are zero. start is only a lower bound for the valuation.

#pragma once

#include "agkey/gf.hpp"

#include <optional>
#include <vector>

namespace agkey::series {

using gf::Element;
using gf::Field;

class Laurent {
public:
    Laurent() = default;
    Laurent(int start, std::vector<Element> coeffs) : start_(start), c_(std::move(coeffs)) {}

    static Laurent zero(int start, int precision);
    static Laurent constant(Element c, int precision);

    int start() const noexcept { return start_; }
    int precision() const noexcept { return start_ + static_cast<int>(c_.size()); }
    std::size_t size() const noexcept { return c_.size(); }
    const std::vector<Element>& coeffs() const noexcept { return c_; }
    std::vector<Element>& coeffs() noexcept { return c_; }

    // Coefficient of t^order; throws PrecisionExhausted at or beyond
    // precision().
    Element coeff(int order) const;
    // First nonzero order among the known coefficients.
    std::optional<int> valuation() const;

    // Drops everything at or beyond `precision`.
    Laurent truncated(int precision) const;
    // Same series with start lowered to `start` (zero padding).
    Laurent with_start(int start) const;
    // Leading zero coefficients dropped, so start() is the valuation when
    // any coefficient is known to be nonzero.
    Laurent normalized() const;

private:
    int start_ = 0;
    std::vector<Element> c_;
};

Laurent add(const Field& f, const Laurent& a, const Laurent& b);
Laurent sub(const Field& f, const Laurent& a, const Laurent& b);
Laurent scale(const Field& f, const Laurent& a, Element c);
// Product known to order start_a + start_b + min(size_a, size_b).
Laurent mul(const Field& f, const Laurent& a, const Laurent& b);
// Reciprocal of a series with a nonzero coefficient among the known ones;
// throws PrecisionExhausted when every known coefficient vanishes.
Laurent inverse(const Field& f, const Laurent& a);
Laurent divide(const Field& f, const Laurent& a, const Laurent& b);
Laurent derivative(const Field& f, const Laurent& a);

} // namespace agkey::series
