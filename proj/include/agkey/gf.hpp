// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

// Arithmetic in GF(p^m) with an explicit monic irreducible modulus.
//
// Elements are stored in the polynomial basis 1, a, a^2, ..., a^(m-1) where
// a is the residue class of the variable: the value of an Element is
// sum(c_i * p^i) for coefficient digits c_i in [0, p). Multiplication and
// inversion go through log/antilog tables built from the canonical
// polynomial arithmetic, so both paths are bit-identical.

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace agkey::gf {

struct Element {
    std::uint32_t value = 0;

    constexpr bool is_zero() const noexcept { return value == 0; }
    friend constexpr auto operator<=>(Element, Element) = default;
};

struct FieldSpec {
    unsigned p = 2;
    unsigned m = 1;
    // Coefficients low-to-high, length m+1, last entry 1.
    std::vector<unsigned> modulus;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// True when the polynomial (coefficients low-to-high over GF(p)) has no
// factor of degree 1..deg/2. Exhaustive, meant for deg <= 16.
bool is_irreducible(unsigned p, std::span<const unsigned> poly);

// Smallest irreducible monic polynomial of degree m over GF(p) in
// lexicographic order of the coefficient digits.
std::vector<unsigned> first_irreducible(unsigned p, unsigned m);

class Field {
public:
    // Throws ReducibleModulus, UnsupportedField (q > 2^16 or p not prime).
    static std::shared_ptr<const Field> make(FieldSpec spec);

    const FieldSpec& spec() const noexcept { return spec_; }
    unsigned characteristic() const noexcept { return spec_.p; }
    unsigned degree() const noexcept { return spec_.m; }
    std::uint32_t size() const noexcept { return q_; }

    static constexpr Element zero() noexcept { return {0}; }
    static constexpr Element one() noexcept { return {1}; }
    // Residue class a of the variable modulo the modulus (for m == 1, the
    // root of the linear modulus).
    Element generator() const noexcept { return alpha_; }
    // Primitive element driving the log tables; equals generator() when
    // the modulus is primitive.
    Element primitive() const noexcept { return primitive_; }
    bool generator_is_primitive() const noexcept { return alpha_ == primitive_; }

    Element add(Element a, Element b) const noexcept
    {
        if (spec_.p == 2)
            return {a.value ^ b.value};
        return add_generic(a, b);
    }
    Element sub(Element a, Element b) const noexcept
    {
        if (spec_.p == 2)
            return {a.value ^ b.value};
        return add_generic(a, neg(b));
    }
    Element neg(Element a) const noexcept;
    Element mul(Element a, Element b) const noexcept
    {
        if (a.value == 0 || b.value == 0)
            return {0};
        return {exp_[log_[a.value] + log_[b.value]]};
    }
    Element inv(Element a) const;            // DivisionByZero on 0
    Element div(Element a, Element b) const; // DivisionByZero on b == 0
    // Square-and-multiply; negative exponents invert first.
    Element pow(Element a, long long e) const;

    // Polynomial-basis multiplication without tables. Reference path.
    Element mul_canonical(Element a, Element b) const noexcept;

    // Discrete log base primitive(); a must be nonzero.
    std::uint32_t log(Element a) const;
    Element exp(long long k) const noexcept;

    // 0, then primitive()^0 ... primitive()^(q-2).
    std::vector<Element> enumerate() const;

    // Embeds an integer of the prime field (reduced mod p).
    Element from_int(long long v) const noexcept;

    // "0", or "a^k" when the generator is primitive, else the polynomial
    // form "a^2+a+1".
    std::string to_string(Element a) const;
    // Accepts "0", "1", "a", "a^k", integers < p and '+'-separated sums
    // of these. Throws ParseError.
    Element parse(std::string_view text) const;

    // y <- y + c*x elementwise.
    void axpy(std::span<Element> y, Element c, std::span<const Element> x) const noexcept;

private:
    explicit Field(FieldSpec spec);
    Element add_generic(Element a, Element b) const noexcept;

    FieldSpec spec_;
    std::uint32_t q_ = 0;
    Element alpha_{};
    Element primitive_{};
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_; // length 2(q-1)
};

using FieldPtr = std::shared_ptr<const Field>;

// An element bound to its field; arithmetic between elements of different
// fields throws MixedFields.
class FieldElement {
public:
    FieldElement(const Field& field, Element value) : field_(&field), value_(value) {}

    const Field& field() const noexcept { return *field_; }
    Element value() const noexcept { return value_; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    FieldElement operator-() const { return {*field_, field_->neg(value_)}; }
    FieldElement inv() const { return {*field_, field_->inv(value_)}; }
    FieldElement pow(long long e) const { return {*field_, field_->pow(value_, e)}; }

    friend bool operator==(const FieldElement& a, const FieldElement& b);
    std::string to_string() const { return field_->to_string(value_); }

private:
    const Field* field_;
    Element value_;
};

} // namespace agkey::gf
