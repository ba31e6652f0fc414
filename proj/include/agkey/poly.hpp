// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

// Homogeneous forms in X, Y, Z and univariate polynomial helpers.

#pragma once

#include "agkey/gf.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace agkey::poly {

using gf::Element;
using gf::Field;

// Exponents of X^a Y^b Z^c.
struct Monomial {
    int a = 0;
    int b = 0;
    int c = 0;

    int degree() const noexcept { return a + b + c; }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Dense homogeneous form. Coefficient of X^a Y^b Z^c with b+c = s sits at
// s(s+1)/2 + c.
class Form {
public:
    Form() = default;
    Form(const Field& field, int degree);

    static Form constant(const Field& field, Element c);
    // var: 0 = X, 1 = Y, 2 = Z.
    static Form variable(const Field& field, int var);
    static Form monomial(const Field& field, Element coeff, Monomial m);

    static std::size_t index(int b, int c) noexcept
    {
        const auto s = static_cast<std::size_t>(b + c);
        return s * (s + 1) / 2 + static_cast<std::size_t>(c);
    }
    static std::size_t count(int degree) noexcept
    {
        const auto d = static_cast<std::size_t>(degree);
        return (d + 1) * (d + 2) / 2;
    }
    Monomial monomial_at(std::size_t idx) const noexcept;

    const Field& field() const noexcept { return *field_; }
    const Field* field_ptr() const noexcept { return field_; }
    int degree() const noexcept { return degree_; }
    const std::vector<Element>& coeffs() const noexcept { return c_; }

    Element coeff(Monomial m) const;
    void set(Monomial m, Element v);
    void add_to(Monomial m, Element v);

    bool is_zero() const noexcept;
    Element evaluate(Element x, Element y, Element z) const;
    // Partial derivative in var (0 = X, 1 = Y, 2 = Z). Degree drops by one;
    // the derivative of a constant is the zero constant.
    Form derivative(int var) const;
    // Largest monomial with nonzero coefficient in lex order X > Y > Z.
    std::optional<Monomial> leading() const;

    // "X^3*Y + Y^3*Z + Z^3*X"; nonunit coefficients print as "a^k*".
    std::string to_string() const;

    friend bool operator==(const Form& a, const Form& b);

private:
    const Field* field_ = nullptr;
    int degree_ = 0;
    std::vector<Element> c_;
};

Form add(const Form& a, const Form& b);
Form sub(const Form& a, const Form& b);
Form scale(const Form& a, Element c);
Form mul(const Form& a, const Form& b);
Form pow(const Form& a, int e);

// num/den with deg num - deg den = weight. Functions on a curve have
// weight 0; the curve equation itself parses with den = 1.
struct Fraction {
    Form num;
    Form den;
    int weight() const noexcept { return num.degree() - den.degree(); }
};

// Parses + - * / ^ and parentheses over X, Y, Z, field constants a, a^k and
// integers. Sums of terms of different weight throw NotHomogeneous; other
// syntax problems throw ParseError.
Fraction parse_fraction(const Field& field, std::string_view text);
// As above but the result must be a polynomial (constant denominator).
Form parse_form(const Field& field, std::string_view text);

// Univariate polynomials, coefficients low to high, no trailing zeros.
using UPoly = std::vector<Element>;

void trim(UPoly& p);
int degree(const UPoly& p); // -1 for zero
Element evaluate(const Field& f, const UPoly& p, Element x);
UPoly derivative(const Field& f, const UPoly& p);
// Remainder of a by b (b nonzero).
UPoly remainder(const Field& f, UPoly a, const UPoly& b);
// Quotient of a by (x - r), assuming r is a root.
UPoly deflate(const Field& f, const UPoly& a, Element r);
// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const Field& f, UPoly a, UPoly b);

struct Root {
    Element value;
    int multiplicity = 0;
};
// Roots in the field, in enumerate() order, with multiplicities.
std::vector<Root> roots(const Field& f, const UPoly& p);

} // namespace agkey::poly
