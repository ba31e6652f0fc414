// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#include "agkey/gf.hpp"

#include "agkey/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace agkey::gf {

namespace {

bool is_prime(unsigned p)
{
    if (p < 2)
        return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

using Poly = std::vector<unsigned>; // low-to-high over GF(p)

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

unsigned inv_mod(unsigned a, unsigned p)
{
    // p is small; Fermat.
    unsigned r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// Remainder of a modulo a monic-or-not nonzero b.
Poly poly_mod(Poly a, const Poly& b, unsigned p)
{
    trim(a);
    const std::size_t db = b.size() - 1;
    const unsigned lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const unsigned c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i)
            a[shift + i] = (a[shift + i] + p - (c * b[i]) % p) % p;
        trim(a);
    }
    return a;
}

Poly digits(std::uint32_t v, unsigned p, unsigned m)
{
    Poly d(m, 0);
    for (unsigned i = 0; i < m; ++i) {
        d[i] = v % p;
        v /= p;
    }
    return d;
}

std::uint32_t undigits(const Poly& d, unsigned p)
{
    std::uint32_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;)
        v = v * p + d[i];
    return v;
}

} // namespace

bool is_irreducible(unsigned p, std::span<const unsigned> poly_in)
{
    Poly poly(poly_in.begin(), poly_in.end());
    trim(poly);
    if (poly.size() < 2)
        return false;
    const std::size_t deg = poly.size() - 1;
    if (deg == 1)
        return true;
    // Try every monic candidate factor of degree 1..deg/2.
    for (std::size_t fd = 1; fd <= deg / 2; ++fd) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < fd; ++i)
            count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly f(fd + 1, 0);
            std::uint64_t v = idx;
            for (std::size_t i = 0; i < fd; ++i) {
                f[i] = static_cast<unsigned>(v % p);
                v /= p;
            }
            f[fd] = 1;
            if (poly_mod(poly, f, p).empty())
                return false;
        }
    }
    return true;
}

std::vector<unsigned> first_irreducible(unsigned p, unsigned m)
{
    std::uint64_t count = 1;
    for (unsigned i = 0; i < m; ++i)
        count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly f(m + 1, 0);
        std::uint64_t v = idx;
        for (unsigned i = 0; i < m; ++i) {
            f[i] = static_cast<unsigned>(v % p);
            v /= p;
        }
        f[m] = 1;
        if (is_irreducible(p, f))
            return f;
    }
    throw InvariantViolation("no irreducible polynomial found");
}

std::shared_ptr<const Field> Field::make(FieldSpec spec)
{
    if (!is_prime(spec.p))
        throw UnsupportedField("characteristic " + std::to_string(spec.p) + " is not prime");
    if (spec.m < 1)
        throw UnsupportedField("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < spec.m; ++i) {
        q *= spec.p;
        if (q > (1u << 16))
            throw UnsupportedField("field size exceeds 2^16");
    }
    if (spec.modulus.size() != spec.m + 1 || spec.modulus.back() != 1)
        throw ReducibleModulus("modulus must be monic of degree m");
    for (unsigned c : spec.modulus)
        if (c >= spec.p)
            throw ReducibleModulus("modulus coefficient out of range");
    if (!is_irreducible(spec.p, spec.modulus))
        throw ReducibleModulus("modulus factors over GF(" + std::to_string(spec.p) + ")");
    return std::shared_ptr<const Field>(new Field(std::move(spec)));
}

Field::Field(FieldSpec spec) : spec_(std::move(spec))
{
    q_ = 1;
    for (unsigned i = 0; i < spec_.m; ++i)
        q_ *= spec_.p;

    if (spec_.m == 1)
        alpha_ = {(spec_.p - spec_.modulus[0]) % spec_.p};
    else
        alpha_ = {spec_.p}; // digit vector (0, 1, 0, ...)

    // Find a primitive element, preferring the generator.
    const std::uint32_t order = q_ - 1;
    auto is_primitive = [&](Element g) {
        if (g.value == 0)
            return false;
        Element x = one();
        for (std::uint32_t k = 1; k <= order; ++k) {
            x = mul_canonical(x, g);
            if (x == one())
                return k == order;
        }
        return false;
    };
    if (q_ == 2) {
        primitive_ = one();
    } else if (is_primitive(alpha_)) {
        primitive_ = alpha_;
    } else {
        for (std::uint32_t v = 2; v < q_; ++v)
            if (is_primitive(Element{v})) {
                primitive_ = Element{v};
                break;
            }
    }

    log_.assign(q_, 0);
    exp_.assign(2 * std::max<std::uint32_t>(order, 1), 0);
    Element x = one();
    for (std::uint32_t k = 0; k < std::max<std::uint32_t>(order, 1); ++k) {
        exp_[k] = x.value;
        log_[x.value] = k;
        x = mul_canonical(x, primitive_);
    }
    for (std::uint32_t k = order; k < exp_.size(); ++k)
        exp_[k] = exp_[k - order];
}

Element Field::add_generic(Element a, Element b) const noexcept
{
    const unsigned p = spec_.p;
    if (spec_.m == 1)
        return {(a.value + b.value) % p};
    std::uint32_t r = 0, scale = 1;
    std::uint32_t x = a.value, y = b.value;
    for (unsigned i = 0; i < spec_.m; ++i) {
        r += ((x % p + y % p) % p) * scale;
        x /= p;
        y /= p;
        scale *= p;
    }
    return {r};
}

Element Field::neg(Element a) const noexcept
{
    const unsigned p = spec_.p;
    if (p == 2)
        return a;
    std::uint32_t r = 0, scale = 1, x = a.value;
    for (unsigned i = 0; i < spec_.m; ++i) {
        r += ((p - x % p) % p) * scale;
        x /= p;
        scale *= p;
    }
    return {r};
}

Element Field::mul_canonical(Element a, Element b) const noexcept
{
    const unsigned p = spec_.p, m = spec_.m;
    const Poly da = digits(a.value, p, m), db = digits(b.value, p, m);
    Poly prod(2 * m - 1, 0);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    Poly r = poly_mod(prod, Poly(spec_.modulus.begin(), spec_.modulus.end()), p);
    r.resize(m, 0);
    return {undigits(r, p)};
}

Element Field::inv(Element a) const
{
    if (a.value == 0)
        throw DivisionByZero("inverse of zero");
    const std::uint32_t order = q_ - 1;
    return {exp_[(order - log_[a.value]) % order]};
}

Element Field::div(Element a, Element b) const
{
    return mul(a, inv(b));
}

Element Field::pow(Element a, long long e) const
{
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    Element r = one();
    while (e) {
        if (e & 1)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint32_t Field::log(Element a) const
{
    if (a.value == 0)
        throw DivisionByZero("log of zero");
    return log_[a.value];
}

Element Field::exp(long long k) const noexcept
{
    const long long order = q_ - 1;
    long long r = k % order;
    if (r < 0)
        r += order;
    return {exp_[static_cast<std::size_t>(r)]};
}

std::vector<Element> Field::enumerate() const
{
    std::vector<Element> out;
    out.reserve(q_);
    out.push_back(zero());
    for (std::uint32_t k = 0; k + 1 < q_; ++k)
        out.push_back(Element{exp_[k]});
    return out;
}

Element Field::from_int(long long v) const noexcept
{
    long long r = v % static_cast<long long>(spec_.p);
    if (r < 0)
        r += spec_.p;
    return {static_cast<std::uint32_t>(r)};
}

std::string Field::to_string(Element a) const
{
    if (a.value == 0)
        return "0";
    if (generator_is_primitive())
        return "a^" + std::to_string(log_[a.value]);
    // Polynomial form, highest power first.
    const Poly d = digits(a.value, spec_.p, spec_.m);
    std::string out;
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d[i] == 0)
            continue;
        if (!out.empty())
            out += "+";
        std::string term;
        if (i == 0 || d[i] != 1)
            term = std::to_string(d[i]);
        if (i > 0) {
            if (!term.empty())
                term += "*";
            term += i == 1 ? "a" : "a^" + std::to_string(i);
        }
        out += term;
    }
    return out;
}

Element Field::parse(std::string_view text) const
{
    Element total = zero();
    std::size_t pos = 0;
    bool any = false;
    while (pos <= text.size()) {
        std::size_t next = text.find('+', pos);
        if (next == std::string_view::npos)
            next = text.size();
        std::string term;
        for (char c : text.substr(pos, next - pos))
            if (!std::isspace(static_cast<unsigned char>(c)))
                term += c;
        if (term.empty())
            throw ParseError("empty field element term in '" + std::string(text) + "'");
        Element value;
        if (term[0] == 'a') {
            long long k = 1;
            if (term.size() > 1) {
                if (term[1] != '^')
                    throw ParseError("bad field element '" + term + "'");
                auto [ptr, ec] = std::from_chars(term.data() + 2, term.data() + term.size(), k);
                if (ec != std::errc() || ptr != term.data() + term.size())
                    throw ParseError("bad exponent in '" + term + "'");
            }
            value = pow(alpha_, k);
        } else {
            long long v = 0;
            auto [ptr, ec] = std::from_chars(term.data(), term.data() + term.size(), v);
            if (ec != std::errc() || ptr != term.data() + term.size())
                throw ParseError("bad field element '" + term + "'");
            value = from_int(v);
        }
        total = add(total, value);
        any = true;
        pos = next + 1;
    }
    if (!any)
        throw ParseError("empty field element");
    return total;
}

void Field::axpy(std::span<Element> y, Element c, std::span<const Element> x) const noexcept
{
    if (c.value == 0)
        return;
    const std::size_t n = std::min(y.size(), x.size());
    if (spec_.p == 2) {
        const std::uint32_t lc = log_[c.value];
        for (std::size_t i = 0; i < n; ++i)
            if (x[i].value)
                y[i].value ^= exp_[lc + log_[x[i].value]];
        return;
    }
    for (std::size_t i = 0; i < n; ++i)
        y[i] = add(y[i], mul(c, x[i]));
}

namespace {
void check_same(const FieldElement& a, const FieldElement& b)
{
    if (&a.field() != &b.field() && !(a.field().spec() == b.field().spec()))
        throw MixedFields("operands belong to different fields");
}
} // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b)
{
    check_same(a, b);
    return {a.field(), a.field().add(a.value(), b.value())};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b)
{
    check_same(a, b);
    return {a.field(), a.field().sub(a.value(), b.value())};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b)
{
    check_same(a, b);
    return {a.field(), a.field().mul(a.value(), b.value())};
}

FieldElement operator/(const FieldElement& a, const FieldElement& b)
{
    check_same(a, b);
    return {a.field(), a.field().div(a.value(), b.value())};
}

bool operator==(const FieldElement& a, const FieldElement& b)
{
    check_same(a, b);
    return a.value() == b.value();
}

} // namespace agkey::gf
