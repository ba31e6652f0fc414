// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#include "agkey/poly.hpp"

#include "agkey/errors.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace agkey::poly {

Form::Form(const Field& field, int degree) : field_(&field), degree_(degree), c_(count(degree))
{
    if (degree < 0)
        throw NotHomogeneous("negative form degree");
}

Form Form::constant(const Field& field, Element c)
{
    Form f(field, 0);
    f.c_[0] = c;
    return f;
}

Form Form::variable(const Field& field, int var)
{
    Monomial m;
    (var == 0 ? m.a : var == 1 ? m.b : m.c) = 1;
    return monomial(field, Field::one(), m);
}

Form Form::monomial(const Field& field, Element coeff, Monomial m)
{
    Form f(field, m.degree());
    f.set(m, coeff);
    return f;
}

Monomial Form::monomial_at(std::size_t idx) const noexcept
{
    int s = 0;
    while (static_cast<std::size_t>((s + 1) * (s + 2) / 2) <= idx)
        ++s;
    const int c = static_cast<int>(idx - static_cast<std::size_t>(s * (s + 1) / 2));
    return {degree_ - s, s - c, c};
}

Element Form::coeff(Monomial m) const
{
    if (m.degree() != degree_ || m.a < 0 || m.b < 0 || m.c < 0)
        return Element{};
    return c_[index(m.b, m.c)];
}

void Form::set(Monomial m, Element v)
{
    if (m.degree() != degree_ || m.a < 0 || m.b < 0 || m.c < 0)
        throw NotHomogeneous("monomial of degree " + std::to_string(m.degree()) + " in a form of degree " +
                             std::to_string(degree_));
    c_[index(m.b, m.c)] = v;
}

void Form::add_to(Monomial m, Element v)
{
    set(m, field_->add(coeff(m), v));
}

bool Form::is_zero() const noexcept
{
    return std::all_of(c_.begin(), c_.end(), [](Element e) { return e.is_zero(); });
}

Element Form::evaluate(Element x, Element y, Element z) const
{
    const Field& f = *field_;
    // Precompute powers once.
    std::vector<Element> px(degree_ + 1), py(degree_ + 1), pz(degree_ + 1);
    px[0] = py[0] = pz[0] = Field::one();
    for (int i = 1; i <= degree_; ++i) {
        px[i] = f.mul(px[i - 1], x);
        py[i] = f.mul(py[i - 1], y);
        pz[i] = f.mul(pz[i - 1], z);
    }
    Element acc{};
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero())
            continue;
        const Monomial m = monomial_at(i);
        acc = f.add(acc, f.mul(c_[i], f.mul(px[m.a], f.mul(py[m.b], pz[m.c]))));
    }
    return acc;
}

Form Form::derivative(int var) const
{
    const Field& f = *field_;
    if (degree_ == 0)
        return Form(f, 0);
    Form out(f, degree_ - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero())
            continue;
        Monomial m = monomial_at(i);
        int& e = var == 0 ? m.a : var == 1 ? m.b : m.c;
        if (e == 0)
            continue;
        const Element k = f.from_int(e);
        --e;
        out.add_to(m, f.mul(k, c_[i]));
    }
    return out;
}

std::optional<Monomial> Form::leading() const
{
    for (int a = degree_; a >= 0; --a)
        for (int b = degree_ - a; b >= 0; --b) {
            const Monomial m{a, b, degree_ - a - b};
            if (!coeff(m).is_zero())
                return m;
        }
    return std::nullopt;
}

std::string Form::to_string() const
{
    const Field& f = *field_;
    std::string out;
    for (int a = degree_; a >= 0; --a)
        for (int b = degree_ - a; b >= 0; --b) {
            const Monomial m{a, b, degree_ - a - b};
            const Element c = coeff(m);
            if (c.is_zero())
                continue;
            std::string mono;
            auto put = [&](char v, int e) {
                if (e == 0)
                    return;
                if (!mono.empty())
                    mono += "*";
                mono += v;
                if (e > 1)
                    mono += "^" + std::to_string(e);
            };
            put('X', m.a);
            put('Y', m.b);
            put('Z', m.c);
            std::string cs = c == Field::one() ? "1" : f.to_string(c);
            if (cs.find('+') != std::string::npos)
                cs = "(" + cs + ")";
            std::string term;
            if (mono.empty())
                term = cs;
            else if (c == Field::one())
                term = mono;
            else
                term = cs + "*" + mono;
            if (!out.empty())
                out += " + ";
            out += term;
        }
    return out.empty() ? "0" : out;
}

bool operator==(const Form& a, const Form& b)
{
    if (a.is_zero() && b.is_zero())
        return true;
    return a.degree_ == b.degree_ && a.c_ == b.c_;
}

namespace {

void same_field(const Form& a, const Form& b)
{
    if (a.field_ptr() != b.field_ptr() && !(a.field().spec() == b.field().spec()))
        throw MixedFields("forms over different fields");
}

} // namespace

Form add(const Form& a, const Form& b)
{
    same_field(a, b);
    if (a.degree() != b.degree()) {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        throw NotHomogeneous("sum of forms of degree " + std::to_string(a.degree()) + " and " +
                             std::to_string(b.degree()));
    }
    Form r = a;
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) {
        const Element v = b.coeffs()[i];
        if (!v.is_zero())
            r.add_to(a.monomial_at(i), v);
    }
    return r;
}

Form sub(const Form& a, const Form& b)
{
    return add(a, scale(b, b.field().neg(Field::one())));
}

Form scale(const Form& a, Element c)
{
    Form r(a.field(), a.degree());
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        if (!a.coeffs()[i].is_zero())
            r.set(a.monomial_at(i), a.field().mul(a.coeffs()[i], c));
    return r;
}

Form mul(const Form& a, const Form& b)
{
    same_field(a, b);
    const Field& f = a.field();
    Form r(f, a.degree() + b.degree());
    std::vector<std::pair<Monomial, Element>> bt;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j)
        if (!b.coeffs()[j].is_zero())
            bt.emplace_back(b.monomial_at(j), b.coeffs()[j]);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const Element ca = a.coeffs()[i];
        if (ca.is_zero())
            continue;
        const Monomial ma = a.monomial_at(i);
        for (const auto& [mb, cb] : bt)
            r.add_to({ma.a + mb.a, ma.b + mb.b, ma.c + mb.c}, f.mul(ca, cb));
    }
    return r;
}

Form pow(const Form& a, int e)
{
    Form r = Form::constant(a.field(), Field::one());
    for (int i = 0; i < e; ++i)
        r = mul(r, a);
    return r;
}

// ---------------------------------------------------------------------------
// Expression parser

namespace {

class Parser {
public:
    Parser(const Field& f, std::string_view text) : f_(f), s_(text) {}

    Fraction parse()
    {
        Fraction r = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    long long integer()
    {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected an integer");
        long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1'000'000)
                fail("integer too large");
            ++pos_;
        }
        return v;
    }

    Fraction constant(Element c) const
    {
        return {Form::constant(f_, c), Form::constant(f_, Field::one())};
    }

    Fraction normalize(Fraction x) const
    {
        if (x.den.is_zero())
            throw DivisionByZero("zero denominator");
        if (x.den.degree() == 0) {
            const Element inv = f_.inv(x.den.coeffs()[0]);
            x.num = scale(x.num, inv);
            x.den = Form::constant(f_, Field::one());
        }
        return x;
    }

    Fraction add_frac(const Fraction& x, const Fraction& y) const
    {
        if (x.num.is_zero())
            return y;
        if (y.num.is_zero())
            return x;
        if (x.weight() != y.weight())
            throw NotHomogeneous("terms of weight " + std::to_string(x.weight()) + " and " +
                                 std::to_string(y.weight()) + " added");
        if (x.den == y.den)
            return normalize({add(x.num, y.num), x.den});
        return normalize({add(mul(x.num, y.den), mul(y.num, x.den)), mul(x.den, y.den)});
    }

    Fraction mul_frac(const Fraction& x, const Fraction& y) const
    {
        return normalize({mul(x.num, y.num), mul(x.den, y.den)});
    }

    Fraction div_frac(const Fraction& x, const Fraction& y) const
    {
        if (y.num.is_zero())
            throw DivisionByZero("division by zero in expression");
        return normalize({mul(x.num, y.den), mul(x.den, y.num)});
    }

    Fraction negate(Fraction x) const
    {
        x.num = scale(x.num, f_.neg(Field::one()));
        return x;
    }

    Fraction expr()
    {
        Fraction acc;
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        acc = term();
        if (neg)
            acc = negate(acc);
        for (;;) {
            if (eat('+'))
                acc = add_frac(acc, term());
            else if (eat('-'))
                acc = add_frac(acc, negate(term()));
            else
                return acc;
        }
    }

    Fraction term()
    {
        Fraction acc = factor();
        for (;;) {
            if (eat('*'))
                acc = mul_frac(acc, factor());
            else if (eat('/'))
                acc = div_frac(acc, factor());
            else
                return acc;
        }
    }

    Fraction factor()
    {
        Fraction base = primary();
        if (eat('^')) {
            const long long e = integer();
            Fraction r = constant(Field::one());
            for (long long i = 0; i < e; ++i)
                r = mul_frac(r, base);
            return r;
        }
        return base;
    }

    Fraction primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Fraction inner = expr();
            if (!eat(')'))
                fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return constant(f_.from_int(integer()));
        ++pos_;
        switch (c) {
        case 'a':
            return constant(f_.generator());
        case 'X':
        case 'x':
            return {Form::variable(f_, 0), Form::constant(f_, Field::one())};
        case 'Y':
        case 'y':
            return {Form::variable(f_, 1), Form::constant(f_, Field::one())};
        case 'Z':
        case 'z':
            return {Form::variable(f_, 2), Form::constant(f_, Field::one())};
        default:
            --pos_;
            fail("unexpected '" + std::string(1, c) + "'");
        }
    }

    const Field& f_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

Fraction parse_fraction(const Field& field, std::string_view text)
{
    return Parser(field, text).parse();
}

Form parse_form(const Field& field, std::string_view text)
{
    Fraction r = parse_fraction(field, text);
    if (r.den.degree() != 0)
        throw ParseError("expected a polynomial, got a quotient: '" + std::string(text) + "'");
    return r.num;
}

// ---------------------------------------------------------------------------
// Univariate helpers

void trim(UPoly& p)
{
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
}

int degree(const UPoly& p)
{
    for (std::size_t i = p.size(); i-- > 0;)
        if (!p[i].is_zero())
            return static_cast<int>(i);
    return -1;
}

Element evaluate(const Field& f, const UPoly& p, Element x)
{
    Element acc{};
    for (std::size_t i = p.size(); i-- > 0;)
        acc = f.add(f.mul(acc, x), p[i]);
    return acc;
}

UPoly derivative(const Field& f, const UPoly& p)
{
    UPoly d;
    for (std::size_t i = 1; i < p.size(); ++i)
        d.push_back(f.mul(f.from_int(static_cast<long long>(i)), p[i]));
    trim(d);
    return d;
}

UPoly remainder(const Field& f, UPoly a, const UPoly& b)
{
    trim(a);
    const int db = degree(b);
    if (db < 0)
        throw DivisionByZero("polynomial remainder by zero");
    const Element lead_inv = f.inv(b[static_cast<std::size_t>(db)]);
    while (degree(a) >= db) {
        const std::size_t da = static_cast<std::size_t>(degree(a));
        const Element c = f.mul(a[da], lead_inv);
        const std::size_t shift = da - static_cast<std::size_t>(db);
        for (int i = 0; i <= db; ++i)
            a[shift + static_cast<std::size_t>(i)] =
                f.sub(a[shift + static_cast<std::size_t>(i)], f.mul(c, b[static_cast<std::size_t>(i)]));
        trim(a);
    }
    return a;
}

UPoly deflate(const Field& f, const UPoly& a, Element r)
{
    // Synthetic division by (x - r).
    const int da = degree(a);
    if (da <= 0)
        return {};
    UPoly q(static_cast<std::size_t>(da));
    Element carry{};
    for (int i = da; i >= 1; --i) {
        carry = f.add(f.mul(carry, r), a[static_cast<std::size_t>(i)]);
        q[static_cast<std::size_t>(i - 1)] = carry;
    }
    return q;
}

UPoly gcd(const Field& f, UPoly a, UPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = remainder(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Element inv = f.inv(a.back());
        for (auto& c : a)
            c = f.mul(c, inv);
    }
    return a;
}

std::vector<Root> roots(const Field& f, const UPoly& p_in)
{
    UPoly p = p_in;
    trim(p);
    std::vector<Root> out;
    if (p.empty())
        throw InvariantViolation("roots of the zero polynomial");
    for (const Element x : f.enumerate()) {
        int mult = 0;
        while (degree(p) > 0 && evaluate(f, p, x).is_zero()) {
            p = deflate(f, p, x);
            ++mult;
        }
        if (mult > 0)
            out.push_back({x, mult});
    }
    return out;
}

} // namespace agkey::poly
