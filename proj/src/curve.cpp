// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#include "agkey/curve.hpp"

#include "agkey/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <string>

namespace agkey::curve {

using poly::Monomial;
using poly::UPoly;

ProjectivePoint normalize(const Field& f, Element x, Element y, Element z)
{
    Element s;
    if (!z.is_zero())
        s = f.inv(z);
    else if (!y.is_zero())
        s = f.inv(y);
    else if (!x.is_zero())
        s = f.inv(x);
    else
        throw InvariantViolation("(0:0:0) is not a projective point");
    return {f.mul(x, s), f.mul(y, s), f.mul(z, s)};
}

// ---------------------------------------------------------------------------
// Divisor

Divisor Divisor::point(std::size_t p, int k)
{
    Divisor d;
    d.set(p, k);
    return d;
}

int Divisor::operator[](std::size_t p) const
{
    const auto it = c_.find(p);
    return it == c_.end() ? 0 : it->second;
}

void Divisor::set(std::size_t p, int k)
{
    if (k == 0)
        c_.erase(p);
    else
        c_[p] = k;
}

void Divisor::add(std::size_t p, int k)
{
    set(p, (*this)[p] + k);
}

std::vector<std::size_t> Divisor::support() const
{
    std::vector<std::size_t> s;
    for (const auto& [p, k] : c_)
        s.push_back(p);
    return s;
}

int Divisor::degree() const noexcept
{
    int d = 0;
    for (const auto& [p, k] : c_)
        d += k;
    return d;
}

bool Divisor::is_effective() const noexcept
{
    return std::all_of(c_.begin(), c_.end(), [](const auto& t) { return t.second > 0; });
}

Divisor Divisor::positive_part() const
{
    Divisor d;
    for (const auto& [p, k] : c_)
        if (k > 0)
            d.c_[p] = k;
    return d;
}

Divisor Divisor::negative_part() const
{
    Divisor d;
    for (const auto& [p, k] : c_)
        if (k < 0)
            d.c_[p] = -k;
    return d;
}

Divisor& Divisor::operator+=(const Divisor& o)
{
    for (const auto& [p, k] : o.c_)
        add(p, k);
    return *this;
}

Divisor& Divisor::operator-=(const Divisor& o)
{
    for (const auto& [p, k] : o.c_)
        add(p, -k);
    return *this;
}

Divisor operator*(int k, const Divisor& a)
{
    Divisor d;
    if (k == 0)
        return d;
    for (const auto& [p, c] : a.c_)
        d.c_[p] = k * c;
    return d;
}

bool operator<=(const Divisor& a, const Divisor& b)
{
    for (const auto& [p, k] : a.c_)
        if (k > b[p])
            return false;
    for (const auto& [p, k] : b.c_)
        if (a[p] > k)
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Chart helpers

namespace {

std::uint64_t pack(const ProjectivePoint& p)
{
    return std::uint64_t{p.x.value} | (std::uint64_t{p.y.value} << 20) | (std::uint64_t{p.z.value} << 40);
}

// Exponents of (u, v) for a monomial in the given chart.
std::pair<int, int> chart_exponents(Chart c, const Monomial& m)
{
    switch (c) {
    case Chart::Z:
        return {m.a, m.b};
    case Chart::Y:
        return {m.a, m.c};
    case Chart::X:
        return {m.b, m.c};
    }
    return {0, 0};
}

std::pair<Element, Element> chart_coords(const ProjectivePoint& p)
{
    switch (p.chart()) {
    case Chart::Z:
        return {p.x, p.y};
    case Chart::Y:
        return {p.x, p.z};
    case Chart::X:
        return {p.y, p.z};
    }
    return {};
}

// Variable index (0 = X, 1 = Y, 2 = Z) of the chart coordinates u and v.
std::pair<int, int> chart_vars(Chart c)
{
    switch (c) {
    case Chart::Z:
        return {0, 1};
    case Chart::Y:
        return {0, 2};
    case Chart::X:
        return {1, 2};
    }
    return {0, 1};
}

struct ParamInfo {
    bool param_is_u = true;
    Element p0; // value of the parameter coordinate at P
    Element w0; // value of the implicit coordinate at P
};

ParamInfo param_info(const Form& F, const ProjectivePoint& P)
{
    const auto [uvar, vvar] = chart_vars(P.chart());
    const Element fv = F.derivative(vvar).evaluate(P.x, P.y, P.z);
    const auto [u0, v0] = chart_coords(P);
    ParamInfo info;
    info.param_is_u = !fv.is_zero();
    if (!info.param_is_u && F.derivative(uvar).evaluate(P.x, P.y, P.z).is_zero())
        throw SingularCurve("curve is singular at a rational point");
    info.p0 = info.param_is_u ? u0 : v0;
    info.w0 = info.param_is_u ? v0 : u0;
    return info;
}

// G in the chart as polynomials in the parameter t: result[e] is the
// coefficient (a polynomial in t) of w^e.
std::vector<std::vector<Element>> split_by_implicit(const Form& G, Chart chart, const ParamInfo& info)
{
    const Field& f = G.field();
    const int m = G.degree();
    // shifted[k] = (p0 + t)^k
    std::vector<std::vector<Element>> shifted(static_cast<std::size_t>(m) + 1);
    shifted[0] = {Field::one()};
    for (int k = 1; k <= m; ++k) {
        const auto& prev = shifted[static_cast<std::size_t>(k - 1)];
        std::vector<Element> cur(prev.size() + 1);
        for (std::size_t j = 0; j < prev.size(); ++j) {
            cur[j] = f.add(cur[j], f.mul(info.p0, prev[j]));
            cur[j + 1] = f.add(cur[j + 1], prev[j]);
        }
        shifted[static_cast<std::size_t>(k)] = std::move(cur);
    }
    std::vector<std::vector<Element>> out(static_cast<std::size_t>(m) + 1);
    for (std::size_t i = 0; i < G.coeffs().size(); ++i) {
        const Element c = G.coeffs()[i];
        if (c.is_zero())
            continue;
        const auto [eu, ev] = chart_exponents(chart, G.monomial_at(i));
        const int kp = info.param_is_u ? eu : ev;
        const int kw = info.param_is_u ? ev : eu;
        auto& dst = out[static_cast<std::size_t>(kw)];
        const auto& src = shifted[static_cast<std::size_t>(kp)];
        if (dst.size() < src.size())
            dst.resize(src.size());
        f.axpy(dst, c, src);
    }
    return out;
}

// Truncated product of two power series stored from t^0.
std::vector<Element> mul_trunc(const Field& f, const std::vector<Element>& a, const std::vector<Element>& b,
                               std::size_t n)
{
    std::vector<Element> c(n);
    const std::size_t na = std::min(a.size(), n);
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i].is_zero())
            continue;
        const std::size_t len = std::min(b.size(), n - i);
        f.axpy(std::span<Element>(c.data() + i, len), a[i], std::span<const Element>(b.data(), len));
    }
    return c;
}

// sum_e pow[e] * poly[e], truncated to n.
std::vector<Element> combine(const Field& f, const std::vector<std::vector<Element>>& polys,
                             const std::vector<std::vector<Element>>& pow, std::size_t n)
{
    std::vector<Element> out(n);
    for (std::size_t e = 0; e < polys.size(); ++e) {
        const auto& pe = polys[e];
        for (std::size_t i = 0; i < pe.size() && i < n; ++i) {
            if (pe[i].is_zero())
                continue;
            const std::size_t len = std::min(pow[e].size(), n - i);
            f.axpy(std::span<Element>(out.data() + i, len), pe[i], std::span<const Element>(pow[e].data(), len));
        }
    }
    return out;
}

std::vector<Element> power_series_derivative(const Field& f, const std::vector<Element>& a)
{
    std::vector<Element> d(a.empty() ? 0 : a.size() - 1);
    for (std::size_t k = 0; k < d.size(); ++k)
        d[k] = f.mul(f.from_int(static_cast<long long>(k + 1)), a[k + 1]);
    return d;
}

} // namespace

// ---------------------------------------------------------------------------
// PlaneCurve

PlaneCurve::PlaneCurve(FieldPtr field, Form equation) : field_(std::move(field)), F_(std::move(equation))
{
    const Field& f = *field_;
    const auto all = f.enumerate();
    auto consider = [&](Element x, Element y, Element z) {
        if (F_.evaluate(x, y, z).is_zero()) {
            const ProjectivePoint p{x, y, z};
            index_[pack(p)] = points_.size();
            points_.push_back(p);
        }
    };
    for (const Element x : all)
        for (const Element y : all)
            consider(x, y, Field::one());
    num_affine_ = points_.size();
    for (const Element x : all)
        consider(x, Field::one(), Field::zero());
    consider(Field::one(), Field::zero(), Field::zero());
    expansions_.resize(points_.size());
    power_cache_.resize(points_.size());
}

std::shared_ptr<const PlaneCurve> PlaneCurve::make_unchecked(FieldPtr field, Form equation)
{
    if (!field)
        throw InvariantViolation("null field");
    if (equation.field_ptr() != field.get() && !(equation.field().spec() == field->spec()))
        throw MixedFields("curve equation is over a different field");
    if (equation.degree() < 3)
        throw UnsupportedCurve("curve degree must be at least 3, got " + std::to_string(equation.degree()));
    if (equation.is_zero())
        throw UnsupportedCurve("zero polynomial");
    return std::shared_ptr<const PlaneCurve>(new PlaneCurve(std::move(field), std::move(equation)));
}

std::shared_ptr<const PlaneCurve> PlaneCurve::make(FieldPtr field, Form equation)
{
    auto c = make_unchecked(std::move(field), std::move(equation));
    c->check_smooth();
    return c;
}

namespace {

// Coefficients of F(x, y, 1) grouped by the power of y: out[b] = list of
// (a, coeff).
using Grouped = std::vector<std::vector<std::pair<int, Element>>>;

Grouped group_by_y(const Form& F, const std::function<Element(Element)>& embed)
{
    Grouped g(static_cast<std::size_t>(std::max(F.degree(), 0)) + 1);
    for (std::size_t i = 0; i < F.coeffs().size(); ++i) {
        const Element c = F.coeffs()[i];
        if (c.is_zero())
            continue;
        const Monomial m = F.monomial_at(i);
        g[static_cast<std::size_t>(m.b)].emplace_back(m.a, embed(c));
    }
    return g;
}

UPoly specialize_x(const Field& f, const Grouped& g, const std::vector<Element>& xpow)
{
    UPoly p(g.size());
    for (std::size_t b = 0; b < g.size(); ++b)
        for (const auto& [a, c] : g[b])
            p[b] = f.add(p[b], f.mul(c, xpow[static_cast<std::size_t>(a)]));
    poly::trim(p);
    return p;
}

// F(x, 1, 0) as a polynomial in x.
UPoly at_infinity(const Form& F)
{
    const int d = F.degree();
    UPoly p(static_cast<std::size_t>(d) + 1);
    for (int a = 0; a <= d; ++a)
        p[static_cast<std::size_t>(a)] = F.coeff({a, d - a, 0});
    poly::trim(p);
    return p;
}

} // namespace

void PlaneCurve::check_smooth() const
{
    const Field& base = *field_;
    const Form Fx = F_.derivative(0), Fy = F_.derivative(1), Fz = F_.derivative(2);
    const int d = F_.degree();

    // Points at infinity: a nonconstant gcd over GF(q) catches common
    // zeros over the algebraic closure.
    {
        UPoly g = at_infinity(F_);
        for (const Form* h : {&Fx, &Fy, &Fz})
            g = poly::gcd(base, g, at_infinity(*h));
        if (g.empty() || poly::degree(g) > 0) {
            std::string where = "a point (x:1:0)";
            if (!g.empty())
                for (const auto& r : poly::roots(base, g)) {
                    where = "(" + base.to_string(r.value) + ":1:0)";
                    break;
                }
            throw SingularCurve("singular at " + where);
        }
        const Element one = Field::one(), zero = Field::zero();
        if (F_.evaluate(one, zero, zero).is_zero() && Fx.evaluate(one, zero, zero).is_zero() &&
            Fy.evaluate(one, zero, zero).is_zero() && Fz.evaluate(one, zero, zero).is_zero())
            throw SingularCurve("singular at (1:0:0)");
    }

    // Affine part: for x0 in GF(q^k), gcd_y of f, f_x, f_y.
    const unsigned p = base.characteristic(), m = base.degree();
    for (unsigned k = 1; k <= 6; ++k) {
        std::uint64_t size = 1;
        for (unsigned i = 0; i < m * k; ++i)
            size *= p;
        if (size > (1u << 16))
            break;
        FieldPtr big_holder;
        const Field* big = &base;
        std::function<Element(Element)> embed = [](Element e) { return e; };
        if (k > 1) {
            big_holder = Field::make({p, m * k, gf::first_irreducible(p, m * k)});
            big = big_holder.get();
            // beta: a root of the base modulus inside the big field.
            Element beta{};
            bool found = false;
            for (const Element cand : big->enumerate()) {
                Element acc{};
                for (std::size_t i = base.spec().modulus.size(); i-- > 0;)
                    acc = big->add(big->mul(acc, cand), big->from_int(base.spec().modulus[i]));
                if (acc.is_zero()) {
                    beta = cand;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw InvariantViolation("base field does not embed");
            const Field* bp = big;
            embed = [bp, beta, p, m](Element e) {
                Element acc{}, bpow = Field::one();
                std::uint32_t v = e.value;
                for (unsigned i = 0; i < m; ++i) {
                    acc = bp->add(acc, bp->mul(bp->from_int(v % p), bpow));
                    v /= p;
                    bpow = bp->mul(bpow, beta);
                }
                return acc;
            };
        }
        const Grouped gf_ = group_by_y(F_, embed), gx = group_by_y(Fx, embed), gy = group_by_y(Fy, embed);
        std::vector<Element> xpow(static_cast<std::size_t>(d) + 1);
        for (const Element x0 : big->enumerate()) {
            xpow[0] = Field::one();
            for (int i = 1; i <= d; ++i)
                xpow[static_cast<std::size_t>(i)] = big->mul(xpow[static_cast<std::size_t>(i - 1)], x0);
            UPoly g = specialize_x(*big, gf_, xpow);
            if (!g.empty() && poly::degree(g) == 0)
                continue;
            g = poly::gcd(*big, g, specialize_x(*big, gx, xpow));
            g = poly::gcd(*big, g, specialize_x(*big, gy, xpow));
            if (!g.empty() && poly::degree(g) == 0)
                continue;
            std::string where = "an affine point over GF(" + std::to_string(p) + "^" + std::to_string(m * k) + ")";
            if (k == 1 && !g.empty())
                for (const auto& r : poly::roots(base, g)) {
                    where = format_point(base, {x0, r.value, Field::one()});
                    break;
                }
            throw SingularCurve("singular at " + where);
        }
    }
}

std::optional<std::size_t> PlaneCurve::index_of(const ProjectivePoint& p) const
{
    const auto it = index_.find(pack(normalize(*field_, p.x, p.y, p.z)));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t PlaneCurve::index_checked(const ProjectivePoint& p) const
{
    const auto i = index_of(p);
    if (!i)
        throw NotOnCurve("(" + field_->to_string(p.x) + ":" + field_->to_string(p.y) + ":" +
                         field_->to_string(p.z) + ") is not a rational point of the curve");
    return *i;
}

ProjectivePoint PlaneCurve::parse_point(std::string_view text) const
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw ParseError("point must look like (x:y:z), got '" + std::string(text) + "'");
    s = s.substr(1, s.size() - 2);
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto colon = s.find(':', start);
        parts.push_back(s.substr(start, colon - start));
        if (colon == std::string::npos)
            break;
        start = colon + 1;
    }
    if (parts.size() != 3)
        throw ParseError("point needs three coordinates: '" + std::string(text) + "'");
    const ProjectivePoint p =
        normalize(*field_, field_->parse(parts[0]), field_->parse(parts[1]), field_->parse(parts[2]));
    index_checked(p);
    return p;
}

std::string format_point(const Field& f, const ProjectivePoint& p)
{
    auto s = [&](Element e) { return e == Field::one() ? std::string("1") : f.to_string(e); };
    return "(" + s(p.x) + ":" + s(p.y) + ":" + s(p.z) + ")";
}

std::string PlaneCurve::point_string(std::size_t p) const
{
    return format_point(*field_, points_.at(p));
}

std::string PlaneCurve::divisor_string(const Divisor& d) const
{
    if (d.is_zero())
        return "0";
    std::string out;
    for (const auto& [p, k] : d.terms()) {
        if (!out.empty())
            out += k < 0 ? " - " : " + ";
        else if (k < 0)
            out += "-";
        const int a = k < 0 ? -k : k;
        if (a != 1)
            out += std::to_string(a) + "*";
        out += point_string(p);
    }
    return out;
}

std::shared_ptr<const LocalExpansion> PlaneCurve::compute_expansion(std::size_t p, int N,
                                                                    const LocalExpansion* seed) const
{
    const Field& f = *field_;
    const ProjectivePoint& P = points_[p];
    const ParamInfo info = param_info(F_, P);
    const auto polys = split_by_implicit(F_, P.chart(), info);
    const std::size_t d = polys.size() - 1;

    // Derivative in w: sum_e e * w^(e-1) * poly[e].
    std::vector<std::vector<Element>> dpolys(d);
    for (std::size_t e = 1; e <= d; ++e) {
        dpolys[e - 1] = polys[e];
        const Element k = f.from_int(static_cast<long long>(e));
        for (auto& c : dpolys[e - 1])
            c = f.mul(c, k);
    }

    std::vector<Element> w;
    if (seed)
        w = seed->param_is_u ? seed->v.coeffs() : seed->u.coeffs();
    else
        w = {info.w0};
    const auto n_target = static_cast<std::size_t>(N);
    if (w.size() > n_target)
        w.resize(n_target);
    while (w.size() < n_target) {
        const std::size_t np = std::min(2 * w.size(), n_target);
        w.resize(np);
        std::vector<std::vector<Element>> pw(d + 1);
        pw[0] = std::vector<Element>(np);
        pw[0][0] = Field::one();
        for (std::size_t e = 1; e <= d; ++e)
            pw[e] = mul_trunc(f, pw[e - 1], w, np);
        const auto phi = combine(f, polys, pw, np);
        const auto dphi = combine(f, dpolys, pw, np);
        const Laurent step = series::divide(f, Laurent(0, phi), Laurent(0, dphi));
        for (std::size_t k = 0; k < np; ++k)
            w[k] = f.sub(w[k], step.coeff(static_cast<int>(k)));
    }

    auto ex = std::make_shared<LocalExpansion>();
    ex->point = p;
    ex->chart = P.chart();
    ex->param_is_u = info.param_is_u;
    ex->precision = N;
    std::vector<Element> param(n_target);
    param[0] = info.p0;
    if (n_target > 1)
        param[1] = Field::one();
    ex->u = Laurent(0, info.param_is_u ? param : w);
    ex->v = Laurent(0, info.param_is_u ? w : param);
    std::vector<Element> one(n_target);
    one[0] = Field::one();
    switch (P.chart()) {
    case Chart::Z:
        ex->X = ex->u, ex->Y = ex->v, ex->Z = Laurent(0, one);
        break;
    case Chart::Y:
        ex->X = ex->u, ex->Y = Laurent(0, one), ex->Z = ex->v;
        break;
    case Chart::X:
        ex->X = Laurent(0, one), ex->Y = ex->u, ex->Z = ex->v;
        break;
    }
    ex->dX = Laurent(0, power_series_derivative(f, ex->X.coeffs()));
    ex->dY = Laurent(0, power_series_derivative(f, ex->Y.coeffs()));
    ex->dZ = Laurent(0, power_series_derivative(f, ex->Z.coeffs()));
    return ex;
}

std::shared_ptr<const LocalExpansion> PlaneCurve::local_expansion(std::size_t p, int N) const
{
    if (N < 1)
        throw PrecisionTooSmall("expansion precision must be at least 1, got " + std::to_string(N));
    if (p >= points_.size())
        throw NotOnCurve("point index out of range");
    std::shared_ptr<const LocalExpansion> cached;
    {
        std::lock_guard lock(mu_);
        cached = expansions_[p];
    }
    if (cached && cached->precision >= N) {
        if (cached->precision == N)
            return cached;
        auto ex = std::make_shared<LocalExpansion>(*cached);
        ex->precision = N;
        for (Laurent* s : {&ex->u, &ex->v, &ex->X, &ex->Y, &ex->Z})
            *s = s->truncated(N);
        for (Laurent* s : {&ex->dX, &ex->dY, &ex->dZ})
            *s = s->truncated(N - 1);
        return ex;
    }
    auto ex = compute_expansion(p, N, cached.get());
    {
        std::lock_guard lock(mu_);
        if (!expansions_[p] || expansions_[p]->precision < N)
            expansions_[p] = ex;
    }
    return ex;
}

std::shared_ptr<const PlaneCurve::PowerCache> PlaneCurve::powers(std::size_t p, int N, int max_exp) const
{
    std::shared_ptr<const PowerCache> cached;
    {
        std::lock_guard lock(mu_);
        cached = power_cache_[p];
    }
    if (cached && cached->precision >= N && static_cast<int>(cached->pow.size()) > max_exp)
        return cached;
    int prec = N, exps = max_exp;
    if (cached) {
        prec = std::max(prec, cached->precision);
        exps = std::max(exps, static_cast<int>(cached->pow.size()) - 1);
    }
    const auto ex = local_expansion(p, prec);
    const auto& w = ex->param_is_u ? ex->v.coeffs() : ex->u.coeffs();
    auto pc = std::make_shared<PowerCache>();
    pc->precision = prec;
    const auto n = static_cast<std::size_t>(prec);
    pc->pow.resize(static_cast<std::size_t>(exps) + 1);
    pc->pow[0] = std::vector<Element>(n);
    pc->pow[0][0] = Field::one();
    for (std::size_t e = 1; e < pc->pow.size(); ++e)
        pc->pow[e] = mul_trunc(*field_, pc->pow[e - 1], w, n);
    {
        std::lock_guard lock(mu_);
        const auto& cur = power_cache_[p];
        if (!cur || (cur->precision <= prec && cur->pow.size() <= pc->pow.size()))
            power_cache_[p] = pc;
    }
    return pc;
}

Laurent PlaneCurve::form_series(const Form& G, std::size_t p, int N) const
{
    if (N < 1)
        throw PrecisionTooSmall("series precision must be at least 1");
    if (p >= points_.size())
        throw NotOnCurve("point index out of range");
    const ProjectivePoint& P = points_[p];
    const ParamInfo info = param_info(F_, P);
    const auto polys = split_by_implicit(G, P.chart(), info);
    const auto pc = powers(p, N, G.degree());
    return Laurent(0, combine(*field_, polys, pc->pow, static_cast<std::size_t>(N)));
}

std::optional<int> PlaneCurve::form_order(const Form& G, std::size_t p) const
{
    if (G.is_zero())
        return std::nullopt;
    const int N = degree() * G.degree() + 1;
    return form_series(G, p, N).valuation();
}

Divisor PlaneCurve::intersection_divisor(const Form& G) const
{
    Divisor d;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const ProjectivePoint& P = points_[i];
        if (!G.evaluate(P.x, P.y, P.z).is_zero())
            continue;
        const auto ord = form_order(G, i);
        if (!ord)
            throw InvariantViolation("form vanishes identically on the curve");
        d.set(i, *ord);
    }
    return d;
}

const Divisor& PlaneCurve::z_line_divisor() const
{
    {
        std::lock_guard lock(mu_);
        if (z_line_)
            return *z_line_;
    }
    const Field& f = *field_;
    const int d = degree();
    const UPoly h = at_infinity(F_);
    if (h.empty())
        throw InvariantViolation("Z divides the curve equation");
    Divisor div;
    int total = 0;
    for (const auto& r : poly::roots(f, h)) {
        div.set(index_checked({r.value, Field::one(), Field::zero()}), r.multiplicity);
        total += r.multiplicity;
    }
    const int at_x = d - poly::degree(h);
    if (at_x > 0) {
        div.set(index_checked({Field::one(), Field::zero(), Field::zero()}), at_x);
        total += at_x;
    }
    if (total != d)
        throw NonRationalIntersection("the line Z = 0 meets the curve outside the rational points");
    const Form Z = Form::variable(f, 2);
    for (const auto& [p, k] : div.terms())
        if (form_order(Z, p) != k)
            throw InvariantViolation("intersection multiplicity of Z = 0 at " + point_string(p) +
                                     " disagrees with the local expansion");
    std::lock_guard lock(mu_);
    if (!z_line_)
        z_line_ = div;
    return *z_line_;
}

const std::vector<PlaneCurve::Line>& PlaneCurve::rational_lines() const
{
    {
        std::lock_guard lock(mu_);
        if (lines_)
            return *lines_;
    }
    const Field& f = *field_;
    const auto all = f.enumerate();
    std::vector<Line> out;
    auto consider = [&](Element a, Element b, Element c) {
        Form L(f, 1);
        L.set({1, 0, 0}, a);
        L.set({0, 1, 0}, b);
        L.set({0, 0, 1}, c);
        Divisor div = intersection_divisor(L);
        if (div.degree() == degree())
            out.push_back({std::move(L), std::move(div)});
    };
    for (const Element a : all)
        for (const Element b : all)
            consider(a, b, Field::one());
    for (const Element a : all)
        consider(a, Field::one(), Field::zero());
    consider(Field::one(), Field::zero(), Field::zero());
    std::lock_guard lock(mu_);
    if (!lines_)
        lines_ = std::move(out);
    return *lines_;
}

} // namespace agkey::curve
