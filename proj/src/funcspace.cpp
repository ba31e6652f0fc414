// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#include "agkey/funcspace.hpp"

#include "agkey/errors.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace agkey::funcspace {

using poly::Monomial;

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction RationalFunction::parse(const PlaneCurve& c, std::string_view text)
{
    auto fr = poly::parse_fraction(c.field(), text);
    if (fr.weight() != 0)
        throw NotHomogeneous("rational function must have numerator and denominator of equal degree");
    if (fr.den.is_zero())
        throw DivisionByZero("zero denominator");
    return {std::move(fr.num), std::move(fr.den)};
}

RationalFunction RationalFunction::constant(const Field& f, Element v)
{
    return {Form::constant(f, v), Form::constant(f, Field::one())};
}

std::string RationalFunction::to_string() const
{
    if (den.degree() == 0) {
        const Element d = den.coeffs()[0];
        return poly::scale(num, num.field().inv(d)).to_string();
    }
    return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

std::optional<int> function_valuation(const PlaneCurve& c, const Form& num, const Form& den, std::size_t p)
{
    const auto hd = c.form_order(den, p);
    if (!hd)
        throw PoleOrderUnbounded("denominator vanishes on the curve");
    const auto hn = c.form_order(num, p);
    if (!hn)
        return std::nullopt;
    return *hn - *hd;
}

namespace {

// Coefficients [from, from + len) of a form's expansion, as a series
// starting at 0.
Laurent window(const PlaneCurve& c, const Form& g, std::size_t p, int from, int len)
{
    const Laurent s = c.form_series(g, p, from + len);
    std::vector<Element> w(s.coeffs().begin() + from, s.coeffs().end());
    return Laurent(0, std::move(w));
}

} // namespace

Laurent function_series(const PlaneCurve& c, const Form& num, const Form& den, std::size_t p, int E)
{
    const auto hd = c.form_order(den, p);
    if (!hd)
        throw PoleOrderUnbounded("denominator vanishes on the curve");
    const auto hn = c.form_order(num, p);
    if (!hn)
        return Laurent(E, {});
    const int v = *hn - *hd;
    const int L = E - v;
    if (L <= 0)
        return Laurent(E, {});
    const Field& f = c.field();
    const Laurent q = series::mul(f, window(c, num, p, *hn, L), series::inverse(f, window(c, den, p, *hd, L)));
    return Laurent(v, q.coeffs());
}

// ---------------------------------------------------------------------------
// FunctionSpace

RationalFunction FunctionSpace::basis_function(std::size_t i) const
{
    return {num_.at(i), H0_};
}

RationalFunction FunctionSpace::function(std::span<const Element> coeffs) const
{
    if (coeffs.size() != dim())
        throw DimensionMismatch("coefficient vector does not match the space dimension");
    const Field& f = curve_->field();
    Form g(f, H0_.degree());
    for (std::size_t i = 0; i < dim(); ++i)
        if (!coeffs[i].is_zero())
            g = poly::add(g, poly::scale(num_[i], coeffs[i]));
    return {std::move(g), H0_};
}

std::vector<Laurent> FunctionSpace::basis_series(std::size_t p, int E) const
{
    {
        std::lock_guard lock(mu_);
        const auto it = memo_.find(p);
        if (it != memo_.end() && it->second.first >= E) {
            std::vector<Laurent> out;
            out.reserve(it->second.second.size());
            for (const auto& s : it->second.second)
                out.push_back(s.truncated(E));
            return out;
        }
    }
    const PlaneCurve& c = *curve_;
    const Field& f = c.field();
    const int h = H0div_[p];
    // Every numerator vanishes to order >= h - A_p at p.
    const int s = std::max(0, h - A_[p]);
    const int L = E + h - s;
    std::vector<Laurent> out;
    out.reserve(dim());
    if (L <= 0) {
        out.assign(dim(), Laurent(E, {}));
    } else {
        const Laurent dinv = series::inverse(f, window(c, H0_, p, h, L));
        if (dinv.start() != 0)
            throw InvariantViolation("denominator order at a point disagrees with its divisor");
        for (const auto& g : num_) {
            const Laurent q = series::mul(f, window(c, g, p, s, L), dinv);
            out.emplace_back(s - h, q.coeffs());
        }
    }
    std::lock_guard lock(mu_);
    auto& slot = memo_[p];
    if (slot.second.empty() || slot.first < E)
        slot = {E, out};
    return out;
}

Laurent combine(const Field& f, std::span<const Laurent> basis, std::span<const Element> coeffs, int E)
{
    if (coeffs.size() != basis.size())
        throw DimensionMismatch("coefficient vector does not match the basis");
    int start = E;
    for (const auto& b : basis)
        start = std::min(start, b.start());
    Laurent acc = Laurent::zero(start, E);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (coeffs[i].is_zero())
            continue;
        const Laurent& b = basis[i];
        const int s = b.start();
        const int top = std::min(E, b.precision());
        if (top < E)
            throw PrecisionExhausted("basis series shorter than requested");
        f.axpy(std::span<Element>(acc.coeffs().data() + (s - start), static_cast<std::size_t>(std::max(0, top - s))),
               coeffs[i], std::span<const Element>(b.coeffs().data(), static_cast<std::size_t>(std::max(0, top - s))));
    }
    return acc;
}

Laurent FunctionSpace::series(std::span<const Element> coeffs, std::size_t p, int E) const
{
    if (coeffs.size() != dim())
        throw DimensionMismatch("coefficient vector does not match the space dimension");
    const auto bs = basis_series(p, E);
    return combine(curve_->field(), bs, coeffs, E);
}

Matrix FunctionSpace::evaluation_matrix(std::span<const std::size_t> points) const
{
    Matrix m(curve_->field(), dim(), points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
        const auto bs = basis_series(points[j], 1);
        for (std::size_t i = 0; i < bs.size(); ++i) {
            for (int k = bs[i].start(); k < 0; ++k)
                if (!bs[i].coeff(k).is_zero())
                    throw PoleOnD("basis function " + std::to_string(i) + " has a pole at " +
                                  curve_->point_string(points[j]));
            m(i, j) = bs[i].coeff(0);
        }
    }
    return m;
}

namespace {

struct Ambient {
    Form H0;
    Divisor div;
};

// Product of rational lines whose divisor dominates A+, chosen greedily by
// covered deficit (ties to the earlier line).
Ambient line_cover(const PlaneCurve& c, const Divisor& Aplus)
{
    const Field& f = c.field();
    const auto& lines = c.rational_lines();
    Ambient amb{Form::constant(f, Field::one()), {}};
    Divisor deficit = Aplus;
    while (!deficit.is_zero()) {
        int best = 0;
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            int cover = 0;
            for (const auto& [p, k] : deficit.terms())
                cover += std::min(k, lines[i].divisor[p]);
            if (cover > best) {
                best = cover;
                best_i = i;
            }
        }
        if (best == 0)
            throw UnsupportedDivisor("no rational line through " + c.point_string(deficit.support().front()));
        const auto& line = lines[best_i];
        Divisor next;
        for (const auto& [p, k] : deficit.terms())
            next.set(p, std::max(0, k - line.divisor[p]));
        deficit = next;
        amb.H0 = poly::mul(amb.H0, line.form);
        amb.div += line.divisor;
    }
    return amb;
}

// Forms of degree m over numerators in amb, subject to the vanishing
// conditions of L(A).
std::vector<Form> interpolate(const PlaneCurve& c, const Divisor& A, const Ambient& amb)
{
    const Field& f = c.field();
    const int m = amb.H0.degree();
    const auto lead = c.equation().leading();
    const Form shape(f, m);
    std::vector<Monomial> mons;
    for (std::size_t idx = 0; idx < Form::count(m); ++idx) {
        const Monomial mo = shape.monomial_at(idx);
        if (mo.a >= lead->a && mo.b >= lead->b && mo.c >= lead->c)
            continue;
        mons.push_back(mo);
    }
    std::vector<Form> monforms;
    monforms.reserve(mons.size());
    for (const auto& mo : mons)
        monforms.push_back(Form::monomial(f, Field::one(), mo));

    std::set<std::size_t> pts;
    for (const auto& [p, k] : amb.div.terms())
        pts.insert(p);
    for (const auto& [p, k] : A.terms())
        pts.insert(p);
    std::vector<Vector> rows;
    for (const std::size_t p : pts) {
        const int e = amb.div[p] - A[p];
        if (e <= 0)
            continue;
        std::vector<Laurent> ser;
        ser.reserve(mons.size());
        for (const auto& g : monforms)
            ser.push_back(c.form_series(g, p, e));
        for (int k = 0; k < e; ++k) {
            Vector row(mons.size());
            for (std::size_t j = 0; j < mons.size(); ++j)
                row[j] = ser[j].coeff(k);
            rows.push_back(std::move(row));
        }
    }
    linalg::Subspace sol = rows.empty() ? linalg::Subspace::full(f, mons.size())
                                        : linalg::kernel(Matrix::from_rows(f, rows, mons.size()));
    std::vector<Form> out;
    out.reserve(sol.dim());
    for (std::size_t i = 0; i < sol.dim(); ++i) {
        Form g(f, m);
        const auto v = sol.vector(i);
        for (std::size_t j = 0; j < mons.size(); ++j)
            if (!v[j].is_zero())
                g.set(mons[j], v[j]);
        out.push_back(std::move(g));
    }
    return out;
}

bool riemann_roch_consistent(const PlaneCurve& c, const Divisor& A, std::size_t dim)
{
    const int deg = A.degree();
    const int g = c.genus();
    const long l = static_cast<long>(dim);
    if (deg > 2 * g - 2)
        return l == deg + 1 - g;
    return l >= deg + 1 - g && l <= deg + 1;
}

} // namespace

SpacePtr rr_space(const CurvePtr& c, const Divisor& A)
{
    for (const auto& [p, k] : A.terms())
        if (p >= c->points().size())
            throw UnsupportedDivisor("divisor refers to point index " + std::to_string(p) + " not on the curve");
    std::shared_ptr<FunctionSpace> sp(new FunctionSpace());
    sp->curve_ = c;
    sp->A_ = A;
    const Field& f = c->field();
    if (A.degree() < 0) {
        sp->H0_ = Form::constant(f, Field::one());
        return sp;
    }
    Ambient amb = line_cover(*c, A.positive_part());
    for (int attempt = 0; attempt < 2; ++attempt) {
        auto nums = interpolate(*c, A, amb);
        if (riemann_roch_consistent(*c, A, nums.size())) {
            sp->H0_ = std::move(amb.H0);
            sp->H0div_ = std::move(amb.div);
            sp->num_ = std::move(nums);
            return sp;
        }
        amb.H0 = poly::mul(amb.H0, Form::variable(f, 2));
        amb.div += c->z_line_divisor();
    }
    throw AmbientTooSmall("interpolation dimension disagrees with Riemann-Roch for " + c->divisor_string(A));
}

SpacePtr SpaceCache::get(const Divisor& A) const
{
    {
        std::lock_guard lock(mu_);
        const auto it = spaces_.find(A);
        if (it != spaces_.end())
            return it->second;
    }
    auto sp = rr_space(curve_, A);
    std::lock_guard lock(mu_);
    return spaces_.emplace(A, std::move(sp)).first->second;
}

// ---------------------------------------------------------------------------
// Frames

std::size_t Frame::size() const noexcept
{
    std::size_t n = 0;
    for (const int l : length)
        n += static_cast<std::size_t>(l);
    return n;
}

Vector Frame::fingerprint(const Field&, std::span<const Laurent> series) const
{
    if (series.size() != anchors.size())
        throw DimensionMismatch("one series per anchor expected");
    Vector v;
    v.reserve(size());
    for (std::size_t i = 0; i < anchors.size(); ++i)
        for (int k = lower[i]; k < precision(i); ++k)
            v.push_back(series[i].coeff(k));
    return v;
}

Frame make_frame(std::vector<std::size_t> anchors, const Divisor& A_max, int budget)
{
    if (anchors.empty())
        throw InvariantViolation("frame needs at least one anchor");
    Frame fr;
    const int k = static_cast<int>(anchors.size());
    const int per = (std::max(budget, 1) + k - 1) / k;
    for (const std::size_t p : anchors) {
        fr.lower.push_back(-A_max[p]);
        fr.length.push_back(per);
    }
    fr.anchors = std::move(anchors);
    return fr;
}

Vector fingerprint_of(const PlaneCurve& c, const Frame& frame, const RationalFunction& fn)
{
    std::vector<Laurent> s;
    for (std::size_t i = 0; i < frame.anchors.size(); ++i)
        s.push_back(function_series(c, fn, frame.anchors[i], frame.precision(i)));
    return frame.fingerprint(c.field(), s);
}

FramedSpace::FramedSpace(SpacePtr space, Frame frame) : space_(std::move(space)), frame_(std::move(frame))
{
    const Field& f = space_->curve()->field();
    const std::size_t dim = space_->dim();
    std::vector<std::vector<Laurent>> per_anchor;
    for (std::size_t i = 0; i < frame_.anchors.size(); ++i)
        per_anchor.push_back(space_->basis_series(frame_.anchors[i], frame_.precision(i)));
    M_ = Matrix(f, dim, frame_.size());
    for (std::size_t b = 0; b < dim; ++b) {
        std::vector<Laurent> s;
        for (auto& pa : per_anchor)
            s.push_back(pa[b]);
        const Vector fp = frame_.fingerprint(f, s);
        std::copy(fp.begin(), fp.end(), M_.row(b).begin());
    }
    auto ech = linalg::rref(M_);
    if (ech.rank() != dim)
        throw InvariantViolation("fingerprint frame is not injective on L(" +
                                 space_->curve()->divisor_string(space_->divisor()) + ")");
    piv_ = std::move(ech.pivots);
    inv_ = dim == 0 ? Matrix(f, 0, 0) : linalg::inverse(M_.select_cols(piv_));
}

std::optional<Vector> FramedSpace::try_coordinates(std::span<const Element> fp) const
{
    if (fp.size() != M_.cols())
        throw DimensionMismatch("fingerprint length does not match the frame");
    Vector sel(piv_.size());
    for (std::size_t i = 0; i < piv_.size(); ++i)
        sel[i] = fp[piv_[i]];
    Vector x = dim() == 0 ? Vector{} : inv_.apply_left(sel);
    const Vector back = dim() == 0 ? Vector(M_.cols()) : M_.apply_left(x);
    for (std::size_t j = 0; j < fp.size(); ++j)
        if (back[j] != fp[j])
            return std::nullopt;
    return x;
}

Vector FramedSpace::coordinates(std::span<const Element> fp) const
{
    auto x = try_coordinates(fp);
    if (!x)
        throw NotInSpace("function is not in L(" + space_->curve()->divisor_string(space_->divisor()) + ")");
    return *x;
}

// ---------------------------------------------------------------------------
// DifferentialContext

DifferentialContext::DifferentialContext(CurvePtr c, std::vector<std::size_t> D, Divisor G, std::size_t P_inf,
                                         std::optional<Divisor> G_star, std::size_t anchor_count)
    : curve_(std::move(c)), D_(std::move(D)), G_(std::move(G)), P_inf_(P_inf)
{
    const PlaneCurve& cv = *curve_;
    const int g = cv.genus();
    const std::size_t npts = cv.points().size();
    if (P_inf_ >= npts)
        throw UnsupportedDivisor("P_inf is not a point of the curve");
    for (const std::size_t p : D_) {
        if (p >= npts)
            throw UnsupportedDivisor("D refers to a point not on the curve");
        if (Ddiv_[p] != 0)
            throw UnsupportedDivisor("D repeats " + cv.point_string(p));
        Ddiv_.set(p, 1);
        if (G_[p] != 0)
            throw SupportOverlap(cv.point_string(p) + " is in both D and supp G");
    }
    const int n = static_cast<int>(D_.size());
    if (!(2 * g - 2 < G_.degree() && G_.degree() < n + g))
        throw BadDivisorRange("deg G = " + std::to_string(G_.degree()) + " outside (2g-2, n+g)");

    K_ = (cv.degree() - 3) * cv.z_line_divisor();
    if (K_.degree() != 2 * g - 2)
        throw InvariantViolation("deg K != 2g - 2");
    if (cv.equation().derivative(1).is_zero())
        throw UnsupportedCurve("f_y vanishes identically; x is not a separating variable");

    cache_ = std::make_unique<SpaceCache>(curve_);
    Gs_ = G_star ? *G_star : Divisor::point(P_inf_, -1);
    for (const std::size_t p : D_)
        if (Gs_[p] != 0)
            throw SupportOverlap("G* meets D at " + cv.point_string(p));
    if (!(Gs_ <= G_))
        throw UnsupportedDivisor("G* is not below G");
    if (cache_->get(Gs_)->dim() != 0)
        throw UnsupportedDivisor("L(G*) is nonzero");

    for (std::size_t p = 0; p < npts && anchors_.size() < anchor_count; ++p)
        if (Ddiv_[p] == 0 && G_[p] == 0 && p != P_inf_)
            anchors_.push_back(p);
    for (std::size_t i = 0; i < D_.size() && anchors_.size() < anchor_count; ++i)
        anchors_.push_back(D_[i]);

    Uamb_ = cache_->get(K_ + Ddiv_ - Gs_);
    const std::size_t dim = Uamb_->dim();
    Res_ = Matrix(field(), D_.size(), dim);
    for (std::size_t j = 0; j < D_.size(); ++j) {
        const auto bs = Uamb_->basis_series(D_[j], -K_[D_[j]]);
        for (std::size_t i = 0; i < dim; ++i)
            Res_(j, i) = residue(bs[i], D_[j]);
    }
    auto ech = linalg::rref(Res_);
    if (ech.rank() != D_.size())
        throw InvariantViolation("residue map on L(K+D-G*) has rank " + std::to_string(ech.rank()) + " < n");
    Upiv_ = ech.pivots;
    Rinv_ = linalg::inverse(Res_.select_cols(Upiv_));
}

Vector DifferentialContext::h_coeffs(std::span<const Element> y) const
{
    if (y.size() != n())
        throw LengthMismatch("word length " + std::to_string(y.size()) + " != n = " + std::to_string(n()));
    const Vector u = Rinv_.apply(y);
    Vector c(Uamb_->dim());
    for (std::size_t i = 0; i < Upiv_.size(); ++i)
        c[Upiv_[i]] = u[i];
    return c;
}

RationalFunction DifferentialContext::h_from_word(std::span<const Element> y) const
{
    const Vector c = h_coeffs(y);
    return Uamb_->function(c);
}

Laurent DifferentialContext::eta_series(std::size_t p, int E) const
{
    {
        std::lock_guard lock(mu_);
        const auto it = eta_memo_.find(p);
        if (it != eta_memo_.end() && it->second.precision() >= E)
            return it->second.truncated(E);
    }
    const PlaneCurve& cv = *curve_;
    const Field& f = cv.field();
    const int Kp = K_[p];
    const int L = E - Kp;
    if (L <= 0)
        return Laurent(E, {});
    const Form Fy = cv.equation().derivative(1);
    const auto hF = cv.form_order(Fy, p);
    if (!hF)
        throw UnsupportedCurve("f_y vanishes on the curve");
    // eta/dt = Z^(d-3) (Z X' - X Z') / F_Y in any chart.
    const int N = *hF + Kp + L;
    const auto ex = cv.local_expansion(p, N + 1);
    auto trunc = [N](const Laurent& s) { return s.truncated(N); };
    Laurent num = series::sub(f, series::mul(f, trunc(ex->Z), trunc(ex->dX)),
                              series::mul(f, trunc(ex->X), trunc(ex->dZ)));
    for (int i = 0; i < cv.degree() - 3; ++i)
        num = series::mul(f, num, trunc(ex->Z));
    const int lead = *hF + Kp;
    for (int k = 0; k < lead; ++k)
        if (!num.coeff(k).is_zero())
            throw InvariantViolation("eta has lower order than K at " + cv.point_string(p));
    Laurent numw(0, std::vector<Element>(num.coeffs().begin() + lead, num.coeffs().begin() + lead + L));
    const Laurent q = series::mul(f, numw, series::inverse(f, window(cv, Fy, p, *hF, L)));
    if (q.coeffs().empty() || q.coeffs()[0].is_zero())
        throw InvariantViolation("eta has higher order than K at " + cv.point_string(p));
    Laurent out(Kp, q.coeffs());
    std::lock_guard lock(mu_);
    auto it = eta_memo_.find(p);
    if (it == eta_memo_.end() || it->second.precision() < out.precision())
        eta_memo_[p] = out;
    return out;
}

Element DifferentialContext::residue(const Laurent& h, std::size_t p) const
{
    const Field& f = field();
    const int Kp = K_[p];
    // Only h_i with i <= -1 - K_p meet eta.
    const int top = -1 - Kp;
    if (h.start() > top)
        return Field::zero();
    if (h.precision() <= top)
        throw PrecisionExhausted("series too short for the residue at " + curve_->point_string(p));
    const Laurent eta = eta_series(p, -h.start());
    Element acc{};
    for (int i = h.start(); i <= top; ++i) {
        const Element hi = h.coeff(i);
        if (!hi.is_zero())
            acc = f.add(acc, f.mul(hi, eta.coeff(-1 - i)));
    }
    return acc;
}

Element DifferentialContext::residue(const RationalFunction& fn, std::size_t p) const
{
    return residue(function_series(*curve_, fn, p, -K_[p]), p);
}

Vector DifferentialContext::residues_on_D(const RationalFunction& fn) const
{
    Vector r(n());
    for (std::size_t j = 0; j < n(); ++j)
        r[j] = residue(fn, D_[j]);
    return r;
}

Frame DifferentialContext::frame_for(const Divisor& A_max) const
{
    const int budget = 2 * A_max.positive_part().degree() + 4 * curve_->genus();
    return make_frame(anchors_, A_max, budget);
}

// ---------------------------------------------------------------------------
// SpaceDecomposition

SpaceDecomposition::SpaceDecomposition(const DifferentialContext& ctx, const Divisor& G, const Divisor& F)
    : G_(G), F_(F)
{
    const int g = ctx.plane().genus();
    if ((G - F).degree() <= 2 * g - 2)
        throw BadDivisorRange("deg(G - F) must exceed 2g - 2");
    const Field& f = ctx.field();
    const Divisor base = ctx.K() + F;
    const Divisor bigdiv = base + ctx.D_divisor() - ctx.G_star();
    const Frame frame = ctx.frame_for(bigdiv);
    big_ = std::make_unique<FramedSpace>(ctx.spaces().get(bigdiv), frame);
    Q_ = std::make_unique<FramedSpace>(ctx.spaces().get(base + ctx.D_divisor() - G), frame);
    R_ = std::make_unique<FramedSpace>(ctx.spaces().get(base - ctx.G_star()), frame);

    const std::size_t N = big_->dim();
    T_ = Matrix(f, 0, N);
    for (const FramedSpace* s : {Q_.get(), R_.get()})
        for (std::size_t i = 0; i < s->dim(); ++i)
            T_.append_row(big_->coordinates(s->fingerprints().row(i)));
    const auto QR = linalg::Subspace::span(T_);
    if (QR.dim() != T_.rows())
        throw DegenerateDecomposition("L(K+F+D-G) and L(K+F-G*) intersect");
    const auto W = linalg::complement_in(QR, linalg::Subspace::full(f, N));
    dimW_ = W.dim();
    for (std::size_t i = 0; i < dimW_; ++i)
        T_.append_row(W.basis().row(i));
    Tinv_ = N == 0 ? Matrix(f, 0, 0) : linalg::inverse(T_);
}

Vector SpaceDecomposition::split(std::span<const Element> big_coords) const
{
    if (big_coords.size() != big_->dim())
        throw DimensionMismatch("coordinate vector does not match the big space");
    return big_->dim() == 0 ? Vector{} : Tinv_.apply_left(big_coords);
}

Vector SpaceDecomposition::split_fingerprint(std::span<const Element> fp) const
{
    return split(big_->coordinates(fp));
}

Matrix SpaceDecomposition::projector(int b) const
{
    const Field& f = big_->space()->curve()->field();
    const std::size_t N = big_->dim();
    std::size_t lo = 0, hi = dim_Q();
    if (b == 1) {
        lo = dim_Q();
        hi = lo + dim_R();
    } else if (b == 2) {
        lo = dim_Q() + dim_R();
        hi = N;
    }
    Matrix P(f, N, N);
    for (std::size_t j = lo; j < hi; ++j)
        for (std::size_t r = 0; r < N; ++r) {
            const Element a = Tinv_(r, j);
            if (!a.is_zero())
                f.axpy(P.row(r), a, T_.row(j));
        }
    return P;
}

Vector multiply_into(const DifferentialContext& ctx, const RationalFunction& fa, const RationalFunction& hb,
                     const FramedSpace& target)
{
    const PlaneCurve& cv = ctx.plane();
    const Field& f = cv.field();
    const Frame& fr = target.frame();
    std::vector<Laurent> prod;
    for (std::size_t i = 0; i < fr.anchors.size(); ++i) {
        const std::size_t p = fr.anchors[i];
        const int E = fr.precision(i);
        const auto vf = function_valuation(cv, fa.num, fa.den, p);
        const auto vh = function_valuation(cv, hb.num, hb.den, p);
        if (!vf || !vh) {
            prod.emplace_back(E, std::vector<Element>{});
            continue;
        }
        const Laurent sf = function_series(cv, fa, p, E - *vh);
        const Laurent sh = function_series(cv, hb, p, E - *vf);
        prod.push_back(series::mul(f, sf, sh));
    }
    return target.coordinates(fr.fingerprint(f, prod));
}

} // namespace agkey::funcspace
