// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

// Smooth projective plane curves over GF(q), their rational points,
// divisors supported on those points, and power-series expansions at them.
//
// Every rational point P lies in one standard chart: z = 1 when z != 0,
// else y = 1, else x = 1. In that chart the curve is f(u, v) = 0 with
// (u, v) = (x, y), (x, z) or (y, z). The local parameter is t = u - u(P)
// when df/dv(P) != 0 and t = v - v(P) otherwise; the other coordinate is
// developed as a power series in t by Newton iteration.

#pragma once

#include "agkey/gf.hpp"
#include "agkey/poly.hpp"
#include "agkey/series.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace agkey::curve {

using gf::Element;
using gf::Field;
using gf::FieldPtr;
using poly::Form;
using series::Laurent;

// Which homogeneous coordinate is set to 1.
enum class Chart { Z, Y, X };

struct ProjectivePoint {
    Element x, y, z;

    Chart chart() const noexcept { return !z.is_zero() ? Chart::Z : !y.is_zero() ? Chart::Y : Chart::X; }
    friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
};

// Scales so that the last nonzero coordinate is 1. Throws InvariantViolation
// on (0:0:0).
ProjectivePoint normalize(const Field& f, Element x, Element y, Element z);
// "(x:y:z)" with 1 printed as "1" and other entries as a^k.
std::string format_point(const Field& f, const ProjectivePoint& p);

// Formal sum of rational points, keyed by the point's index in
// PlaneCurve::points(). Zero coefficients are never stored.
class Divisor {
public:
    Divisor() = default;
    static Divisor point(std::size_t p, int k = 1);

    int operator[](std::size_t p) const;
    void add(std::size_t p, int k);
    void set(std::size_t p, int k);

    const std::map<std::size_t, int>& terms() const noexcept { return c_; }
    std::vector<std::size_t> support() const;
    int degree() const noexcept;
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_effective() const noexcept;
    Divisor positive_part() const;
    Divisor negative_part() const; // as an effective divisor

    Divisor& operator+=(const Divisor& o);
    Divisor& operator-=(const Divisor& o);
    friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
    friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
    friend Divisor operator*(int k, const Divisor& a);
    // Coefficientwise comparison.
    friend bool operator<=(const Divisor& a, const Divisor& b);
    friend bool operator>=(const Divisor& a, const Divisor& b) { return b <= a; }
    friend bool operator==(const Divisor&, const Divisor&) = default;
    // Total order for use as a map key.
    friend bool operator<(const Divisor& a, const Divisor& b) { return a.c_ < b.c_; }

private:
    std::map<std::size_t, int> c_;
};

struct LocalExpansion {
    std::size_t point = 0;
    Chart chart = Chart::Z;
    bool param_is_u = true;
    int precision = 0; // coordinates are known mod t^precision
    Laurent u, v;       // chart coordinates
    Laurent X, Y, Z;    // homogeneous coordinates, the chart one is 1
    Laurent dX, dY, dZ; // derivatives in t, known mod t^(precision-1)
};

class PlaneCurve {
public:
    // Throws NotHomogeneous, UnsupportedCurve (degree < 3), SingularCurve.
    static std::shared_ptr<const PlaneCurve> make(FieldPtr field, Form equation);
    // Skips the smoothness search; for callers that already know the curve.
    static std::shared_ptr<const PlaneCurve> make_unchecked(FieldPtr field, Form equation);

    const Field& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    const Form& equation() const noexcept { return F_; }
    int degree() const noexcept { return F_.degree(); }
    int genus() const noexcept { return (degree() - 1) * (degree() - 2) / 2; }

    // Pinned order: (x:y:1) with x outer and y inner in Field::enumerate()
    // order, then (x:1:0), then (1:0:0).
    const std::vector<ProjectivePoint>& points() const noexcept { return points_; }
    std::size_t num_affine() const noexcept { return num_affine_; }
    std::optional<std::size_t> index_of(const ProjectivePoint& p) const;
    // Throws NotOnCurve.
    std::size_t index_checked(const ProjectivePoint& p) const;

    ProjectivePoint parse_point(std::string_view text) const;
    std::string point_string(std::size_t p) const;
    std::string divisor_string(const Divisor& d) const;

    // Throws PrecisionTooSmall for N < 1.
    std::shared_ptr<const LocalExpansion> local_expansion(std::size_t p, int N) const;

    // G restricted to the curve near P, dehomogenized in P's chart, mod t^N.
    Laurent form_series(const Form& G, std::size_t p, int N) const;
    // ord_P(G); nullopt when G vanishes on the curve.
    std::optional<int> form_order(const Form& G, std::size_t p) const;
    // Rational part of the intersection divisor of {G = 0} with the curve.
    Divisor intersection_divisor(const Form& G) const;

    // Intersection divisor of {Z = 0}; throws NonRationalIntersection when
    // some intersection point is not rational.
    const Divisor& z_line_divisor() const;

    struct Line {
        Form form;
        Divisor divisor; // degree == degree()
    };
    // Lines over GF(q) meeting the curve only in rational points, Z = 0
    // first, then by the coefficient vector in point order.
    const std::vector<Line>& rational_lines() const;

private:
    PlaneCurve(FieldPtr field, Form equation);
    void check_smooth() const;

    struct PowerCache {
        int precision = 0;
        // pow[e] = w(t)^e mod t^precision for the implicit chart coordinate w.
        std::vector<std::vector<Element>> pow;
    };
    std::shared_ptr<const PowerCache> powers(std::size_t p, int N, int max_exp) const;
    std::shared_ptr<const LocalExpansion> compute_expansion(std::size_t p, int N,
                                                            const LocalExpansion* seed) const;

    FieldPtr field_;
    Form F_;
    std::vector<ProjectivePoint> points_;
    std::size_t num_affine_ = 0;
    std::map<std::uint64_t, std::size_t> index_; // packed coordinates -> index

    mutable std::mutex mu_;
    mutable std::vector<std::shared_ptr<const LocalExpansion>> expansions_;
    mutable std::vector<std::shared_ptr<const PowerCache>> power_cache_;
    mutable std::optional<Divisor> z_line_;
    mutable std::optional<std::vector<Line>> lines_;
};

using CurvePtr = std::shared_ptr<const PlaneCurve>;

} // namespace agkey::curve
