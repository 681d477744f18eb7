#pragma once

/**
 * @file geometry.hpp
 * @brief Rational Bernstein-Bezier curves and the region data model.
 *
 * A curve of degree m is
 *
 *     c(s) = sum_j w_j P_j B_j^m(s) / sum_j w_j B_j^m(s),   s in [0, 1]
 *
 * with B_j^m(s) = C(m,j) s^j (1-s)^(m-j). Evaluation runs de Casteljau on the
 * homogeneous control points (w_j x_j, w_j y_j, w_j) and divides once at the end.
 */

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace greenquad {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Ascending monomial coefficients a_0 + a_1 s + ... + a_m s^m.
struct PolynomialMonomial {
    std::vector<double> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }

    double operator()(double s) const {
        double acc = 0.0;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
            acc = acc * s + *it;
        return acc;
    }

    /// Drops trailing coefficients with |a_j| <= rel_tol * max|a|. Always keeps a_0.
    PolynomialMonomial trimmed(double rel_tol = 1e-14) const {
        double scale = 0.0;
        for (double c : coefficients) scale = std::max(scale, std::abs(c));
        std::vector<double> out = coefficients;
        while (out.size() > 1 && std::abs(out.back()) <= rel_tol * scale) out.pop_back();
        return {std::move(out)};
    }
};

/// Bernstein coefficients on [0, 1]; degree is size - 1.
struct PolynomialBernstein {
    std::vector<double> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }

    double operator()(double s) const {
        std::vector<double> work = coefficients;
        const double t = 1.0 - s;
        for (std::size_t r = 1; r < work.size(); ++r)
            for (std::size_t j = 0; j + r < work.size(); ++j)
                work[j] = t * work[j] + s * work[j + 1];
        return work.empty() ? 0.0 : work.front();
    }
};

namespace detail {

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double result = 1.0;
    for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
    return std::round(result);
}

// In-place de Casteljau on `count` interleaved homogeneous triples.
inline void de_casteljau(std::vector<double>& hx, std::vector<double>& hy, std::vector<double>& hw,
                         double s) {
    const double t = 1.0 - s;
    const std::size_t n = hw.size();
    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t j = 0; j + r < n; ++j) {
            hx[j] = t * hx[j] + s * hx[j + 1];
            hy[j] = t * hy[j] + s * hy[j + 1];
            hw[j] = t * hw[j] + s * hw[j + 1];
        }
    }
}

} // namespace detail

/// B_j^m(s) = C(m,j) s^j (1-s)^(m-j).
inline double bernstein_basis(int m, int j, double s) {
    if (m < 0 || j < 0 || j > m)
        throw ArgumentError("bernstein_basis: index j=" + std::to_string(j) + " out of range for degree " +
                            std::to_string(m));
    return detail::binomial(m, j) * std::pow(s, j) * std::pow(1.0 - s, m - j);
}

constexpr double kDenominatorTolerance = 1e-14;
constexpr int kMaxConversionDegree = 30;

class RationalBezierCurve {
public:
    RationalBezierCurve() = default;

    RationalBezierCurve(std::vector<Point2> control_points, std::vector<double> control_weights)
        : points_(std::move(control_points)), weights_(std::move(control_weights)) {
        if (points_.size() < 2)
            throw ArgumentError("rational Bezier curve needs degree >= 1 (at least two control points)");
        if (points_.size() != weights_.size())
            throw ArgumentError("rational Bezier curve: " + std::to_string(points_.size()) +
                                " control points but " + std::to_string(weights_.size()) + " weights");
        for (double w : weights_)
            if (!std::isfinite(w) || w == 0.0)
                throw ArgumentError("rational Bezier curve: control weights must be finite and nonzero");
        for (const auto& p : points_)
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw ArgumentError("rational Bezier curve: control points must be finite");
    }

    /// Polynomial curve (all weights one).
    explicit RationalBezierCurve(std::vector<Point2> control_points)
        : RationalBezierCurve(control_points, std::vector<double>(control_points.size(), 1.0)) {}

    int degree() const { return static_cast<int>(points_.size()) - 1; }
    std::span<const Point2> control_points() const { return points_; }
    std::span<const double> control_weights() const { return weights_; }

    Point2 start() const { return points_.front(); }
    Point2 end() const { return points_.back(); }

    bool is_polynomial() const {
        return std::all_of(weights_.begin(), weights_.end(), [&](double w) { return w == weights_.front(); });
    }

    /// Same trace, opposite direction.
    RationalBezierCurve reversed() const {
        return {std::vector<Point2>(points_.rbegin(), points_.rend()),
                std::vector<double>(weights_.rbegin(), weights_.rend())};
    }

    RationalBezierCurve translated(double dx, double dy) const {
        auto pts = points_;
        for (auto& p : pts) {
            p.x += dx;
            p.y += dy;
        }
        return {std::move(pts), weights_};
    }

    friend bool operator==(const RationalBezierCurve&, const RationalBezierCurve&) = default;

private:
    std::vector<Point2> points_;
    std::vector<double> weights_;
};

inline Point2 eval_curve(const RationalBezierCurve& curve, double s) {
    const auto pts = curve.control_points();
    if (s == 0.0) return pts.front();
    if (s == 1.0) return pts.back();

    const auto w = curve.control_weights();
    std::vector<double> hx(pts.size()), hy(pts.size()), hw(w.begin(), w.end());
    for (std::size_t j = 0; j < pts.size(); ++j) {
        hx[j] = w[j] * pts[j].x;
        hy[j] = w[j] * pts[j].y;
    }
    detail::de_casteljau(hx, hy, hw, s);
    if (std::abs(hw[0]) < kDenominatorTolerance)
        throw PoleOnIntervalError("curve denominator vanishes at s=" + std::to_string(s));
    return {hx[0] / hw[0], hy[0] / hw[0]};
}

struct CurveDerivative {
    double dx_ds = 0.0;
    double dy_ds = 0.0;
};

/// Quotient rule on the homogeneous numerator/denominator and their hodographs.
inline CurveDerivative eval_derivative(const RationalBezierCurve& curve, double s) {
    const auto pts = curve.control_points();
    const auto w = curve.control_weights();
    const std::size_t n = pts.size();
    const int m = curve.degree();

    std::vector<double> hx(n), hy(n), hw(w.begin(), w.end());
    for (std::size_t j = 0; j < n; ++j) {
        hx[j] = w[j] * pts[j].x;
        hy[j] = w[j] * pts[j].y;
    }
    std::vector<double> dx(n - 1), dy(n - 1), dw(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        dx[j] = m * (hx[j + 1] - hx[j]);
        dy[j] = m * (hy[j + 1] - hy[j]);
        dw[j] = m * (hw[j + 1] - hw[j]);
    }
    detail::de_casteljau(hx, hy, hw, s);
    detail::de_casteljau(dx, dy, dw, s);

    const double den = hw[0];
    if (std::abs(den) < kDenominatorTolerance)
        throw PoleOnIntervalError("curve denominator vanishes at s=" + std::to_string(s));
    const double den2 = den * den;
    return {(dx[0] * den - hx[0] * dw[0]) / den2, (dy[0] * den - hy[0] * dw[0]) / den2};
}

inline PolynomialBernstein weight_polynomial(const RationalBezierCurve& curve) {
    const auto w = curve.control_weights();
    return {std::vector<double>(w.begin(), w.end())};
}

/// a_k = sum_{j<=k} b_j C(m,j) C(m-j,k-j) (-1)^(k-j).
inline PolynomialMonomial bernstein_to_monomial(const PolynomialBernstein& p) {
    const int m = p.degree();
    if (m > kMaxConversionDegree)
        throw ConditioningError("Bernstein-to-monomial conversion refused for degree " + std::to_string(m) +
                                " (limit " + std::to_string(kMaxConversionDegree) + ")");
    std::vector<double> a(m + 1, 0.0);
    for (int k = 0; k <= m; ++k) {
        double acc = 0.0;
        for (int j = 0; j <= k; ++j) {
            const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
            acc += sign * p.coefficients[j] * detail::binomial(m, j) * detail::binomial(m - j, k - j);
        }
        a[k] = acc;
    }
    return {std::move(a)};
}

/// b_j = sum_{k<=j} C(j,k) / C(m,k) a_k.
inline PolynomialBernstein monomial_to_bernstein(const PolynomialMonomial& p) {
    const int m = p.degree();
    if (m > kMaxConversionDegree)
        throw ConditioningError("monomial-to-Bernstein conversion refused for degree " + std::to_string(m) +
                                " (limit " + std::to_string(kMaxConversionDegree) + ")");
    std::vector<double> b(m + 1, 0.0);
    for (int j = 0; j <= m; ++j) {
        double acc = 0.0;
        for (int k = 0; k <= j; ++k) acc += detail::binomial(j, k) / detail::binomial(m, k) * p.coefficients[k];
        b[j] = acc;
    }
    return {std::move(b)};
}

// ---------------------------------------------------------------------------
// Region model
// ---------------------------------------------------------------------------

enum class Orientation { CCW, CW };

inline const char* to_string(Orientation o) { return o == Orientation::CCW ? "ccw" : "cw"; }

inline Orientation flipped(Orientation o) { return o == Orientation::CCW ? Orientation::CW : Orientation::CCW; }

struct BoundaryLoop {
    std::vector<RationalBezierCurve> curves;
    Orientation orientation = Orientation::CCW;

    /// Curve order and parameter direction both reversed; the flag flips with them.
    BoundaryLoop reversed() const {
        BoundaryLoop out;
        out.orientation = flipped(orientation);
        for (auto it = curves.rbegin(); it != curves.rend(); ++it) out.curves.push_back(it->reversed());
        return out;
    }
};

struct Region {
    std::vector<BoundaryLoop> loops;

    std::size_t curve_count() const {
        std::size_t n = 0;
        for (const auto& loop : loops) n += loop.curves.size();
        return n;
    }

    bool empty() const { return curve_count() == 0; }

    /// Visits every curve in loop order with its region-global index.
    template <class F>
    void for_each_curve(F&& visit) const {
        std::size_t index = 0;
        for (const auto& loop : loops)
            for (const auto& curve : loop.curves) visit(index++, curve);
    }

    Region translated(double dx, double dy) const {
        Region out = *this;
        for (auto& loop : out.loops)
            for (auto& curve : loop.curves) curve = curve.translated(dx, dy);
        return out;
    }

    Region reversed() const {
        Region out;
        for (const auto& loop : loops) out.loops.push_back(loop.reversed());
        return out;
    }
};

struct BoundingBox {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }

    bool contains(const Point2& p, double inflate = 0.0) const {
        return p.x >= x_min - inflate && p.x <= x_max + inflate && p.y >= y_min - inflate &&
               p.y <= y_max + inflate;
    }

    bool overlaps(const BoundingBox& o) const {
        return x_min <= o.x_max && o.x_min <= x_max && y_min <= o.y_max && o.y_min <= y_max;
    }
};

inline BoundingBox bounding_box(const RationalBezierCurve& curve) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    BoundingBox box{inf, -inf, inf, -inf};
    for (const auto& p : curve.control_points()) {
        box.x_min = std::min(box.x_min, p.x);
        box.x_max = std::max(box.x_max, p.x);
        box.y_min = std::min(box.y_min, p.y);
        box.y_max = std::max(box.y_max, p.y);
    }
    return box;
}

/// Bounding box of every control point of every curve in the region.
inline BoundingBox bounding_box(const Region& region) {
    if (region.empty()) throw ArgumentError("bounding_box: region has no curves");
    constexpr double inf = std::numeric_limits<double>::infinity();
    BoundingBox box{inf, -inf, inf, -inf};
    region.for_each_curve([&](std::size_t, const RationalBezierCurve& c) {
        const auto b = bounding_box(c);
        box.x_min = std::min(box.x_min, b.x_min);
        box.x_max = std::max(box.x_max, b.x_max);
        box.y_min = std::min(box.y_min, b.y_min);
        box.y_max = std::max(box.y_max, b.y_max);
    });
    return box;
}

} // namespace greenquad
