#pragma once

// Test fixtures and oracles that do not share code paths with the library's rules.

#include <greenquad/geometry.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace greenquad::testing {

inline const double kHalfSqrt2 = std::sqrt(2.0) / 2.0;

/// The four quadratic quadrant arcs of a circle, counter-clockwise from (cx + r, cy).
inline BoundaryLoop circle_loop(double cx = 0.0, double cy = 0.0, double r = 1.0) {
    const std::array<std::array<Point2, 3>, 4> quads{{{{{1, 0}, {1, 1}, {0, 1}}},
                                                      {{{0, 1}, {-1, 1}, {-1, 0}}},
                                                      {{{-1, 0}, {-1, -1}, {0, -1}}},
                                                      {{{0, -1}, {1, -1}, {1, 0}}}}};
    BoundaryLoop loop;
    loop.orientation = Orientation::CCW;
    for (const auto& q : quads) {
        std::vector<Point2> pts;
        for (const auto& p : q) pts.push_back({cx + r * p.x, cy + r * p.y});
        loop.curves.emplace_back(std::move(pts), std::vector<double>{1.0, kHalfSqrt2, 1.0});
    }
    return loop;
}

inline Region unit_circle() { return Region{{circle_loop()}}; }

inline Region circle(double cx, double cy, double r = 1.0) { return Region{{circle_loop(cx, cy, r)}}; }

/// Outer radius-1 CCW circle with a radius-0.5 CW hole, both centred at (cx, cy).
inline Region annulus(double cx = 0.0, double cy = 0.0, double inner_cx = 0.0, double inner_cy = 0.0) {
    return Region{{circle_loop(cx, cy, 1.0), circle_loop(cx + inner_cx, cy + inner_cy, 0.5).reversed()}};
}

/// Closed loop of `n` rational cubic arcs following r(t) = 1 + 0.2 cos(5t).
inline Region flower(int n = 46) {
    auto radius = [](double t) { return 1.0 + 0.2 * std::cos(5.0 * t); };
    auto point = [&](double t) { return Point2{radius(t) * std::cos(t), radius(t) * std::sin(t)}; };
    auto tangent = [&](double t) {
        const double r = radius(t), dr = -std::sin(5.0 * t);
        return Point2{dr * std::cos(t) - r * std::sin(t), dr * std::sin(t) + r * std::cos(t)};
    };
    BoundaryLoop loop;
    const double dt = 2.0 * std::numbers::pi / n;
    std::vector<Point2> ends;
    for (int i = 0; i < n; ++i) ends.push_back(point(i * dt));
    for (int i = 0; i < n; ++i) {
        const double t0 = i * dt, t1 = (i + 1) * dt;
        const Point2 a = ends[i], b = ends[(i + 1) % n];
        const Point2 ta = tangent(t0), tb = tangent(t1);
        std::vector<Point2> pts{a,
                                {a.x + ta.x * dt / 3, a.y + ta.y * dt / 3},
                                {b.x - tb.x * dt / 3, b.y - tb.y * dt / 3},
                                b};
        const double bump = 0.15 * std::sin(3.0 * i);
        loop.curves.emplace_back(std::move(pts), std::vector<double>{1.0, 1.0 + bump, 1.0 - 0.5 * bump, 1.0});
    }
    return Region{{loop}};
}

/// int over the unit disk of x^a y^b by polar separation.
inline double unit_disk_moment(int a, int b) {
    if (a % 2 == 1 || b % 2 == 1) return 0.0;
    const double angular = 2.0 * std::tgamma((a + 1) / 2.0) * std::tgamma((b + 1) / 2.0) / std::tgamma((a + b + 2) / 2.0);
    return angular / (a + b + 2);
}

inline double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// int over the disk centred (cx, cy) with radius r of x^a y^b.
inline double disk_moment(int a, int b, double cx, double cy, double r) {
    double acc = 0.0;
    for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j)
            acc += binom(a, i) * binom(b, j) * std::pow(cx, a - i) * std::pow(cy, b - j) * std::pow(r, i + j + 2) *
                   unit_disk_moment(i, j);
    return acc;
}

/// Adaptive Gauss-Kronrod (7/15) with the standard QUADPACK abscissae.
inline double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double tol = 1e-14,
                            int depth = 0) {
    static constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                     0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double kronrod = wgk[7] * fc, gauss = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double f1 = f(c - h * xgk[i]), f2 = f(c + h * xgk[i]);
        kronrod += wgk[i] * (f1 + f2);
        if (i % 2 == 1) gauss += wg[i / 2] * (f1 + f2);
    }
    kronrod *= h;
    gauss *= h;
    if (std::abs(kronrod - gauss) <= tol * std::max(1.0, std::abs(kronrod)) || depth > 40) return kronrod;
    return gauss_kronrod(f, a, c, tol, depth + 1) + gauss_kronrod(f, c, b, tol, depth + 1);
}

/// Rational B-spline evaluation by de Boor on homogeneous points (clamped knots).
inline Point2 nurbs_point(int p, const std::vector<double>& U, const std::vector<Point2>& pts,
                          const std::vector<double>& w, double u) {
    const int n = static_cast<int>(pts.size()) - 1;
    int k = p;
    if (u >= U[n + 1]) k = n;
    else
        while (!(U[k] <= u && u < U[k + 1])) ++k;
    std::vector<std::array<double, 3>> d(p + 1);
    for (int j = 0; j <= p; ++j) {
        const int i = j + k - p;
        d[j] = {w[i] * pts[i].x, w[i] * pts[i].y, w[i]};
    }
    for (int r = 1; r <= p; ++r)
        for (int j = p; j >= r; --j) {
            const int i = j + k - p;
            const double alpha = (u - U[i]) / (U[i + p - r + 1] - U[i]);
            for (int c = 0; c < 3; ++c) d[j][c] = (1 - alpha) * d[j - 1][c] + alpha * d[j][c];
        }
    return {d[p][0] / d[p][2], d[p][1] / d[p][2]};
}

/// Least-squares slope of log(err) against log(n).
inline double loglog_slope(const std::vector<double>& n, const std::vector<double>& err) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
        const double lx = std::log(n[i]), ly = std::log(err[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

inline std::string data_path(const std::string& name) { return std::string(GREENQUAD_DATA_DIR) + "/" + name; }

} // namespace greenquad::testing
