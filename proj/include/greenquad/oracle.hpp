#pragma once

/**
 * @file oracle.hpp
 * @brief Independent reference integrators used for validation.
 *
 * reference_integral is the Spectral rule at P = Q = 55. quadtree_integral is
 * a deliberately low-order baseline: uniform subdivision of the control-point
 * bounding box wherever a flattened boundary passes, tensor Gauss on cells the
 * boundary misses, and the same Gauss rule masked by the winding number on
 * boundary cells at the maximum depth. Its error decays roughly linearly in
 * the cell size.
 */

#include "errors.hpp"
#include "geometry.hpp"
#include "greens.hpp"
#include "quad1d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace greenquad {

enum class OracleMethod { HighOrderReference, Quadtree };

struct OracleConfig {
    OracleMethod method = OracleMethod::Quadtree;
    int reference_order = 55;
    int max_depth = 10;
    int cell_order = 2; // points per direction of the tensor Gauss rule on interior cells

    void validate() const {
        if (method == OracleMethod::HighOrderReference && reference_order < 40)
            throw ArgumentError("reference_order must be >= 40");
        if (max_depth < 0 || max_depth > 14) throw ArgumentError("max_depth must lie in [0, 14]");
        if (cell_order < 1) throw ArgumentError("cell_order must be >= 1");
    }
};

inline double reference_integral(const Region& region, const Integrand& f, int order = 55) {
    if (order < 40) throw ArgumentError("reference_integral: order must be >= 40");
    return integrate(build_rule(region, RuleConfig::spectral(order, order)), f);
}

constexpr double kBoundaryProximity = 1e-9;

namespace detail {

inline double segment_distance(const Point2& p, const Point2& a, const Point2& b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double len2 = vx * vx + vy * vy;
    double t = len2 > 0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

// Angle swept by the curve piece [s0, s1] as seen from p, refined where it turns fast.
inline double swept_angle(const RationalBezierCurve& curve, const Point2& p, double s0, const Point2& a, double s1,
                          const Point2& b, int depth) {
    if (segment_distance(p, a, b) < kBoundaryProximity)
        throw BoundaryProximityError("point lies on the region boundary");
    const double ax = a.x - p.x, ay = a.y - p.y, bx = b.x - p.x, by = b.y - p.y;
    const double delta = std::atan2(ax * by - ay * bx, ax * bx + ay * by);
    if (std::abs(delta) <= std::numbers::pi / 8 || depth >= 30) return delta;
    const double sm = 0.5 * (s0 + s1);
    const Point2 m = eval_curve(curve, sm);
    return swept_angle(curve, p, s0, a, sm, m, depth + 1) + swept_angle(curve, p, sm, m, s1, b, depth + 1);
}

} // namespace detail

/// Winding number of the whole boundary around p; outer CCW loops count +1, CW holes -1.
inline int winding_number(const Region& region, const Point2& p) {
    constexpr int samples = 64;
    double total = 0.0;
    region.for_each_curve([&](std::size_t, const RationalBezierCurve& curve) {
        double s_prev = 0.0;
        Point2 prev = curve.start();
        for (int j = 1; j <= samples; ++j) {
            const double s = static_cast<double>(j) / samples;
            const Point2 cur = eval_curve(curve, s);
            total += detail::swept_angle(curve, p, s_prev, prev, s, cur, 0);
            s_prev = s;
            prev = cur;
        }
    });
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

struct QuadtreeResult {
    double value = 0.0;
    std::size_t cell_count = 0;  // leaf cells that contributed or were tested at max depth
    std::size_t point_count = 0; // integrand evaluations
};

namespace detail {

struct Segment {
    Point2 a, b;
};

inline void flatten(const RationalBezierCurve& c, double s0, const Point2& a, double s1, const Point2& b,
                    double tol, int depth, std::vector<Segment>& out) {
    const double sm = 0.5 * (s0 + s1);
    const Point2 m = eval_curve(c, sm);
    if (depth >= 24 || segment_distance(m, a, b) <= tol) {
        out.push_back({a, m});
        out.push_back({m, b});
        return;
    }
    flatten(c, s0, a, sm, m, tol, depth + 1, out);
    flatten(c, sm, m, s1, b, tol, depth + 1, out);
}

inline bool segment_hits_box(const Segment& s, const BoundingBox& box) {
    const BoundingBox sb{std::min(s.a.x, s.b.x), std::max(s.a.x, s.b.x), std::min(s.a.y, s.b.y),
                         std::max(s.a.y, s.b.y)};
    if (!sb.overlaps(box)) return false;
    const double nx = s.b.y - s.a.y, ny = s.a.x - s.b.x;
    const std::array<Point2, 4> corners{{{box.x_min, box.y_min}, {box.x_max, box.y_min},
                                         {box.x_min, box.y_max}, {box.x_max, box.y_max}}};
    bool pos = false, neg = false;
    for (const auto& c : corners) {
        const double side = nx * (c.x - s.a.x) + ny * (c.y - s.a.y);
        if (side >= 0) pos = true;
        if (side <= 0) neg = true;
    }
    return pos && neg;
}

class Quadtree {
public:
    Quadtree(const Region& region, const Integrand& f, const OracleConfig& cfg)
        : region_(region), f_(f), cfg_(cfg), gauss_(gauss_legendre(cfg.cell_order, -1.0, 1.0)) {
        const auto box = bounding_box(region);
        const double size = std::max(box.width(), box.height());
        margin_ = 1e-7 * size;
        region.for_each_curve([&](std::size_t, const RationalBezierCurve& c) {
            constexpr int pieces = 16;
            for (int j = 0; j < pieces; ++j) {
                const double s0 = static_cast<double>(j) / pieces, s1 = static_cast<double>(j + 1) / pieces;
                flatten(c, s0, eval_curve(c, s0), s1, eval_curve(c, s1), margin_ * 0.5, 0, segments_);
            }
        });
    }

    QuadtreeResult run() {
        const auto box = bounding_box(region_);
        std::vector<std::size_t> all(segments_.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        visit(box, 0, all);
        return result_;
    }

private:
    // Winding number with up to three 1e-8 jitters; nullopt if all attempts touch the boundary.
    std::optional<int> robust_winding(Point2 p) const {
        constexpr std::array<std::array<double, 2>, 4> offsets{{{0, 0}, {1e-8, 0}, {0, 1e-8}, {-1e-8, -1e-8}}};
        for (const auto& o : offsets) {
            try {
                return winding_number(region_, {p.x + o[0], p.y + o[1]});
            } catch (const BoundaryProximityError&) {
            }
        }
        return std::nullopt;
    }

    void visit(const BoundingBox& box, int depth, const std::vector<std::size_t>& candidates) {
        const BoundingBox grown{box.x_min - margin_, box.x_max + margin_, box.y_min - margin_, box.y_max + margin_};
        std::vector<std::size_t> hits;
        for (std::size_t i : candidates)
            if (segment_hits_box(segments_[i], grown)) hits.push_back(i);

        const Point2 center{0.5 * (box.x_min + box.x_max), 0.5 * (box.y_min + box.y_max)};
        if (hits.empty()) {
            const auto w = robust_winding(center);
            if (!w || *w == 0) return;
            const double hx = 0.5 * box.width(), hy = 0.5 * box.height();
            double acc = 0.0;
            for (std::size_t i = 0; i < gauss_.size(); ++i)
                for (std::size_t j = 0; j < gauss_.size(); ++j)
                    acc += gauss_.weights[i] * gauss_.weights[j] *
                           f_(center.x + hx * gauss_.nodes[i], center.y + hy * gauss_.nodes[j]);
            result_.value += *w * acc * hx * hy;
            result_.cell_count += 1;
            result_.point_count += gauss_.size() * gauss_.size();
            return;
        }
        if (depth < cfg_.max_depth) {
            const double xm = center.x, ym = center.y;
            visit({box.x_min, xm, box.y_min, ym}, depth + 1, hits);
            visit({xm, box.x_max, box.y_min, ym}, depth + 1, hits);
            visit({box.x_min, xm, ym, box.y_max}, depth + 1, hits);
            visit({xm, box.x_max, ym, box.y_max}, depth + 1, hits);
            return;
        }
        // Boundary leaf: cell Gauss rule with the winding number as indicator.
        const double hx = 0.5 * box.width(), hy = 0.5 * box.height();
        result_.cell_count += 1;
        for (std::size_t i = 0; i < gauss_.size(); ++i)
            for (std::size_t j = 0; j < gauss_.size(); ++j) {
                const Point2 at{center.x + hx * gauss_.nodes[i], center.y + hy * gauss_.nodes[j]};
                result_.point_count += 1;
                if (const auto w = robust_winding(at); w && *w != 0)
                    result_.value += *w * gauss_.weights[i] * gauss_.weights[j] * f_(at.x, at.y) * hx * hy;
            }
    }

    const Region& region_;
    const Integrand& f_;
    OracleConfig cfg_;
    Rule1D gauss_;
    double margin_ = 0.0;
    std::vector<Segment> segments_;
    QuadtreeResult result_;
};

} // namespace detail

inline QuadtreeResult quadtree_integral(const Region& region, const Integrand& f, const OracleConfig& cfg = {}) {
    cfg.validate();
    if (region.empty()) throw ArgumentError("quadtree_integral: region has no curves");
    return detail::Quadtree(region, f, cfg).run();
}

} // namespace greenquad
