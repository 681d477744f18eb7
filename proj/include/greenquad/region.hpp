#pragma once

// Region file format, validation, orientation, and NURBS Bezier extraction.

#include "errors.hpp"
#include "geometry.hpp"
#include "greens.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace greenquad {

constexpr double kChainTolerance = 1e-9;

struct ParseOptions {
    bool allow_nonpositive_weights = false; // Spectral-only use
    bool fix_orientation = false;           // computed orientation overrides the declared flag
};

/// CCW iff the loop's Green's-theorem signed area is positive.
inline Orientation loop_orientation(const BoundaryLoop& loop) {
    if (loop.curves.empty()) throw ArgumentError("loop_orientation: loop has no curves");
    Region single{{loop}};
    // Spectral rule: needs no pole extraction, so it also works for mixed-sign weights.
    const auto rule = build_rule(single, RuleConfig::spectral(48, 1));
    const double area = integrate(rule, [](double, double) { return 1.0; });
    const double box_area = bounding_box(single).area();
    if (!(std::abs(area) >= 1e-12 * box_area) || box_area == 0.0)
        throw DegenerateLoopError("loop encloses (numerically) zero area: " + std::to_string(area));
    return area > 0 ? Orientation::CCW : Orientation::CW;
}

/// Largest gap between consecutive curve endpoints, cyclically.
inline double chain_gap(const BoundaryLoop& loop) {
    double gap = 0.0;
    for (std::size_t i = 0; i < loop.curves.size(); ++i) {
        const auto& next = loop.curves[(i + 1) % loop.curves.size()];
        gap = std::max(gap, distance(loop.curves[i].end(), next.start()));
    }
    return gap;
}

/// Chaining, weight-sign and orientation checks; may rewrite orientation flags when fixing.
inline void validate_region(Region& region, const ParseOptions& options = {}) {
    if (region.loops.empty()) throw ValidationError("region has no boundary loops");
    for (std::size_t li = 0; li < region.loops.size(); ++li) {
        auto& loop = region.loops[li];
        const std::string where = "loop " + std::to_string(li);
        if (loop.curves.empty()) throw ValidationError(where + " has no curves");
        const double gap = chain_gap(loop);
        if (gap > kChainTolerance)
            throw ValidationError(where + " is not closed: endpoint gap " + std::to_string(gap) +
                                  " exceeds tolerance " + std::to_string(kChainTolerance));
        if (!options.allow_nonpositive_weights) {
            for (std::size_t ci = 0; ci < loop.curves.size(); ++ci)
                for (double w : loop.curves[ci].control_weights())
                    if (!(w > 0.0))
                        throw ValidationError(where + ", curve " + std::to_string(ci) +
                                              ": control weights must be positive");
        }
        Orientation computed;
        try {
            computed = loop_orientation(loop);
        } catch (const NumericalError& e) {
            throw ValidationError(where + ": " + e.what());
        }
        if (computed != loop.orientation) {
            if (!options.fix_orientation)
                throw ValidationError(where + " is declared " + to_string(loop.orientation) +
                                      " but its boundary runs " + to_string(computed));
            loop.orientation = computed;
        }
    }
}

namespace detail {

inline double json_number(const nlohmann::json& j, const std::string& what) {
    if (!j.is_number()) throw ValidationError(what + " must be a number");
    return j.get<double>();
}

inline std::vector<Point2> json_points(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + " must be an array of [x, y] pairs");
    std::vector<Point2> pts;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2) throw ValidationError(what + " entries must be [x, y] pairs");
        pts.push_back({json_number(p[0], what), json_number(p[1], what)});
    }
    return pts;
}

inline std::vector<double> json_numbers(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(json_number(v, what));
    return out;
}

inline nlohmann::json parse_json(std::string_view text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

inline RationalBezierCurve json_curve(const nlohmann::json& c, const std::string& where) {
    if (!c.is_object()) throw ValidationError(where + " must be an object");
    if (!c.contains("degree") || !c.contains("points") || !c.contains("weights"))
        throw ValidationError(where + " needs \"degree\", \"points\" and \"weights\"");
    if (!c["degree"].is_number_integer()) throw ValidationError(where + ": degree must be an integer");
    const int degree = c["degree"].get<int>();
    auto pts = json_points(c["points"], where + ".points");
    auto ws = json_numbers(c["weights"], where + ".weights");
    if (degree < 1 || static_cast<int>(pts.size()) != degree + 1 || static_cast<int>(ws.size()) != degree + 1)
        throw ValidationError(where + ": degree " + std::to_string(degree) + " needs " +
                              std::to_string(degree + 1) + " points and weights");
    try {
        return RationalBezierCurve(std::move(pts), std::move(ws));
    } catch (const ArgumentError& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

} // namespace detail

/// Parses and validates a region document.
inline Region parse_region(std::string_view text, const ParseOptions& options = {}) {
    const auto doc = detail::parse_json(text);
    if (!doc.is_object() || !doc.contains("loops") || !doc["loops"].is_array())
        throw ValidationError("region file needs a top-level \"loops\" array");

    Region region;
    for (std::size_t li = 0; li < doc["loops"].size(); ++li) {
        const auto& l = doc["loops"][li];
        const std::string where = "loops[" + std::to_string(li) + "]";
        if (!l.is_object() || !l.contains("curves") || !l["curves"].is_array())
            throw ValidationError(where + " needs a \"curves\" array");
        BoundaryLoop loop;
        const std::string orient = l.value("orientation", std::string("ccw"));
        if (orient == "ccw") loop.orientation = Orientation::CCW;
        else if (orient == "cw") loop.orientation = Orientation::CW;
        else throw ValidationError(where + ": orientation must be \"ccw\" or \"cw\"");
        for (std::size_t ci = 0; ci < l["curves"].size(); ++ci)
            loop.curves.push_back(
                detail::json_curve(l["curves"][ci], where + ".curves[" + std::to_string(ci) + "]"));
        region.loops.push_back(std::move(loop));
    }
    validate_region(region, options);
    return region;
}

inline nlohmann::json to_json(const Region& region) {
    nlohmann::json loops = nlohmann::json::array();
    for (const auto& loop : region.loops) {
        nlohmann::json curves = nlohmann::json::array();
        for (const auto& c : loop.curves) {
            nlohmann::json pts = nlohmann::json::array();
            for (const auto& p : c.control_points()) pts.push_back({p.x, p.y});
            nlohmann::json ws(std::vector<double>(c.control_weights().begin(), c.control_weights().end()));
            curves.push_back({{"degree", c.degree()}, {"points", pts}, {"weights", ws}});
        }
        loops.push_back({{"orientation", to_string(loop.orientation)}, {"curves", curves}});
    }
    return {{"loops", loops}};
}

/// Region document; numbers use shortest round-trip formatting.
inline std::string serialize_region(const Region& region) { return to_json(region).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// NURBS
// ---------------------------------------------------------------------------

struct NurbsCurve {
    int degree = 0;
    std::vector<double> knots;
    std::vector<Point2> control_points;
    std::vector<double> weights;
};

inline std::vector<NurbsCurve> parse_nurbs(std::string_view text) {
    const auto doc = detail::parse_json(text);
    std::vector<nlohmann::json> items;
    if (doc.is_array()) items.assign(doc.begin(), doc.end());
    else if (doc.is_object() && doc.contains("curves") && doc["curves"].is_array())
        items.assign(doc["curves"].begin(), doc["curves"].end());
    else items.push_back(doc);

    std::vector<NurbsCurve> out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& c = items[i];
        const std::string where = "nurbs[" + std::to_string(i) + "]";
        if (!c.is_object() || !c.contains("degree") || !c.contains("knots") || !c.contains("points") ||
            !c.contains("weights"))
            throw ValidationError(where + " needs \"degree\", \"knots\", \"points\" and \"weights\"");
        if (!c["degree"].is_number_integer()) throw ValidationError(where + ": degree must be an integer");
        out.push_back({c["degree"].get<int>(), detail::json_numbers(c["knots"], where + ".knots"),
                       detail::json_points(c["points"], where + ".points"),
                       detail::json_numbers(c["weights"], where + ".weights")});
    }
    return out;
}

/**
 * Splits a clamped NURBS curve into one rational Bezier curve per nonzero knot
 * span: every interior knot is raised to multiplicity `degree` by single knot
 * insertions on the homogeneous control points, then the control polygon is
 * sliced every `degree` points.
 */
inline std::vector<RationalBezierCurve> nurbs_extract(const NurbsCurve& nurbs) {
    const int p = nurbs.degree;
    if (p < 1) throw ArgumentError("nurbs_extract: degree must be >= 1");
    const auto& U0 = nurbs.knots;
    const std::size_t ncp = nurbs.control_points.size();
    if (nurbs.weights.size() != ncp) throw ArgumentError("nurbs_extract: points and weights differ in length");
    if (U0.size() != ncp + p + 1)
        throw ArgumentError("nurbs_extract: need |knots| = |points| + degree + 1");
    if (!std::is_sorted(U0.begin(), U0.end())) throw ArgumentError("nurbs_extract: knots must be nondecreasing");
    for (int i = 0; i <= p; ++i)
        if (U0[i] != U0.front() || U0[U0.size() - 1 - i] != U0.back())
            throw UnsupportedInputError("nurbs_extract: knot vector must be clamped (end multiplicity degree+1)");
    if (!(U0.front() < U0.back())) throw ArgumentError("nurbs_extract: knot vector has zero length");

    struct H {
        double x, y, w;
    };
    std::vector<H> cp(ncp);
    for (std::size_t i = 0; i < ncp; ++i) {
        const double w = nurbs.weights[i];
        cp[i] = {w * nurbs.control_points[i].x, w * nurbs.control_points[i].y, w};
    }
    std::vector<double> U = U0;

    std::vector<double> interior;
    for (std::size_t i = p + 1; i + p + 1 < U.size(); ++i)
        if (interior.empty() || interior.back() != U[i]) interior.push_back(U[i]);

    for (double u : interior) {
        for (;;) {
            const int mult = static_cast<int>(std::count(U.begin(), U.end(), u));
            if (mult > p) throw UnsupportedInputError("nurbs_extract: interior knot multiplicity exceeds degree");
            if (mult == p) break;
            // span k with U[k] <= u < U[k+1]
            const int k = static_cast<int>(std::upper_bound(U.begin(), U.end(), u) - U.begin()) - 1;
            std::vector<H> next(cp.size() + 1);
            for (int i = 0; i <= k - p; ++i) next[i] = cp[i];
            for (int i = k - p + 1; i <= k - mult; ++i) {
                const double alpha = (u - U[i]) / (U[i + p] - U[i]);
                next[i] = {alpha * cp[i].x + (1 - alpha) * cp[i - 1].x, alpha * cp[i].y + (1 - alpha) * cp[i - 1].y,
                           alpha * cp[i].w + (1 - alpha) * cp[i - 1].w};
            }
            for (std::size_t i = k - mult + 1; i < next.size(); ++i) next[i] = cp[i - 1];
            cp = std::move(next);
            U.insert(U.begin() + k + 1, u);
        }
    }

    const std::size_t spans = interior.size() + 1;
    if (cp.size() != spans * p + 1) throw NumericalError("nurbs_extract: unexpected control point count");
    std::vector<RationalBezierCurve> out;
    for (std::size_t s = 0; s < spans; ++s) {
        std::vector<Point2> pts;
        std::vector<double> ws;
        for (int j = 0; j <= p; ++j) {
            const H& h = cp[s * p + j];
            pts.push_back({h.x / h.w, h.y / h.w});
            ws.push_back(h.w);
        }
        out.emplace_back(std::move(pts), std::move(ws));
    }
    return out;
}

} // namespace greenquad
