#pragma once

/**
 * @file greens.hpp
 * @brief Spectral and SpectralPE quadrature rules for regions bounded by rational curves.
 *
 * Green's theorem turns the area integral into boundary line integrals of the
 * y-antiderivative A_f(x, y) = int_C^y f(x, t) dt:
 *
 *     int_Omega f dA = - sum_i int_0^1 A_f(x_i(s), y_i(s)) x_i'(s) ds
 *
 * for counter-clockwise loops. Each line integral is discretised by an
 * intermediate rule in s (Gauss for Spectral, rational-exact for SpectralPE)
 * and A_f by a Gauss rule in t on [C, y_i(s_q)]. The 2D weight of point
 * (x_i(s_q), t_z) is -gamma_q * gamma_z * x_i'(s_q).
 */

#include "errors.hpp"
#include "geometry.hpp"
#include "polyroots.hpp"
#include "quad1d.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace greenquad {

enum class Mode { Spectral, SpectralPE };

inline const char* to_string(Mode m) { return m == Mode::Spectral ? "spectral" : "spectralpe"; }

struct RuleConfig {
    Mode mode = Mode::SpectralPE;
    int k = 0; // declared polynomial degree (SpectralPE)
    int Q = 0; // intermediate points per curve (Spectral)
    int P = 0; // antiderivative points; 0 selects the mode default
    int l = 0; // extra rational-rule degree (SpectralPE)

    static RuleConfig spectral(int q, int p = 0) { return {Mode::Spectral, 0, q, p, 0}; }
    static RuleConfig spectral_pe(int k, int l = 0, int p = 0) { return {Mode::SpectralPE, k, 0, p, l}; }

    /// P = Q in Spectral mode, P = ceil((k+1)/2) in SpectralPE mode unless set explicitly.
    int antiderivative_points() const {
        if (P > 0) return P;
        return mode == Mode::Spectral ? Q : (k + 2) / 2;
    }

    void validate() const {
        if (mode == Mode::Spectral && Q < 1) throw ArgumentError("Spectral mode requires Q >= 1");
        if (mode == Mode::SpectralPE && k < 0) throw ArgumentError("SpectralPE mode requires k >= 0");
        if (P < 0) throw ArgumentError("P must be >= 1 (or 0 for the default)");
        if (l < 0) throw ArgumentError("l must be >= 0");
    }
};

struct Provenance {
    std::size_t curve = 0;
    std::size_t q = 0;
    std::size_t zeta = 0;
};

struct Rule2D {
    std::vector<Point2> points;
    std::vector<double> weights;
    std::vector<Provenance> provenance;
    double reference_level = 0.0;

    std::size_t size() const { return points.size(); }
};

struct Integrand {
    std::function<double(double, double)> evaluate;
    std::optional<int> polynomial_degree;

    double operator()(double x, double y) const { return evaluate(x, y); }
};

/// Lowest control-point y over the whole region.
inline double choose_reference_level(const Region& region) { return bounding_box(region).y_min; }

/// Predicted SpectralPE point count ceil((k+1)/2) * sum_i (m_i (k+3) + 1).
inline std::size_t predicted_point_count(std::span<const int> curve_degrees, int k) {
    std::size_t per_curve = 0;
    for (int m : curve_degrees) per_curve += static_cast<std::size_t>(m * (k + 3) + 1);
    return static_cast<std::size_t>((k + 2) / 2) * per_curve;
}

inline std::size_t predicted_point_count(const Region& region, int k) {
    std::vector<int> degrees;
    region.for_each_curve([&](std::size_t, const RationalBezierCurve& c) { degrees.push_back(c.degree()); });
    return predicted_point_count(degrees, k);
}

/**
 * Intermediate rule on [0, 1] for one curve.
 *
 * SpectralPE uses the curve poles with multiplicity scaled by k+3 and always
 * produces m(k+3) + l + 1 nodes. When the weight polynomial loses degree in
 * the monomial basis (roots at infinity), the missing count goes to the
 * polynomial part of the test space; a polynomial curve gets a Gauss rule of
 * the same size.
 */
inline Rule1D intermediate_rule(const RationalBezierCurve& curve, const RuleConfig& config) {
    config.validate();
    if (config.mode == Mode::Spectral) return gauss_legendre(config.Q, 0.0, 1.0);

    const int n = curve.degree() * (config.k + 3) + config.l + 1;
    const auto poles = curve_poles(curve);
    if (poles.empty()) return gauss_legendre(n, 0.0, 1.0);
    const auto scaled = multiply_multiplicity(poles, config.k + 3);
    return rational_rule(scaled, config.l + scaled.roots_at_infinity);
}

/// Gauss rule for int_C^{y_top} g(t) dt; weights are negated when y_top < C.
inline Rule1D antiderivative_rule(double y_top, double C, int P) {
    if (P < 1) throw ArgumentError("antiderivative_rule: P must be >= 1");
    if (y_top == C) return Rule1D{{}, {}, C, y_top};
    const double lo = std::min(C, y_top), hi = std::max(C, y_top);
    Rule1D rule = gauss_legendre(P, lo, hi);
    if (y_top < C)
        for (double& w : rule.weights) w = -w;
    rule.a = C;
    rule.b = y_top;
    return rule;
}

inline Rule2D build_rule(const Region& region, const RuleConfig& config) {
    config.validate();
    if (region.empty()) throw ArgumentError("build_rule: region has no curves");
    const int P = config.antiderivative_points();

    Rule2D rule;
    rule.reference_level = choose_reference_level(region);
    const double C = rule.reference_level;

    region.for_each_curve([&](std::size_t ci, const RationalBezierCurve& curve) {
        const Rule1D inter = intermediate_rule(curve, config);
        for (std::size_t q = 0; q < inter.size(); ++q) {
            const double s = inter.nodes[q];
            const Point2 at = eval_curve(curve, s);
            const double dx_ds = eval_derivative(curve, s).dx_ds;
            const Rule1D anti = antiderivative_rule(at.y, C, P);
            for (std::size_t z = 0; z < anti.size(); ++z) {
                rule.points.push_back({at.x, anti.nodes[z]});
                rule.weights.push_back(-inter.weights[q] * anti.weights[z] * dx_ds);
                rule.provenance.push_back({ci, q, z});
            }
        }
    });
    return rule;
}

namespace detail {

inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        double acc = 0.0;
        for (double x : v) acc += x;
        return acc;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

} // namespace detail

/// sum_l w_l f(x_l, y_l) with pairwise summation.
template <class F>
double integrate(const Rule2D& rule, F&& f) {
    std::vector<double> terms(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const auto& p = rule.points[i];
        const double v = f(p.x, p.y);
        if (!std::isfinite(v))
            throw EvaluationError("integrand is not finite at node " + std::to_string(i) + " (" +
                                  std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
        terms[i] = rule.weights[i] * v;
    }
    return detail::pairwise_sum(terms);
}

inline double integrate(const Rule2D& rule, const Integrand& f) { return integrate(rule, f.evaluate); }

/// Signed area: positive for counter-clockwise outer loops, holes subtract.
inline double signed_area(const Region& region) {
    const auto rule = build_rule(region, RuleConfig::spectral_pe(0));
    return integrate(rule, [](double, double) { return 1.0; });
}

} // namespace greenquad
