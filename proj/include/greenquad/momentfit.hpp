#pragma once

// Monomial moments from SpectralPE rules and moment fitting of weights at prescribed points.

#include "errors.hpp"
#include "geometry.hpp"
#include "greens.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <utility>
#include <vector>

namespace greenquad {

/// Integrals of x^a y^b, a + b <= k, in graded-lexicographic order: 1, x, y, x^2, xy, y^2, ...
struct MomentVector {
    int k = 0;
    std::vector<double> values;

    static std::size_t size_for(int k) { return static_cast<std::size_t>((k + 1) * (k + 2) / 2); }

    /// Exponent pairs (a, b) in storage order.
    static std::vector<std::pair<int, int>> exponents(int k) {
        std::vector<std::pair<int, int>> out;
        for (int d = 0; d <= k; ++d)
            for (int a = d; a >= 0; --a) out.emplace_back(a, d - a);
        return out;
    }

    double at(int a, int b) const {
        const int d = a + b;
        return values.at(static_cast<std::size_t>(d * (d + 1) / 2 + b));
    }
};

inline MomentVector monomial_moments(const Region& region, int k) {
    if (k < 0) throw ArgumentError("monomial_moments: k must be >= 0");
    const auto rule = build_rule(region, RuleConfig::spectral_pe(k));
    MomentVector out{k, {}};
    for (const auto& [a, b] : MomentVector::exponents(k))
        out.values.push_back(integrate(rule, [a = a, b = b](double x, double y) {
            return std::pow(x, a) * std::pow(y, b);
        }));
    return out;
}

struct FitResult {
    std::vector<double> weights;
    double residual = 0.0; // ||V w - moments||_2
};

constexpr double kFitTolerance = 1e-10;

/// Minimum-norm weights reproducing `moments` at `points`.
inline FitResult fit_weights(const std::vector<Point2>& points, const MomentVector& moments) {
    const auto exps = MomentVector::exponents(moments.k);
    if (moments.values.size() != exps.size())
        throw ArgumentError("fit_weights: moment vector has the wrong length for its degree");
    if (points.size() < exps.size())
        throw ArgumentError("fit_weights: need at least as many points as moments (" + std::to_string(exps.size()) +
                            ")");

    const Eigen::Index rows = static_cast<Eigen::Index>(exps.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd V(rows, cols);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto [a, b] = exps[r];
        for (Eigen::Index c = 0; c < cols; ++c) V(r, c) = std::pow(points[c].x, a) * std::pow(points[c].y, b);
        rhs(r) = moments.values[r];
    }

    // Row equilibration leaves the solution set of a consistent system unchanged.
    Eigen::VectorXd scale = V.rowwise().norm();
    for (Eigen::Index r = 0; r < rows; ++r)
        if (scale(r) == 0.0) scale(r) = 1.0;
    const Eigen::MatrixXd Vs = scale.cwiseInverse().asDiagonal() * V;
    const Eigen::VectorXd rs = scale.cwiseInverse().asDiagonal() * rhs;

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Vs);
    const Eigen::VectorXd w = cod.solve(rs);

    FitResult out;
    out.weights.assign(w.data(), w.data() + w.size());
    out.residual = (V * w - rhs).norm();
    if (!(out.residual <= kFitTolerance * std::max(rhs.norm(), 1e-300)))
        throw FitError("fit_weights: moment system not satisfied (rank deficient?)", out.residual);
    return out;
}

struct GeometricSummary {
    double area = 0.0;
    Point2 centroid;
    // Central second moments: [[int (x-cx)^2, int (x-cx)(y-cy)], [.., int (y-cy)^2]].
    double ixx = 0.0;
    double ixy = 0.0;
    double iyy = 0.0;
};

inline GeometricSummary geometric_summary(const Region& region) {
    const auto m = monomial_moments(region, 2);
    GeometricSummary g;
    g.area = m.at(0, 0);
    if (!(g.area > 0.0))
        throw OrientationError("geometric_summary: nonpositive area " + std::to_string(g.area) +
                               "; check loop orientations (outer loops must be counter-clockwise)");
    g.centroid = {m.at(1, 0) / g.area, m.at(0, 1) / g.area};
    g.ixx = m.at(2, 0) - g.area * g.centroid.x * g.centroid.x;
    g.ixy = m.at(1, 1) - g.area * g.centroid.x * g.centroid.y;
    g.iyy = m.at(0, 2) - g.area * g.centroid.y * g.centroid.y;
    return g;
}

} // namespace greenquad
