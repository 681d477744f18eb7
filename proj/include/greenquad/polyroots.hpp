#pragma once

// Complex roots of weight polynomials and curve pole extraction.

#include "errors.hpp"
#include "geometry.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

namespace greenquad {

using Complex = std::complex<double>;

constexpr double kLeadingTrimTolerance = 1e-14;
constexpr double kPoleMergeTolerance = 1e-7;
constexpr double kPoleIntervalTolerance = 1e-10;

struct Pole {
    Complex location;
    int multiplicity = 1;
};

struct PoleSet {
    std::vector<Pole> poles;
    /// Degree lost when the monomial form was trimmed (roots at infinity).
    int roots_at_infinity = 0;

    bool empty() const { return poles.empty(); }

    int total_multiplicity() const {
        return std::accumulate(poles.begin(), poles.end(), 0,
                               [](int acc, const Pole& p) { return acc + p.multiplicity; });
    }
};

/// Distance from z to the real segment [0, 1].
inline double distance_to_unit_interval(Complex z) {
    const double re = std::clamp(z.real(), 0.0, 1.0);
    return std::abs(z - Complex(re, 0.0));
}

namespace detail {

inline Complex horner(const std::vector<double>& a, Complex z) {
    Complex acc = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
    return acc;
}

inline Complex horner_derivative(const std::vector<double>& a, Complex z) {
    Complex acc = 0.0;
    for (std::size_t j = a.size() - 1; j >= 1; --j) acc = acc * z + static_cast<double>(j) * a[j];
    return acc;
}

} // namespace detail

/// All roots, repeated by multiplicity, from the companion-matrix eigenvalues.
inline std::vector<Complex> monomial_roots(const PolynomialMonomial& p) {
    const auto trimmed = p.trimmed(kLeadingTrimTolerance);
    const int m = trimmed.degree();
    if (m < 1) throw DegeneratePolynomialError("monomial_roots: polynomial is constant after trimming");
    const auto& a = trimmed.coefficients;

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < m; ++i) companion(i, m - 1) = -a[i] / a[m];

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw ConvergenceError("monomial_roots: eigenvalue solve failed");

    std::vector<Complex> roots;
    roots.reserve(m);
    for (int i = 0; i < m; ++i) {
        Complex z = solver.eigenvalues()(i);
        // A couple of guarded Newton steps on the original polynomial.
        for (int it = 0; it < 2; ++it) {
            const Complex d = detail::horner_derivative(a, z);
            if (std::abs(d) == 0.0) break;
            const Complex candidate = z - detail::horner(a, z) / d;
            if (std::abs(detail::horner(a, candidate)) < std::abs(detail::horner(a, z))) z = candidate;
            else break;
        }
        roots.push_back(z);
    }
    std::sort(roots.begin(), roots.end(), [](Complex l, Complex r) {
        return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
    });
    return roots;
}

/// Merges roots closer than `tol * max(1, |root|)` into poles with summed multiplicity.
inline std::vector<Pole> cluster_roots(const std::vector<Complex>& roots, double tol = kPoleMergeTolerance) {
    const std::size_t n = roots.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(roots[i] - roots[j]) <= tol * std::max(1.0, std::abs(roots[i])))
                parent[find(i)] = find(j);

    std::vector<Pole> poles;
    std::vector<std::size_t> seen;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (std::find(seen.begin(), seen.end(), r) != seen.end()) continue;
        seen.push_back(r);
        Complex sum = 0.0;
        int count = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (find(j) == r) {
                sum += roots[j];
                ++count;
            }
        Complex loc = sum / static_cast<double>(count);
        if (std::abs(loc.imag()) <= tol * std::max(1.0, std::abs(loc))) loc.imag(0.0);
        poles.push_back({loc, count});
    }
    return poles;
}

/// Poles of the curve's weight polynomial; empty for polynomial curves.
inline PoleSet curve_poles(const RationalBezierCurve& curve) {
    PoleSet out;
    if (curve.is_polynomial()) {
        out.roots_at_infinity = curve.degree();
        return out;
    }
    const auto monomial = bernstein_to_monomial(weight_polynomial(curve));
    const auto trimmed = monomial.trimmed(kLeadingTrimTolerance);
    out.roots_at_infinity = monomial.degree() - trimmed.degree();
    if (trimmed.degree() < 1) {
        out.roots_at_infinity = curve.degree();
        return out;
    }
    out.poles = cluster_roots(monomial_roots(trimmed));
    for (const auto& pole : out.poles) {
        if (distance_to_unit_interval(pole.location) <= kPoleIntervalTolerance)
            throw PoleOnIntervalError("curve weight polynomial has a root at (" +
                                      std::to_string(pole.location.real()) + ", " +
                                      std::to_string(pole.location.imag()) + ") on the parameter interval");
    }
    return out;
}

inline PoleSet multiply_multiplicity(PoleSet poles, int factor) {
    if (factor < 1) throw ArgumentError("multiply_multiplicity: factor must be >= 1");
    for (auto& p : poles.poles) p.multiplicity *= factor;
    poles.roots_at_infinity *= factor;
    return poles;
}

} // namespace greenquad
