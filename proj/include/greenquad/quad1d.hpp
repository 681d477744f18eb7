#pragma once

/**
 * @file quad1d.hpp
 * @brief One-dimensional rules: Gauss-Legendre and rational-exact rules with prescribed poles.
 *
 * The rational rule with pole set {p, multiplicity mu_p} (total M) and extra
 * degree l is exact on
 *
 *     V = { q(s) / W(s) : deg q <= M + l },   W(s) = prod_p (s - p)^mu_p,
 *
 * which by partial fractions is the span of s^d (d <= l) and (s - p)^-r
 * (1 <= r <= mu_p). A rule exact on V is an interpolatory rule for the weight
 * function 1/W at N = M + l + 1 nodes. We place the nodes at the Chebyshev
 * (Fejer first-kind) points of [0, 1], compute the modified moments
 * int T_j(2s-1)/W(s) ds by adaptive Gauss, and invert the Chebyshev-Vandermonde
 * system through discrete orthogonality. The result is checked against the
 * analytic partial-fraction integrals before it is returned.
 */

#include "errors.hpp"
#include "polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace greenquad {

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = 0.0;
    double b = 1.0;

    std::size_t size() const { return nodes.size(); }
    bool empty() const { return nodes.empty(); }

    template <class F>
    double apply(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

/// n-point Gauss-Legendre rule on [a, b] by Newton iteration on P_n.
///
/// Nodes and weights are computed in long double and rounded once; in double the
/// 1 - z^2 factor loses about 1e-14 relative accuracy in the outer weights.
inline Rule1D gauss_legendre(int n, double a = -1.0, double b = 1.0) {
    if (n < 1) throw ArgumentError("gauss_legendre: n must be >= 1");
    if (!(a < b)) throw ArgumentError("gauss_legendre: require a < b");

    using real = long double;
    std::vector<real> x(n), w(n);
    const int half = (n + 1) / 2;
    auto legendre = [n](real z, real& p_n, real& p_nm1) {
        p_nm1 = 1.0L;
        p_n = z;
        for (int k = 2; k <= n; ++k) {
            const real pk = ((2.0L * k - 1.0L) * z * p_n - (k - 1.0L) * p_nm1) / k;
            p_nm1 = p_n;
            p_n = pk;
        }
    };
    for (int i = 0; i < half; ++i) {
        real z = std::cos(std::numbers::pi_v<real> * (i + 0.75L) / (n + 0.5L));
        real p_n = 0.0L, p_nm1 = 0.0L;
        bool converged = false;
        for (int it = 0; it < 100 && !converged; ++it) {
            legendre(z, p_n, p_nm1);
            const real dz = p_n / (n * (z * p_n - p_nm1) / (z * z - 1.0L));
            z -= dz;
            converged = std::abs(dz) <= 1e-15L;
        }
        if (!converged) throw ConvergenceError("gauss_legendre: Newton iteration did not converge");
        // One more step takes the quadratically convergent iterate to full long double precision.
        legendre(z, p_n, p_nm1);
        z -= p_n / (n * (z * p_n - p_nm1) / (z * z - 1.0L));
        if (n % 2 == 1 && i == half - 1) z = 0.0L;
        legendre(z, p_n, p_nm1);
        const real dp = n * (z * p_n - p_nm1) / (z * z - 1.0L);
        const real wi = 2.0L / ((1.0L - z) * (1.0L + z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }

    Rule1D rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const real half_len = 0.5L * (static_cast<real>(b) - a);
    const real mid = 0.5L * (static_cast<real>(a) + b);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = static_cast<double>(mid + half_len * x[i]);
        rule.weights[i] = static_cast<double>(half_len * w[i]);
    }
    return rule;
}

namespace detail {

// Poles that carry independent real test functions: real poles and the
// upper-half-plane member of each conjugate pair.
struct RepresentativePole {
    Complex location;
    int multiplicity;
    bool real;
};

inline std::vector<RepresentativePole> representative_poles(const PoleSet& poles) {
    std::vector<RepresentativePole> out;
    const auto& ps = poles.poles;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const Complex p = ps[i].location;
        const double tol = 1e-9 * std::max(1.0, std::abs(p));
        if (std::abs(p.imag()) <= tol) {
            out.push_back({Complex(p.real(), 0.0), ps[i].multiplicity, true});
            continue;
        }
        const auto partner = std::find_if(ps.begin(), ps.end(), [&](const Pole& q) {
            return std::abs(q.location - std::conj(p)) <= tol && q.multiplicity == ps[i].multiplicity;
        });
        if (partner == ps.end())
            throw ArgumentError("pole set is not closed under conjugation (pole " + std::to_string(p.real()) +
                                (p.imag() < 0 ? " - " : " + ") + std::to_string(std::abs(p.imag())) + "i)");
        if (p.imag() > 0) out.push_back({p, ps[i].multiplicity, false});
    }
    return out;
}

inline void validate_poles_off_interval(const PoleSet& poles) {
    for (const auto& p : poles.poles)
        if (distance_to_unit_interval(p.location) <= kPoleIntervalTolerance)
            throw PoleOnIntervalError("rational_rule: pole at (" + std::to_string(p.location.real()) + ", " +
                                      std::to_string(p.location.imag()) + ") touches [0, 1]");
}

// log|W(s)| and sign of W(s) for real s; W is real on the real line for a conjugate-closed set.
inline double log_abs_w(const std::vector<RepresentativePole>& reps, double s, int& sign) {
    double acc = 0.0;
    sign = 1;
    for (const auto& r : reps) {
        if (r.real) {
            const double d = s - r.location.real();
            acc += r.multiplicity * std::log(std::abs(d));
            if (d < 0 && r.multiplicity % 2 == 1) sign = -sign;
        } else {
            acc += 2.0 * r.multiplicity * std::log(std::abs(Complex(s, 0.0) - r.location));
        }
    }
    return acc;
}

inline void chebyshev_values(double x, std::vector<double>& t) {
    if (t.empty()) return;
    t[0] = 1.0;
    if (t.size() > 1) t[1] = x;
    for (std::size_t j = 2; j < t.size(); ++j) t[j] = 2.0 * x * t[j - 1] - t[j - 2];
}

// Vector-valued adaptive Gauss on [a, b]; `f` fills values for one abscissa.
template <class F>
void adaptive_gauss(const F& f, double a, double b, const Rule1D& base, double abs_tol, int depth,
                    std::vector<double>& acc, std::vector<double>& scratch) {
    const std::size_t dim = acc.size();
    auto integrate_on = [&](double lo, double hi, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        for (std::size_t i = 0; i < base.size(); ++i) {
            f(mid + half * base.nodes[i], scratch);
            for (std::size_t j = 0; j < dim; ++j) out[j] += half * base.weights[i] * scratch[j];
        }
    };
    std::vector<double> whole(dim), left(dim), right(dim);
    const double c = 0.5 * (a + b);
    integrate_on(a, b, whole);
    integrate_on(a, c, left);
    integrate_on(c, b, right);
    double err = 0.0, mag = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        err = std::max(err, std::abs(left[j] + right[j] - whole[j]));
        mag = std::max(mag, std::abs(whole[j]));
    }
    // Stop at the tolerance or at the roundoff floor of this subinterval.
    if (err <= abs_tol || err <= 64.0 * std::numeric_limits<double>::epsilon() * mag || depth >= 40) {
        for (std::size_t j = 0; j < dim; ++j) acc[j] += left[j] + right[j];
        return;
    }
    adaptive_gauss(f, a, c, base, abs_tol, depth + 1, acc, scratch);
    adaptive_gauss(f, c, b, base, abs_tol, depth + 1, acc, scratch);
}

} // namespace detail

constexpr double kRationalExactnessTolerance = 1e-11;

/**
 * Residual of `rule` on every test function of the space defined by `poles`
 * and degree `l`, against analytic antiderivatives.
 *
 * Order: s^0..s^l, then for each real pole (s-p)^-r, and for each conjugate
 * pair Re (s-p)^-r followed by Im (s-p)^-r, r = 1..multiplicity. Residuals are
 * |Q - I| / max(|I|, sum_i |w_i f(s_i)|).
 */
inline std::vector<double> verify_exactness(const Rule1D& rule, const PoleSet& poles, int l) {
    std::vector<double> residuals;
    auto record = [&](double quad, double abs_quad, double exact) {
        const double scale = std::max({std::abs(exact), abs_quad, 1e-300});
        residuals.push_back(std::abs(quad - exact) / scale);
    };

    for (int d = 0; d <= l; ++d) {
        double q = 0.0, aq = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double v = rule.weights[i] * std::pow(rule.nodes[i], d);
            q += v;
            aq += std::abs(v);
        }
        record(q, aq, 1.0 / (d + 1));
    }

    for (const auto& rep : detail::representative_poles(poles)) {
        const Complex p = rep.location;
        for (int r = 1; r <= rep.multiplicity; ++r) {
            Complex exact;
            if (r == 1) exact = std::log((1.0 - p) / (-p));
            else exact = (std::pow(1.0 - p, 1 - r) - std::pow(-p, 1 - r)) / static_cast<double>(1 - r);

            Complex q = 0.0;
            double aq_re = 0.0, aq_im = 0.0;
            for (std::size_t i = 0; i < rule.size(); ++i) {
                const Complex v = rule.weights[i] * std::pow(Complex(rule.nodes[i], 0.0) - p, -r);
                q += v;
                aq_re += std::abs(v.real());
                aq_im += std::abs(v.imag());
            }
            record(q.real(), aq_re, exact.real());
            if (!rep.real) record(q.imag(), aq_im, exact.imag());
        }
    }
    return residuals;
}

/// Rule on [0, 1] with M + l + 1 nodes, exact for the rational space of `poles` plus degree-l polynomials.
inline Rule1D rational_rule(const PoleSet& poles, int extra_degree) {
    if (extra_degree < 0) throw ArgumentError("rational_rule: extra degree must be >= 0");
    detail::validate_poles_off_interval(poles);
    const auto reps = detail::representative_poles(poles);

    const int n = poles.total_multiplicity() + extra_degree + 1;
    Rule1D rule;
    rule.a = 0.0;
    rule.b = 1.0;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    std::vector<double> cheb_x(n);
    for (int i = 0; i < n; ++i) {
        cheb_x[i] = -std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * n));
        rule.nodes[i] = 0.5 * (1.0 + cheb_x[i]);
    }

    int ref_sign = 1;
    const double log_ref = detail::log_abs_w(reps, 0.5, ref_sign);
    auto scaled_w = [&](double s) {
        int sign = 1;
        const double lw = detail::log_abs_w(reps, s, sign);
        return sign * ref_sign * std::exp(lw - log_ref);
    };

    // Modified moments of the weight 1/W on [0, 1].
    std::vector<double> moments(n, 0.0), scratch(n), t(n);
    auto integrand = [&](double s, std::vector<double>& out) {
        detail::chebyshev_values(2.0 * s - 1.0, t);
        const double inv_w = 1.0 / scaled_w(s);
        for (int j = 0; j < n; ++j) out[j] = t[j] * inv_w;
    };
    const Rule1D base = gauss_legendre(24);
    double l1 = 0.0;
    {
        std::vector<double> probe(1, 0.0), probe_scratch(1);
        auto abs_inv = [&](double s, std::vector<double>& out) { out[0] = std::abs(1.0 / scaled_w(s)); };
        detail::adaptive_gauss(abs_inv, 0.0, 1.0, base, 1e-10, 0, probe, probe_scratch);
        l1 = probe[0];
    }
    detail::adaptive_gauss(integrand, 0.0, 1.0, base, 1e-15 * l1, 0, moments, scratch);

    for (int i = 0; i < n; ++i) {
        detail::chebyshev_values(cheb_x[i], t);
        double u = moments[0] / n;
        for (int j = 1; j < n; ++j) u += 2.0 / n * moments[j] * t[j];
        rule.weights[i] = u * scaled_w(rule.nodes[i]);
    }

    const auto residuals = verify_exactness(rule, poles, extra_degree);
    const double worst = residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
    if (!(worst <= kRationalExactnessTolerance))
        throw ConstructionError("rational_rule: exactness self-check failed", worst);
    return rule;
}

} // namespace greenquad
