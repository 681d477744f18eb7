#include <greenquad/polyroots.hpp>

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace greenquad;
using namespace greenquad::testing;

namespace {

// Quadratic-formula roots of 1 + (sqrt2 - 2)s + (2 - sqrt2)s^2.
Complex quadrant_pole() {
    const double a = 2.0 - std::sqrt(2.0), b = std::sqrt(2.0) - 2.0, c = 1.0;
    const double disc = b * b - 4 * a * c;
    return {-b / (2 * a), std::sqrt(-disc) / (2 * a)};
}

} // namespace

TEST(MonomialRoots, SimpleFactored) {
    const auto r = monomial_roots({{-1, 0, 1}});
    ASSERT_EQ(r.size(), 2u);
    EXPECT_NEAR(r[0].real(), -1.0, 1e-15);
    EXPECT_NEAR(r[1].real(), 1.0, 1e-15);
    EXPECT_NEAR(r[0].imag(), 0.0, 1e-15);
}

TEST(MonomialRoots, CircleWeightPolynomial) {
    const auto r = monomial_roots({{1, std::sqrt(2.0) - 2, 2 - std::sqrt(2.0)}});
    ASSERT_EQ(r.size(), 2u);
    const Complex p = quadrant_pole();
    EXPECT_NEAR(p.imag(), 1.207106781186548, 1e-12);
    EXPECT_NEAR(std::abs(r[0] - std::conj(p)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r[1] - p), 0.0, 1e-12);
}

TEST(MonomialRoots, DoubleRootMergesToOnePole) {
    const auto r = monomial_roots({{0.25, -1, 1}});
    ASSERT_EQ(r.size(), 2u);
    for (const auto& z : r) EXPECT_NEAR(std::abs(z - 0.5), 0.0, 1e-7);
    const auto poles = cluster_roots(r);
    ASSERT_EQ(poles.size(), 1u);
    EXPECT_EQ(poles[0].multiplicity, 2);
    EXPECT_NEAR(poles[0].location.real(), 0.5, 1e-12);
    EXPECT_EQ(poles[0].location.imag(), 0.0);
}

TEST(MonomialRoots, ConstantAfterTrimmingThrows) {
    EXPECT_THROW(monomial_roots({{1.0, 1e-20}}), DegeneratePolynomialError);
    EXPECT_THROW(monomial_roots({{3.0}}), DegeneratePolynomialError);
}

TEST(MonomialRoots, RandomPolynomialsHaveSmallResiduals) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 2 + trial % 8;
        PolynomialMonomial p;
        for (int i = 0; i <= m; ++i) p.coefficients.push_back(u(rng));
        p.coefficients.back() += p.coefficients.back() < 0 ? -0.5 : 0.5;
        const auto roots = monomial_roots(p);
        ASSERT_EQ(static_cast<int>(roots.size()), m);
        for (const auto& z : roots) {
            Complex v = 0.0, scale = 0.0;
            for (int i = m; i >= 0; --i) {
                v = v * z + p.coefficients[i];
                scale = scale * std::abs(z) + std::abs(p.coefficients[i]);
            }
            EXPECT_LT(std::abs(v), 1e-12 * std::abs(scale));
        }
    }
}

TEST(CurvePoles, PolynomialCurveHasNone) {
    const RationalBezierCurve c({{0, 0}, {1, 2}, {2, 0}}, {3, 3, 3});
    const auto poles = curve_poles(c);
    EXPECT_TRUE(poles.empty());
    EXPECT_EQ(poles.roots_at_infinity, 2);
}

TEST(CurvePoles, CircleQuadrant) {
    const auto poles = curve_poles(circle_loop().curves[0]);
    ASSERT_EQ(poles.poles.size(), 2u);
    EXPECT_EQ(poles.roots_at_infinity, 0);
    const Complex p = quadrant_pole();
    for (const auto& pole : poles.poles) {
        EXPECT_EQ(pole.multiplicity, 1);
        EXPECT_NEAR(pole.location.real(), 0.5, 1e-10);
        EXPECT_NEAR(std::abs(pole.location.imag()), p.imag(), 1e-10);
    }
}

TEST(CurvePoles, EveryQuadrantHasTheSamePoles) {
    for (const auto& c : circle_loop(3, -2, 0.7).curves) {
        const auto poles = curve_poles(c);
        ASSERT_EQ(poles.poles.size(), 2u);
        for (const auto& pole : poles.poles) EXPECT_NEAR(std::abs(pole.location - 0.5), 1.207106781186548, 1e-10);
    }
}

TEST(CurvePoles, CubicResidualCheck) {
    const RationalBezierCurve c({{0, 0}, {1, 1}, {2, 1}, {3, 0}}, {1, 0.9, 1, 0.9});
    const auto poles = curve_poles(c);
    EXPECT_EQ(poles.total_multiplicity(), 3);
    const auto w = bernstein_to_monomial(weight_polynomial(c));
    for (const auto& pole : poles.poles) {
        Complex v = 0.0;
        for (int i = w.degree(); i >= 0; --i) v = v * pole.location + w.coefficients[i];
        EXPECT_LT(std::abs(v), 1e-10);
    }
}

TEST(CurvePoles, DegreeDropBecomesRootAtInfinity) {
    // Weights 1, 2, 3 are linear in s: the s^2 coefficient vanishes.
    const RationalBezierCurve c({{0, 0}, {1, 1}, {2, 0}}, {1, 2, 3});
    const auto poles = curve_poles(c);
    EXPECT_EQ(poles.roots_at_infinity, 1);
    ASSERT_EQ(poles.poles.size(), 1u);
    EXPECT_NEAR(poles.poles[0].location.real(), -0.5, 1e-14);
}

TEST(CurvePoles, PoleOnIntervalThrows) {
    // Weights 1, -1 vanish at s = 0.5.
    const RationalBezierCurve c({{0, 0}, {1, 0}}, {1.0, -1.0});
    EXPECT_THROW(curve_poles(c), PoleOnIntervalError);
}

TEST(MultiplyMultiplicity, Examples) {
    const auto circle = curve_poles(circle_loop().curves[0]);
    const auto five = multiply_multiplicity(circle, 5);
    ASSERT_EQ(five.poles.size(), 2u);
    for (const auto& p : five.poles) EXPECT_EQ(p.multiplicity, 5);
    EXPECT_EQ(five.total_multiplicity(), 10);

    EXPECT_TRUE(multiply_multiplicity(PoleSet{}, 7).empty());

    const auto six = multiply_multiplicity(PoleSet{{{Complex(2.0, 0.0), 2}}, 0}, 3);
    ASSERT_EQ(six.poles.size(), 1u);
    EXPECT_EQ(six.poles[0].multiplicity, 6);
    EXPECT_EQ(six.poles[0].location, Complex(2.0, 0.0));

    EXPECT_THROW(multiply_multiplicity(circle, 0), ArgumentError);
}

TEST(DistanceToUnitInterval, Cases) {
    EXPECT_EQ(distance_to_unit_interval({0.5, 0.0}), 0.0);
    EXPECT_DOUBLE_EQ(distance_to_unit_interval({0.5, 2.0}), 2.0);
    EXPECT_DOUBLE_EQ(distance_to_unit_interval({-3.0, 4.0}), 5.0);
    EXPECT_DOUBLE_EQ(distance_to_unit_interval({2.0, 0.0}), 1.0);
}
