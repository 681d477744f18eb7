#include <greenquad/quad1d.hpp>
#include <greenquad/polyroots.hpp>

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace greenquad;
using namespace greenquad::testing;

namespace {

PoleSet quadrant_poles(int multiplicity) {
    return multiply_multiplicity(curve_poles(circle_loop().curves[0]), multiplicity);
}

double circle_w(double s) { return 1.0 + (std::sqrt(2.0) - 2.0) * s + (2.0 - std::sqrt(2.0)) * s * s; }

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

} // namespace

TEST(GaussLegendre, SmallRules) {
    const auto one = gauss_legendre(1, 0.0, 1.0);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_DOUBLE_EQ(one.nodes[0], 0.5);
    EXPECT_DOUBLE_EQ(one.weights[0], 1.0);

    const auto two = gauss_legendre(2);
    EXPECT_NEAR(two.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(two.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(two.weights[0], 1.0, 1e-15);
    EXPECT_NEAR(two.weights[1], 1.0, 1e-15);
    EXPECT_NEAR(two.apply([](double s) { return s * s * s; }), 0.0, 1e-16);
}

TEST(GaussLegendre, RejectsBadCount) { EXPECT_THROW(gauss_legendre(0), ArgumentError); }

TEST(GaussLegendre, ExactForDegreeTwoNMinusOne) {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int n = 1; n <= 30; ++n) {
        const auto rule = gauss_legendre(n, 0.0, 1.0);
        std::vector<double> c(2 * n);
        for (auto& v : c) v = u(rng);
        double exact = 0.0;
        for (int i = 0; i < 2 * n; ++i) exact += c[i] / (i + 1);
        const double q = rule.apply([&](double s) {
            double acc = 0.0;
            for (int i = 2 * n - 1; i >= 0; --i) acc = acc * s + c[i];
            return acc;
        });
        EXPECT_NEAR(q, exact, 1e-13 * std::max(1.0, std::abs(exact))) << "n=" << n;
    }
}

TEST(GaussLegendre, PositiveSymmetricNodesInsideInterval) {
    for (int n : {1, 2, 5, 16, 55, 100}) {
        const auto rule = gauss_legendre(n);
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            EXPECT_GT(rule.weights[i], 0.0);
            EXPECT_GT(rule.nodes[i], -1.0);
            EXPECT_LT(rule.nodes[i], 1.0);
            EXPECT_NEAR(rule.nodes[i], -rule.nodes[n - 1 - i], 1e-15);
            EXPECT_NEAR(rule.weights[i], rule.weights[n - 1 - i], 1e-15);
            if (i > 0) {
                EXPECT_LT(rule.nodes[i - 1], rule.nodes[i]);
            }
            sum += rule.weights[i];
        }
        EXPECT_NEAR(sum, 2.0, 1e-14);
    }
}

TEST(RationalRule, EmptyPolesReduceToPolynomialRule) {
    const auto rule = rational_rule(PoleSet{}, 3);
    ASSERT_EQ(rule.size(), 4u);
    EXPECT_NEAR(rule.apply([](double s) { return s * s * s; }), 0.25, 1e-15);
}

TEST(RationalRule, CircleMultiplicityFive) {
    const auto poles = quadrant_poles(5);
    const auto rule = rational_rule(poles, 0);
    ASSERT_EQ(rule.size(), 11u);

    const double q = rule.apply([](double s) { return std::pow(circle_w(s), -5); });
    const double ref = gauss_kronrod([](double s) { return std::pow(circle_w(s), -5); }, 0.0, 1.0, 1e-14);
    EXPECT_NEAR(q, ref, 1e-11 * std::abs(ref));

    const auto residuals = verify_exactness(rule, poles, 0);
    EXPECT_EQ(residuals.size(), 11u);
    EXPECT_LT(max_of(residuals), 1e-11);
}

TEST(RationalRule, ExactForAnyNumeratorOfTheSpace) {
    // p(s) / w(s)^3 with deg p <= 6 lies in the space of the circle poles at multiplicity 3.
    const auto rule = rational_rule(quadrant_poles(3), 0);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> c(7);
        for (auto& v : c) v = u(rng);
        auto f = [&](double s) {
            double p = 0.0;
            for (int i = 6; i >= 0; --i) p = p * s + c[i];
            return p / std::pow(circle_w(s), 3);
        };
        const double ref = gauss_kronrod(f, 0.0, 1.0, 1e-15);
        EXPECT_NEAR(rule.apply(f), ref, 1e-11 * std::max(1.0, std::abs(ref)));
    }
}

TEST(RationalRule, ExactUpToTotalMultiplicityForty) {
    for (int mult : {1, 3, 8, 14, 20}) {
        const auto poles = quadrant_poles(mult);
        const auto rule = rational_rule(poles, 0);
        EXPECT_EQ(static_cast<int>(rule.size()), 2 * mult + 1);
        EXPECT_LE(max_of(verify_exactness(rule, poles, 0)), 1e-11) << "multiplicity " << mult;
    }
    const PoleSet mixed{{{Complex(-0.5, 0.0), 10}, {Complex(1.2, 0.4), 15}, {Complex(1.2, -0.4), 15}}, 0};
    EXPECT_LE(max_of(verify_exactness(rational_rule(mixed, 2), mixed, 2)), 1e-11);
}

TEST(RationalRule, RealPolesAndExtraDegree) {
    PoleSet poles{{{Complex(-0.3, 0.0), 2}, {Complex(1.7, 0.0), 1}}, 0};
    const auto rule = rational_rule(poles, 4);
    EXPECT_EQ(rule.size(), 8u);
    EXPECT_LT(max_of(verify_exactness(rule, poles, 4)), 1e-11);
    const double ref = gauss_kronrod([](double s) { return s * s / ((s + 0.3) * (s + 0.3) * (1.7 - s)); }, 0, 1);
    EXPECT_NEAR(rule.apply([](double s) { return s * s / ((s + 0.3) * (s + 0.3) * (1.7 - s)); }), ref,
                1e-11 * std::abs(ref));
}

TEST(RationalRule, PoleOnIntervalRejected) {
    EXPECT_THROW(rational_rule(PoleSet{{{Complex(0.5, 0.0), 1}}, 0}, 0), PoleOnIntervalError);
    EXPECT_THROW(rational_rule(PoleSet{{{Complex(1.0, 1e-12), 1}, {Complex(1.0, -1e-12), 1}}, 0}, 0),
                 PoleOnIntervalError);
}

TEST(RationalRule, NonConjugateClosedRejected) {
    EXPECT_THROW(rational_rule(PoleSet{{{Complex(0.5, 1.0), 1}}, 0}, 0), ArgumentError);
}

TEST(RationalRule, NearbyPolesFailConstructionHonestly) {
    // Very close high-multiplicity poles make the weight 1/W extremely peaked; either the
    // rule passes its self-check or it reports the residual.
    const PoleSet poles{{{Complex(0.5, 1e-3), 8}, {Complex(0.5, -1e-3), 8}}, 0};
    try {
        const auto rule = rational_rule(poles, 0);
        EXPECT_LE(max_of(verify_exactness(rule, poles, 0)), kRationalExactnessTolerance);
    } catch (const ConstructionError& e) {
        EXPECT_GT(e.worst_residual(), kRationalExactnessTolerance);
    }
}

TEST(RationalRule, SpectralTrendForSmoothIntegrand) {
    std::vector<double> ns, errs;
    const double exact = std::exp(1.0) - 1.0;
    for (int l = 0; l <= 20; l += 2) {
        const auto rule = rational_rule(quadrant_poles(2), l);
        const double err = std::abs(rule.apply([](double s) { return std::exp(s); }) - exact);
        if (err > 1e-15) {
            ns.push_back(static_cast<double>(rule.size()));
            errs.push_back(err);
        }
    }
    ASSERT_GE(ns.size(), 3u);
    EXPECT_LT(loglog_slope(ns, errs), -5.0);
}

TEST(VerifyExactness, GaussRuleAgainstPolynomials) {
    const auto rule = gauss_legendre(3, 0.0, 1.0);
    const auto res = verify_exactness(rule, PoleSet{}, 5);
    ASSERT_EQ(res.size(), 6u);
    EXPECT_LT(max_of(res), 1e-14);
}

TEST(VerifyExactness, TruncatedRuleIsCaught) {
    const auto poles = quadrant_poles(5);
    auto rule = rational_rule(poles, 0);
    rule.nodes.pop_back();
    rule.weights.pop_back();
    EXPECT_GT(max_of(verify_exactness(rule, poles, 0)), 1e-3);
}
