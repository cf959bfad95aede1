// test_quadrature.cpp — Gauss-Legendre rules

#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "corrtcl/quadrature.hpp"

using namespace corrtcl;

TEST(GaussLegendre, WeightsSumToIntervalLength) {
    for (int n : {1, 2, 7, 32, 48, 96}) {
        const auto r = quad::gauss_legendre(n, -0.5, 2.0);
        double sum = 0.0;
        for (double w : r.weights) sum += w;
        EXPECT_NEAR(sum, 2.5, 1e-13);
    }
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegreeTwoNMinusOne) {
    for (int n : {1, 3, 8, 20}) {
        const auto r = quad::gauss_legendre(n, 0.0, 1.0);
        for (int k = 0; k <= 2 * n - 1; ++k) {
            const double v = r.integrate([k](double x) { return std::pow(x, k); });
            EXPECT_NEAR(v, 1.0 / (k + 1), 1e-13) << "n=" << n << " k=" << k;
        }
    }
}

TEST(GaussLegendre, NodesAreSortedAndInside) {
    const auto r = quad::gauss_legendre(41, 1.0, 3.0);
    for (std::size_t k = 0; k < r.size(); ++k) {
        EXPECT_GT(r.nodes[k], 1.0);
        EXPECT_LT(r.nodes[k], 3.0);
        if (k > 0) {
            EXPECT_LT(r.nodes[k - 1], r.nodes[k]);
        }
    }
    EXPECT_DOUBLE_EQ(r.nodes[20], 2.0);
}

TEST(GaussLegendre, DampedOscillatoryIntegral) {
    // int_0^L w e^{-w/c} e^{-i w t} dw -> 1 / (1/c + i t)^2 as L -> infinity
    const double c = 5.0, t = 3.0;
    const auto r = quad::composite_gauss_legendre(20, 40, 0.0, 50.0 * c);
    const std::complex<double> v =
        r.integrate([&](double w) { return w * std::exp(-w / c) * std::polar(1.0, -w * t); });
    const std::complex<double> ref = 1.0 / std::pow(std::complex<double>(1.0 / c, t), 2);
    EXPECT_LT(std::abs(v - ref), 1e-10);
}

TEST(GaussLegendre, CompositeMatchesSingleOnSmoothIntegrand) {
    const auto a = quad::composite_gauss_legendre(5, 12, 0.0, std::numbers::pi);
    EXPECT_NEAR(a.integrate([](double x) { return std::sin(x); }), 2.0, 1e-13);
    EXPECT_EQ(a.size(), 60u);
}

TEST(GaussLegendre, RejectsBadCounts) {
    EXPECT_THROW(quad::gauss_legendre(0), std::invalid_argument);
    EXPECT_THROW(quad::composite_gauss_legendre(0, 4, 0.0, 1.0), std::invalid_argument);
}
