// quadrature.hpp — Gauss-Legendre rules

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "corrtcl/error.hpp"

namespace corrtcl::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }

    template <class F>
    auto integrate(F&& f) const {
        auto acc = weights[0] * f(nodes[0]);
        for (std::size_t k = 1; k < nodes.size(); ++k) acc += weights[k] * f(nodes[k]);
        return acc;
    }
};

// n-point rule on [-1, 1]; roots by Newton iteration on P_n from the
// Chebyshev-like initial guess, weights 2 / ((1 - x^2) P_n'(x)^2).
inline Rule gauss_legendre(int n) {
    detail::require(n >= 1, "gauss_legendre: node count must be >= 1 (got " + std::to_string(n) + ")");
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute the derivative at the converged root
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

// Rule on [a, b].
inline Rule gauss_legendre(int n, double a, double b) {
    Rule r = gauss_legendre(n);
    const double half = 0.5 * (b - a), mid = 0.5 * (b + a);
    for (std::size_t k = 0; k < r.size(); ++k) {
        r.nodes[k] = mid + half * r.nodes[k];
        r.weights[k] *= half;
    }
    return r;
}

// Composite rule on [a, b]: `panels` equal subintervals, `per_panel` nodes each.
inline Rule composite_gauss_legendre(int panels, int per_panel, double a, double b) {
    detail::require(panels >= 1, "composite_gauss_legendre: panels must be >= 1");
    const Rule base = gauss_legendre(per_panel);
    Rule r;
    r.nodes.reserve(static_cast<std::size_t>(panels) * per_panel);
    r.weights.reserve(r.nodes.capacity());
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        for (std::size_t k = 0; k < base.size(); ++k) {
            r.nodes.push_back(lo + 0.5 * h * (base.nodes[k] + 1.0));
            r.weights.push_back(0.5 * h * base.weights[k]);
        }
    }
    return r;
}

} // namespace corrtcl::quad
