// dephasing_exact.hpp — Exact pure-dephasing evolution (Delta = Delta0 = 0,
// F = Jz, bosonic bath) for product and correlated initial states.
//
// The bath functions follow the usual normalization
//
//   gamma(t) = (1/t) sum 4 g^2 (1 - cos wt) / w^2 coth(beta w / 2)
//   Delta(t) = (1/t) sum g^2 (sin wt - wt) / w^2
//   Phi(t)   = sum 4 g^2 sin(wt) / w^2
//   C        = sum 4 g^2 / w
//
// For the coupling Jz (x) B the decoherence exponent, the correlation phase
// and the l^2 weight carry (m - n)^2 gamma t / 4, l (n - m) Phi / 2 and
// beta l^2 C / 4 respectively; kCollectiveCouplingScale holds that 1/4.

#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "corrtcl/bath.hpp"
#include "corrtcl/linalg.hpp"

namespace corrtcl {

inline constexpr double kCollectiveCouplingScale = 0.25;

struct DephasingFunctions {
    double t{0.0};
    double gamma{0.0};
    double delta{0.0};
    double phi{0.0};
    double c{0.0};
};

// Quadrature (or discrete-sum) evaluation over a spectral measure.
inline DephasingFunctions dephasing_functions(const bath::SpectralMeasure& measure, double beta, double t) {
    detail::require(beta > 0.0, "dephasing_functions: beta must be > 0");
    detail::require(t >= 0.0, "dephasing_functions: t must be >= 0 (got " + std::to_string(t) + ")");
    DephasingFunctions f;
    f.t = t;
    double gamma_t = 0.0, delta_t = 0.0;
    for (std::size_t i = 0; i < measure.size(); ++i) {
        const double w = measure.omega[i];
        const double W = measure.weight[i];
        if (W == 0.0) continue;
        f.c += 4.0 * W / w;
        if (t == 0.0) continue;
        const double x = w * t;
        const double half = std::sin(0.5 * x);
        gamma_t += 4.0 * W * 2.0 * half * half / (w * w) / std::tanh(0.5 * beta * w);
        const double x2 = x * x;
        const double sin_minus_x =
            x < 1e-2 ? -x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0)) : std::sin(x) - x;
        delta_t += W * sin_minus_x / (w * w);
        f.phi += 4.0 * W * std::sin(x) / (w * w);
    }
    if (t > 0.0) {
        f.gamma = gamma_t / t;
        f.delta = delta_t / t;
    }
    return f;
}

inline DephasingFunctions dephasing_functions(const bath::BathSpec& spec, double t) {
    detail::require(spec.s > 0.0, "dephasing_functions: s must be > 0, the constant C diverges otherwise (got s=" +
                                      std::to_string(spec.s) + ")");
    return dephasing_functions(bath::SpectralMeasure::from_spec(spec), spec.beta, t);
}

namespace detail {

inline cplx uncorrelated_factor(double m, double n, double eps, const DephasingFunctions& f) {
    const double t = f.t;
    const double decay = kCollectiveCouplingScale * f.gamma * (m - n) * (m - n) * t;
    const double phase = eps * (m - n) * t + f.delta * (m * m - n * n) * t;
    return std::exp(-decay) * std::polar(1.0, -phase);
}

} // namespace detail

// rho_mn(t) = rho_mn(0) e^{-i eps (m-n) t} e^{-i Delta(t) (m^2 - n^2) t} e^{-gamma(t) (m-n)^2 t / 4}
inline OperatorMatrix exact_uncorrelated(const SpinSystem& sys, const OperatorMatrix& rho0, double eps,
                                         const DephasingFunctions& f) {
    require_same_dim(rho0, sys.jz, "exact_uncorrelated");
    OperatorMatrix out(sys.dim, sys.dim);
    for (Eigen::Index r = 0; r < sys.dim; ++r)
        for (Eigen::Index c = 0; c < sys.dim; ++c)
            out(r, c) = rho0(r, c) * detail::uncorrelated_factor(m_of_index(sys, r), m_of_index(sys, c), eps, f);
    return out;
}

struct ExactCorrelatedResult {
    OperatorMatrix rho;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> undefined; // denominator vanished; rho entry is NaN
    bool any_undefined{false};
};

inline constexpr double kDenominatorTolerance = 1e-12;

// Correlated initial state: the uncorrelated factor times
//
//   sum_l w_l e^{-i l (n-m) Phi / 2} e^{-beta eps0 l + beta l^2 C / 4}
//   ------------------------------------------------------------------,   w_l = <l|Omega^+ |n><m| Omega|l>.
//   sum_l w_l                         e^{-beta eps0 l + beta l^2 C / 4}
//
// Exponents are shifted by their maximum before summing. An element whose
// denominator is below 1e-12 of the summed magnitudes is marked undefined.
inline ExactCorrelatedResult exact_correlated(const SpinSystem& sys, const OperatorMatrix& rho0,
                                              const OperatorMatrix& omega, double eps, double eps0, double beta,
                                              const DephasingFunctions& f) {
    require_same_dim(rho0, sys.jz, "exact_correlated");
    require_same_dim(omega, sys.jz, "exact_correlated");
    detail::require(beta > 0.0, "exact_correlated: beta must be > 0");
    detail::require(max_abs(omega * omega.adjoint() - OperatorMatrix::Identity(sys.dim, sys.dim)) <= 1e-10,
                    "exact_correlated: Omega is not unitary");
    const Eigen::Index d = sys.dim;
    std::vector<double> logw(static_cast<std::size_t>(d));
    double shift = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < d; ++k) {
        const double l = m_of_index(sys, k);
        logw[static_cast<std::size_t>(k)] = -beta * eps0 * l + beta * l * l * kCollectiveCouplingScale * f.c;
        shift = std::max(shift, logw[static_cast<std::size_t>(k)]);
    }
    std::vector<double> weight(static_cast<std::size_t>(d));
    for (std::size_t k = 0; k < weight.size(); ++k) weight[k] = std::exp(logw[k] - shift);

    ExactCorrelatedResult out;
    out.rho.resize(d, d);
    out.undefined.setConstant(d, d, false);
    const double phase_scale = 2.0 * kCollectiveCouplingScale * f.phi;
    for (Eigen::Index r = 0; r < d; ++r) {
        const double m = m_of_index(sys, r);
        for (Eigen::Index c = 0; c < d; ++c) {
            const double n = m_of_index(sys, c);
            cplx num{0.0, 0.0}, den{0.0, 0.0};
            double scale = 0.0;
            for (Eigen::Index k = 0; k < d; ++k) {
                const double l = m_of_index(sys, k);
                const cplx w = omega(r, k) * std::conj(omega(c, k)) * weight[static_cast<std::size_t>(k)];
                den += w;
                num += w * std::polar(1.0, -phase_scale * l * (n - m));
                scale += std::abs(w);
            }
            if (std::abs(den) <= kDenominatorTolerance * scale) {
                out.rho(r, c) = cplx{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
                out.undefined(r, c) = true;
                out.any_undefined = true;
                continue;
            }
            out.rho(r, c) = rho0(r, c) * detail::uncorrelated_factor(m, n, eps, f) * (num / den);
        }
    }
    return out;
}

// j_x(t) = 2 <Jx> / N from the exact solution on a list of times.
struct ExactCurve {
    std::vector<double> times;
    std::vector<double> jx;
    std::vector<double> jx2;
    bool any_undefined{false};
};

inline ExactCurve exact_curve(const SpinSystem& sys, const OperatorMatrix& rho0, const OperatorMatrix* omega,
                              double eps, double eps0, const bath::SpectralMeasure& measure, double beta,
                              const std::vector<double>& times) {
    ExactCurve out;
    const double n = static_cast<double>(sys.n_spins);
    const OperatorMatrix jx2 = sys.jx * sys.jx;
    for (double t : times) {
        const DephasingFunctions f = dephasing_functions(measure, beta, t);
        OperatorMatrix rho;
        if (omega != nullptr) {
            auto res = exact_correlated(sys, rho0, *omega, eps, eps0, beta, f);
            out.any_undefined = out.any_undefined || res.any_undefined;
            rho = std::move(res.rho);
        } else {
            rho = exact_uncorrelated(sys, rho0, eps, f);
        }
        out.times.push_back(t);
        out.jx.push_back(2.0 * expectation(rho, sys.jx).real() / n);
        out.jx2.push_back(4.0 * expectation(rho, jx2).real() / (n * n));
    }
    return out;
}

} // namespace corrtcl
