// initial_state.hpp — System state after a unitary preparation applied to
// the joint system-environment thermal state, to second order in the
// coupling, plus the product-state reference.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "corrtcl/bath.hpp"
#include "corrtcl/linalg.hpp"
#include "corrtcl/quadrature.hpp"

namespace corrtcl {

enum class PreparationKind { rotation_y_half_pi, custom_unitary };

// Omega = e^{i pi Jy / 2}: the pi/2 pulse taking the all-down state to +x.
inline OperatorMatrix omega_rotation(const SpinSystem& sys) {
    return herm_propagator(sys.jy, cplx{0.0, 0.5 * std::numbers::pi});
}

struct PreparationSpec {
    PreparationKind kind{PreparationKind::rotation_y_half_pi};
    OperatorMatrix omega;
    double eps0{0.0};
    double delta0{0.0};

    static PreparationSpec rotation(const SpinSystem& sys, double eps0, double delta0) {
        return {PreparationKind::rotation_y_half_pi, omega_rotation(sys), eps0, delta0};
    }

    static PreparationSpec custom(const OperatorMatrix& unitary, double eps0, double delta0) {
        PreparationSpec p{PreparationKind::custom_unitary, unitary, eps0, delta0};
        p.validate(unitary.rows());
        return p;
    }

    void validate(Eigen::Index dim) const {
        detail::require(omega.rows() == dim && omega.cols() == dim,
                        "PreparationSpec: Omega has the wrong dimension");
        const double defect = max_abs(omega * omega.adjoint() - OperatorMatrix::Identity(dim, dim));
        detail::require(defect <= 1e-10, "PreparationSpec: Omega is not unitary (|Omega Omega^+ - I| = " +
                                             std::to_string(defect) + ")");
    }

    // H_S0 = eps0 Jz + delta0 Jx
    OperatorMatrix h_s0(const SpinSystem& sys) const { return eps0 * sys.jz + delta0 * sys.jx; }
};

// Omega e^{-beta H_S0} Omega^dagger / Z_S0
inline OperatorMatrix prepare_uncorrelated(const SpinSystem& sys, const PreparationSpec& prep, double beta) {
    detail::require(beta > 0.0, "prepare_uncorrelated: beta must be > 0");
    prep.validate(sys.dim);
    const HermitianSpectrum hs0(prep.h_s0(sys));
    OperatorMatrix rho = hs0.exp(cplx{-beta, 0.0}, hs0.energies().minCoeff());
    rho /= rho.trace();
    return prep.omega * rho * prep.omega.adjoint();
}

struct CorrelatedState {
    OperatorMatrix rho0;
    OperatorMatrix correction;          // second-order part before normalization: rho0 ~ (rho^(0) + correction) / Z'
    double zprime{1.0};
    double correction_norm{0.0};       // Frobenius norm of the second-order part of rho0
    double trace_before_hermitize{1.0};
    double hermiticity_defect{0.0};    // removed by the (rho + rho^+)/2 step
    double min_eigenvalue{0.0};        // small negatives are reported, never clipped
};

struct CorrelatedStateOptions {
    int nodes_per_axis{32};
};

inline constexpr double kMinEigenvalueTolerance = -1e-6;

// rho(0) = e^{-beta H~_S0} [1 + int_0^beta dl int_0^l dl' F^R(l) F^R(l') <B(l) B(l')>] / (Z_S0 Z')
// with F^R(l) = Omega e^{l H_S0} F e^{-l H_S0} Omega^dagger and H~_S0 = Omega H_S0 Omega^dagger.
// The triangle is covered by Gauss-Legendre in l and, for each outer node,
// Gauss-Legendre on [0, l].
inline CorrelatedState prepare_correlated(const SpinSystem& sys, const PreparationSpec& prep,
                                          const bath::BathCorrelations& bath, const OperatorMatrix& coupling,
                                          const CorrelatedStateOptions& opts = {}) {
    prep.validate(sys.dim);
    require_same_dim(coupling, sys.jz, "prepare_correlated");
    detail::require(opts.nodes_per_axis >= 2, "prepare_correlated: need >= 2 nodes per axis");
    const double beta = bath.beta();
    const HermitianSpectrum hs0(prep.h_s0(sys));
    const OperatorMatrix& omega = prep.omega;

    auto f_rotated = [&](double lambda) -> OperatorMatrix {
        return omega * hs0.similarity(coupling, cplx{lambda, 0.0}) * omega.adjoint();
    };

    const quad::Rule outer = quad::gauss_legendre(opts.nodes_per_axis, 0.0, beta);
    const quad::Rule unit = quad::gauss_legendre(opts.nodes_per_axis, 0.0, 1.0);
    const Eigen::Index d = sys.dim;
    OperatorMatrix kubo = OperatorMatrix::Zero(d, d);
    for (std::size_t i = 0; i < outer.size(); ++i) {
        const double lam = outer.nodes[i];
        OperatorMatrix inner = OperatorMatrix::Zero(d, d);
        for (std::size_t k = 0; k < unit.size(); ++k) {
            const double lam_p = lam * unit.nodes[k];
            inner += (unit.weights[k] * lam * bath.imag_corr(lam, lam_p)) * f_rotated(lam_p);
        }
        kubo += outer.weights[i] * (f_rotated(lam) * inner);
    }

    const double emin = hs0.energies().minCoeff();
    const OperatorMatrix boltz = omega * hs0.exp(cplx{-beta, 0.0}, emin) * omega.adjoint();
    const double zs0 = boltz.trace().real();
    const OperatorMatrix second = boltz * kubo;
    const double zprime = 1.0 + second.trace().real() / zs0;
    if (!(zprime > 0.0))
        throw NumericalError("prepare_correlated: Z' = " + std::to_string(zprime) +
                             " <= 0; coupling too strong for the second-order state");

    CorrelatedState out;
    out.zprime = zprime;
    out.correction = second / zs0;
    out.correction_norm = (second / (zs0 * zprime)).norm();
    OperatorMatrix rho = (boltz + second) / (zs0 * zprime);
    out.trace_before_hermitize = rho.trace().real();
    out.hermiticity_defect = hermiticity_defect(rho);
    rho = hermitize(rho);
    rho /= rho.trace().real();
    out.min_eigenvalue = Eigen::SelfAdjointEigenSolver<OperatorMatrix>(rho, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    out.rho0 = std::move(rho);
    return out;
}

inline CorrelatedState prepare_correlated(const SpinSystem& sys, const PreparationSpec& prep,
                                          const bath::BathSpec& spec, const OperatorMatrix& coupling,
                                          const CorrelatedStateOptions& opts = {}) {
    return prepare_correlated(sys, prep, bath::BathCorrelations(spec), coupling, opts);
}

} // namespace corrtcl
