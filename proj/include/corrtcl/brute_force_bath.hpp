// brute_force_bath.hpp — Finite-bath oracle for the correlation functions.
//
// Builds the bath Hamiltonian and coupling operator as explicit matrices,
// forms rho_B = e^{-beta H_B} / Z_B and evaluates Tr[rho_B B(z1) B(z2)] with
// B(z) = e^{z H_B} B e^{-z H_B}. Nothing here shares code with bath.hpp's
// closed forms.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "corrtcl/bath.hpp"
#include "corrtcl/linalg.hpp"

namespace corrtcl::bath {

inline constexpr double kFockTailTolerance = 1e-8;
inline constexpr std::size_t kMaxBruteForceModes = 6;
inline constexpr int kMaxFockCutoff = 4000;

namespace detail_bf {

// Thermal weight of Fock states that two ladder operators can push past the cutoff.
inline double fock_tail(double beta_omega, int cutoff) {
    return std::exp(-beta_omega * (cutoff - 2)) * (cutoff + 1.0);
}

inline int choose_cutoff(double beta_omega, int requested) {
    if (requested > 0) {
        if (fock_tail(beta_omega, requested) >= kFockTailTolerance)
            throw InvalidArgument("brute_force_corr: Fock cutoff " + std::to_string(requested) +
                                  " leaves thermal tail " + std::to_string(fock_tail(beta_omega, requested)) +
                                  " >= 1e-8 for beta*omega=" + std::to_string(beta_omega));
        return requested;
    }
    for (int k = 4; k <= kMaxFockCutoff; ++k)
        if (fock_tail(beta_omega, k) < kFockTailTolerance) return k;
    throw InvalidArgument("brute_force_corr: beta*omega=" + std::to_string(beta_omega) +
                          " needs a Fock cutoff above " + std::to_string(kMaxFockCutoff));
}

// Tr[rho B(z1) B(z2)] and Tr[rho B(z)] for rho = e^{-beta H} / Z, evaluated in
// the eigenbasis of H: sum_ab p_a B_ab B_ba e^{(z1 - z2)(E_a - E_b)}. Each
// Boltzmann factor is merged with its exponential before evaluation so that
// large frequencies cannot overflow.
inline cplx thermal_two_point(const OperatorMatrix& h, const OperatorMatrix& b, double beta, cplx z1, cplx z2) {
    const HermitianSpectrum spec(h);
    const RealVector& e = spec.energies();
    const double emin = e.minCoeff();
    const OperatorMatrix be = spec.to_eigenbasis(b);
    double z = 0.0;
    for (Eigen::Index a = 0; a < e.size(); ++a) z += std::exp(-beta * (e(a) - emin));
    const cplx dz = z1 - z2;
    cplx acc{0.0, 0.0};
    for (Eigen::Index a = 0; a < e.size(); ++a)
        for (Eigen::Index c = 0; c < e.size(); ++c)
            acc += be(a, c) * be(c, a) * std::exp(-beta * (e(a) - emin) + dz * (e(a) - e(c)));
    return acc / z;
}

inline cplx thermal_mean(const OperatorMatrix& h, const OperatorMatrix& b, double beta) {
    const HermitianSpectrum spec(h);
    const RealVector& e = spec.energies();
    const double emin = e.minCoeff();
    const OperatorMatrix be = spec.to_eigenbasis(b);
    double z = 0.0;
    cplx acc{0.0, 0.0};
    for (Eigen::Index a = 0; a < e.size(); ++a) {
        const double p = std::exp(-beta * (e(a) - emin));
        z += p;
        acc += p * be(a, a);
    }
    return acc / z;
}

// One oscillator truncated to `cutoff` Fock states: H = w b^+ b, B = g (b + b^+).
inline void oscillator(const Mode& m, int cutoff, OperatorMatrix& h, OperatorMatrix& x) {
    const Eigen::Index d = cutoff;
    OperatorMatrix b = OperatorMatrix::Zero(d, d);
    for (Eigen::Index n = 1; n < d; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    x = m.coupling * (b + b.adjoint());
    h = OperatorMatrix::Zero(d, d);
    for (Eigen::Index n = 0; n < d; ++n) h(n, n) = m.omega * static_cast<double>(n);
}

inline OperatorMatrix kron_all(const std::vector<OperatorMatrix>& factors) {
    OperatorMatrix out = OperatorMatrix::Ones(1, 1);
    for (const auto& f : factors) {
        OperatorMatrix next(out.rows() * f.rows(), out.cols() * f.cols());
        for (Eigen::Index r = 0; r < out.rows(); ++r)
            for (Eigen::Index c = 0; c < out.cols(); ++c)
                next.block(r * f.rows(), c * f.cols(), f.rows(), f.cols()) = out(r, c) * f;
        out = std::move(next);
    }
    return out;
}

} // namespace detail_bf

// Tr[rho_B B(z1) B(z2)] for a finite bath of `kind` built from `modes`.
// Bosonic baths factor into independent modes (H_B and rho_B are sums and
// products over k), so each oscillator is handled in its own truncated Fock
// space and cross terms are assembled from the single-mode means. Spin baths
// are built on the full 2^M tensor-product space.
inline cplx brute_force_corr(const ModeList& modes, BathKind kind, double beta, cplx z1, cplx z2) {
    modes.validate();
    corrtcl::detail::require(modes.modes.size() <= kMaxBruteForceModes,
                             "brute_force_corr: at most 6 modes (got " + std::to_string(modes.modes.size()) + ")");
    corrtcl::detail::require(beta > 0.0, "brute_force_corr: beta must be > 0");
    if (modes.modes.empty()) return {0.0, 0.0};

    if (kind == BathKind::bosonic) {
        // Independent modes with zero means: the correlation is the sum of
        // single-mode correlations plus cross terms <B_k(z1)><B_l(z2)>.
        cplx corr{0.0, 0.0}, sum1{0.0, 0.0}, diag{0.0, 0.0};
        for (const auto& m : modes.modes) {
            const int cutoff = detail_bf::choose_cutoff(beta * m.omega, modes.fock_cutoff);
            OperatorMatrix h, x;
            detail_bf::oscillator(m, cutoff, h, x);
            corr += detail_bf::thermal_two_point(h, x, beta, z1, z2);
            const cplx mean = detail_bf::thermal_mean(h, x, beta);
            sum1 += mean;
            diag += mean * mean;
        }
        return corr + sum1 * sum1 - diag;
    }

    const std::size_t count = modes.modes.size();
    OperatorMatrix sx(2, 2), sz(2, 2), id = OperatorMatrix::Identity(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    sz << 1.0, 0.0, 0.0, -1.0;
    const Eigen::Index dim = Eigen::Index{1} << count;
    OperatorMatrix h = OperatorMatrix::Zero(dim, dim);
    OperatorMatrix b = OperatorMatrix::Zero(dim, dim);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<OperatorMatrix> fx(count, id), fz(count, id);
        fx[k] = sx;
        fz[k] = sz;
        h += 0.5 * modes.modes[k].omega * detail_bf::kron_all(fx);
        b += modes.modes[k].coupling * detail_bf::kron_all(fz);
    }
    return detail_bf::thermal_two_point(h, b, beta, z1, z2);
}

// Tr[rho_B B], expected to vanish for both bath kinds. The thermal state
// commutes with H_B, so the mean does not depend on the time argument.
inline cplx brute_force_mean(const ModeList& modes, BathKind kind, double beta) {
    modes.validate();
    cplx acc{0.0, 0.0};
    OperatorMatrix sx(2, 2), sz(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    sz << 1.0, 0.0, 0.0, -1.0;
    for (const auto& m : modes.modes) {
        if (kind == BathKind::bosonic) {
            const int cutoff = detail_bf::choose_cutoff(beta * m.omega, modes.fock_cutoff);
            OperatorMatrix h, x;
            detail_bf::oscillator(m, cutoff, h, x);
            acc += detail_bf::thermal_mean(h, x, beta);
        } else {
            acc += detail_bf::thermal_mean(0.5 * m.omega * sx, m.coupling * sz, beta);
        }
    }
    return acc;
}

} // namespace corrtcl::bath
