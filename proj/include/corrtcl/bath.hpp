// bath.hpp — Spectral densities and bath correlation functions for bosonic
// and spin environments.
//
// Every correlation function here is one analytic function of a complex
// "time" z:
//
//     G(z) = <B(z) B(0)>_B,   B(z) = e^{z H_B} B e^{-z H_B},   0 <= Re z <= beta
//
// B_corr(lambda, t) = G(lambda - i t), <B(lambda) B(lambda')> = G(lambda - lambda')
// and the real-time C(tau) = <B(tau) B(0)> = G(i tau). Summing over modes
// with the spectral weight J(omega) gives
//
//     G(z) = sum_k W_k [ a(w_k) e^{-w_k z} + b(w_k) e^{-w_k (beta - z)} ]
//
// with a = b = n + 1 for oscillators and a = b = 1 / (1 + e^{-beta w}) for
// two-level modes. Both exponentials are bounded by one on the allowed strip.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "corrtcl/error.hpp"
#include "corrtcl/linalg.hpp"
#include "corrtcl/quadrature.hpp"

namespace corrtcl::bath {

enum class BathKind { bosonic, spin };

// How the spin-environment B_corr is formed. `exact` is the thermal
// correlation of H_B = sum w/2 sigma_x, B = sum g sigma_z, confirmed by the
// brute-force bath. `tanh_form` reproduces tanh(bw/2) e^{-x} + 2n sinh(x),
// x = w (lambda - i t), for comparison only.
enum class SpinCorrelationForm { exact, tanh_form };

struct QuadratureControls {
    int nodes{400};                // total Gauss-Legendre nodes over [0, omega_max]
    double omega_max_factor{50.0}; // omega_max = factor * omega_c
    int nodes_per_panel{40};
};

struct BathSpec {
    BathKind kind{BathKind::bosonic};
    double G{0.05};
    double s{1.0};
    double omega_c{5.0};
    double beta{1.0};
    QuadratureControls quad{};
    SpinCorrelationForm spin_form{SpinCorrelationForm::exact};

    double omega_max() const { return quad.omega_max_factor * omega_c; }

    void validate() const {
        detail::require(G >= 0.0, "BathSpec: G must be >= 0 (got " + std::to_string(G) + ")");
        detail::require(s > 0.0, "BathSpec: s must be > 0 (got " + std::to_string(s) + ")");
        detail::require(omega_c > 0.0, "BathSpec: omega_c must be > 0 (got " + std::to_string(omega_c) + ")");
        detail::require(beta > 0.0, "BathSpec: beta must be > 0 (got " + std::to_string(beta) + ")");
        detail::require(quad.omega_max_factor >= 20.0,
                        "BathSpec: omega_max must be >= 20 omega_c (got factor " +
                            std::to_string(quad.omega_max_factor) + ")");
        detail::require(quad.nodes >= 8, "BathSpec: quadrature needs >= 8 nodes (got " +
                                             std::to_string(quad.nodes) + ")");
        detail::require(quad.nodes_per_panel >= 4, "BathSpec: nodes_per_panel must be >= 4");
    }
};

inline const char* to_string(BathKind k) { return k == BathKind::bosonic ? "bosonic" : "spin"; }

// J(w) = G w^s wc^{1-s} e^{-w/wc}
inline double spectral_density(double omega, const BathSpec& spec) {
    detail::require(omega >= 0.0, "spectral_density: omega must be >= 0 (got " + std::to_string(omega) + ")");
    if (omega == 0.0) return 0.0;
    return spec.G * std::pow(omega, spec.s) * std::pow(spec.omega_c, 1.0 - spec.s) *
           std::exp(-omega / spec.omega_c);
}

// 1 / (e^{beta w} - 1), via expm1 so large beta*w does not cancel.
inline double bose_occupation(double omega, double beta) {
    detail::require(omega > 0.0, "bose_occupation: omega must be > 0 (got " + std::to_string(omega) + ")");
    detail::require(beta > 0.0, "bose_occupation: beta must be > 0");
    return 1.0 / std::expm1(beta * omega);
}

struct Mode {
    double coupling; // g_k (real)
    double omega;    // w_k > 0
};

struct ModeList {
    std::vector<Mode> modes;
    int fock_cutoff{0}; // per bosonic mode; 0 selects one from the thermal tail

    void validate() const {
        for (const auto& m : modes)
            detail::require(m.omega > 0.0, "ModeList: mode frequency must be > 0 (got " +
                                               std::to_string(m.omega) + ")");
        detail::require(fock_cutoff == 0 || fock_cutoff >= 4,
                        "ModeList: Fock cutoff must be >= 4 (got " + std::to_string(fock_cutoff) + ")");
    }
};

// Discrete spectral measure: sum_k |g_k|^2 f(w_k) ~ sum_i weight_i f(omega_i).
struct SpectralMeasure {
    std::vector<double> omega;
    std::vector<double> weight;

    std::size_t size() const { return omega.size(); }

    template <class F>
    auto sum(F&& f) const {
        decltype(f(omega[0]) * weight[0]) acc{};
        for (std::size_t i = 0; i < omega.size(); ++i) acc += weight[i] * f(omega[i]);
        return acc;
    }

    // Gauss-Legendre in x with w = omega_max x^2. The quadratic map removes the
    // w^{s-1} endpoint behaviour of J(w) n(w) for sub-Ohmic s.
    static SpectralMeasure from_spec(const BathSpec& spec) {
        spec.validate();
        const int per_panel = std::min(spec.quad.nodes_per_panel, spec.quad.nodes);
        const int panels = std::max(1, (spec.quad.nodes + per_panel - 1) / per_panel);
        const quad::Rule rule = quad::composite_gauss_legendre(panels, per_panel, 0.0, 1.0);
        const double wmax = spec.omega_max();
        SpectralMeasure m;
        m.omega.reserve(rule.size());
        m.weight.reserve(rule.size());
        for (std::size_t k = 0; k < rule.size(); ++k) {
            const double x = rule.nodes[k];
            const double w = wmax * x * x;
            m.omega.push_back(w);
            m.weight.push_back(rule.weights[k] * 2.0 * wmax * x * spectral_density(w, spec));
        }
        return m;
    }

    static SpectralMeasure from_modes(const ModeList& modes) {
        modes.validate();
        SpectralMeasure m;
        for (const auto& md : modes.modes) {
            m.omega.push_back(md.omega);
            m.weight.push_back(md.coupling * md.coupling);
        }
        return m;
    }
};

// Finite-mode discretization of J(w) on the same x^2-mapped Gauss-Legendre
// rule used for the continuum, with g_k^2 = quadrature weight * J(w_k).
inline ModeList discretize(const BathSpec& spec, int n_modes) {
    spec.validate();
    detail::require(n_modes >= 1, "discretize: need at least one mode");
    const quad::Rule rule = quad::gauss_legendre(n_modes, 0.0, 1.0);
    const double wmax = spec.omega_max();
    ModeList out;
    for (std::size_t k = 0; k < rule.size(); ++k) {
        const double x = rule.nodes[k];
        const double w = wmax * x * x;
        out.modes.push_back({std::sqrt(rule.weights[k] * 2.0 * wmax * x * spectral_density(w, spec)), w});
    }
    return out;
}

class BathCorrelations {
public:
    BathCorrelations(BathKind kind, double beta, SpectralMeasure measure,
                     SpinCorrelationForm spin_form = SpinCorrelationForm::exact)
        : kind_(kind), beta_(beta), measure_(std::move(measure)), spin_form_(spin_form) {
        detail::require(beta_ > 0.0, "BathCorrelations: beta must be > 0");
        init_coefficients();
    }

    explicit BathCorrelations(const BathSpec& spec)
        : BathCorrelations(spec.kind, spec.beta, SpectralMeasure::from_spec(spec), spec.spin_form) {}

    BathKind kind() const { return kind_; }
    double beta() const { return beta_; }
    const SpectralMeasure& measure() const { return measure_; }
    const std::vector<double>& coeff_a() const { return a_; }
    const std::vector<double>& coeff_b() const { return b_; }

    // G(z); no range check, callers validate.
    cplx at(cplx z) const {
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < measure_.size(); ++i) {
            const double w = measure_.omega[i];
            acc += measure_.weight[i] * (a_[i] * std::exp(-w * z) + b_[i] * std::exp(-w * (beta_ - z)));
        }
        return acc;
    }

    cplx bcorr(double lambda, double t) const {
        check_lambda(lambda, "bcorr");
        return at(cplx{lambda, -t});
    }

    cplx imag_corr(double lambda, double lambda_prime) const {
        check_lambda(lambda, "imag_corr");
        check_lambda(lambda_prime, "imag_corr");
        detail::require(lambda_prime <= lambda + 1e-14 * beta_,
                        "imag_corr: requires lambda' <= lambda (got lambda=" + std::to_string(lambda) +
                            ", lambda'=" + std::to_string(lambda_prime) + ")");
        return at(cplx{std::max(0.0, lambda - lambda_prime), 0.0});
    }

    cplx real_corr(double tau) const { return at(cplx{0.0, tau}); }

private:
    void check_lambda(double lambda, const char* where) const {
        detail::require(lambda >= -1e-14 * beta_ && lambda <= beta_ * (1.0 + 1e-14),
                        std::string(where) + ": lambda=" + std::to_string(lambda) + " outside [0, beta=" +
                            std::to_string(beta_) + "]");
    }

    void init_coefficients() {
        a_.resize(measure_.size());
        b_.resize(measure_.size());
        for (std::size_t i = 0; i < measure_.size(); ++i) {
            const double w = measure_.omega[i];
            const double em = std::exp(-beta_ * w);
            if (kind_ == BathKind::bosonic) {
                a_[i] = b_[i] = -1.0 / std::expm1(-beta_ * w); // n + 1
            } else if (spin_form_ == SpinCorrelationForm::exact) {
                a_[i] = b_[i] = 1.0 / (1.0 + em);
            } else {
                const double n = bose_occupation(w, beta_);
                a_[i] = std::tanh(0.5 * beta_ * w) - n;
                b_[i] = n + 1.0;
            }
        }
    }

    BathKind kind_;
    double beta_;
    SpectralMeasure measure_;
    SpinCorrelationForm spin_form_;
    std::vector<double> a_, b_;
};

// One-shot conveniences; each call rebuilds the quadrature.
inline cplx bcorr_bosonic(double lambda, double t, BathSpec spec) {
    spec.kind = BathKind::bosonic;
    return BathCorrelations(spec).bcorr(lambda, t);
}

inline cplx bcorr_spin(double lambda, double t, BathSpec spec) {
    spec.kind = BathKind::spin;
    return BathCorrelations(spec).bcorr(lambda, t);
}

inline cplx imag_corr(double lambda, double lambda_prime, const BathSpec& spec) {
    return BathCorrelations(spec).imag_corr(lambda, lambda_prime);
}

inline cplx real_corr(double tau, const BathSpec& spec) { return BathCorrelations(spec).real_corr(tau); }

} // namespace corrtcl::bath
