// correlation_term.hpp — The initial-correlation operator
//
//     J^R_corr(beta, t) = int_0^beta F^R(lambda, t) B_corr(lambda, t) dlambda,
//     F^R(lambda, t)    = U_S(t) Omega e^{lambda H_S0} F e^{-lambda H_S0} Omega^+ U_S^+(t),
//
// and the master-equation term -(i/2)([rho J, F] - h.c.) built from it.
//
// Two independent routes to F^R: the closed-form collective-spin rotation
// coefficients (F = Jz, H = eps Jz + Delta Jx) and a direct
// matrix-exponential evaluation that works for any F and H.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "corrtcl/bath.hpp"
#include "corrtcl/initial_state.hpp"
#include "corrtcl/linalg.hpp"
#include "corrtcl/quadrature.hpp"

namespace corrtcl {

// Preparation (eps0, delta0) and evolution (eps, delta) Hamiltonian parameters.
struct ModelParams {
    double eps0{4.0};
    double delta0{0.0};
    double eps{4.0};
    double delta{0.0};

    double delta_prime() const { return std::hypot(eps0, delta0); }
    double delta_tilde() const { return std::hypot(eps, delta); }

    OperatorMatrix h_s0(const SpinSystem& sys) const { return eps0 * sys.jz + delta0 * sys.jx; }
    OperatorMatrix h_s(const SpinSystem& sys) const { return eps * sys.jz + delta * sys.jx; }
};

struct AlphaCoeffs {
    cplx a1, a2, a3; // F^R = a1 Jx + a2 Jy + a3 Jz
};

// Closed-form F^R(lambda, t) coefficients for F = Jz and Omega = e^{i pi Jy/2}.
// e^{lambda H_S0} Jz e^{-lambda H_S0} = a . J; U(t) Jx U^+ = b . J,
// U(t) Jy U^+ = c . J, U(t) Jz U^+ = d . J with U(t) = e^{-i H_S t}.
inline AlphaCoeffs alpha_eval(double lambda, double t, const ModelParams& p) {
    const double dp = p.delta_prime();
    const double dt = p.delta_tilde();
    detail::require(dp > 0.0, "alpha_eval: eps0 = delta0 = 0 has no closed form; use generic_FR");
    detail::require(dt > 0.0, "alpha_eval: eps = delta = 0 has no closed form; use generic_FR");
    const double e0 = p.eps0, d0 = p.delta0, e = p.eps, d = p.delta;

    const double ch = std::cosh(lambda * dp), sh = std::sinh(lambda * dp);
    const cplx ax = e0 * d0 / (dp * dp) * (1.0 - ch);
    const cplx ay = cplx{0.0, -d0 / dp * sh};
    const cplx az = (e0 * e0 + d0 * d0 * ch) / (dp * dp);

    const double c = std::cos(dt * t), s = std::sin(dt * t);
    const double bx = (d * d + e * e * c) / (dt * dt);
    const double by = e / dt * s;
    const double bz = e * d / (dt * dt) * (1.0 - c);
    const double cx = -e / dt * s;
    const double cy = c;
    const double cz = d / dt * s;
    const double dx = e * d / (dt * dt) * (1.0 - c);
    const double dy = -d / dt * s;
    const double dz = 1.0 + d * d / (dt * dt) * (c - 1.0);

    return {ax * dx + ay * cx - az * bx, ax * dy + ay * cy - az * by, ax * dz + ay * cz - az * bz};
}

// Direct F^R(lambda, t) through eigendecompositions of H_S0 and H_S.
inline OperatorMatrix generic_FR(double lambda, double t, const SpinSystem& sys, const PreparationSpec& prep,
                                 const OperatorMatrix& h_s, const OperatorMatrix& coupling) {
    prep.validate(sys.dim);
    const HermitianSpectrum hs0(prep.h_s0(sys));
    const OperatorMatrix fr = prep.omega * hs0.similarity(coupling, cplx{lambda, 0.0}) * prep.omega.adjoint();
    return HermitianSpectrum(h_s).similarity(fr, cplx{0.0, -t});
}

// Hilbert-Schmidt projection onto (Jx, Jy, Jz).
inline AlphaCoeffs decompose_collective(const OperatorMatrix& a, const SpinSystem& sys) {
    const double norm = (sys.jz * sys.jz).trace().real();
    return {(sys.jx * a).trace() / norm, (sys.jy * a).trace() / norm, (sys.jz * a).trace() / norm};
}

struct CorrOperator {
    cplx P{0.0, 0.0}, Q{0.0, 0.0}, R{0.0, 0.0};

    OperatorMatrix assemble(const SpinSystem& sys) const { return P * sys.jx + Q * sys.jy + R * sys.jz; }
    double magnitude() const { return std::max({std::abs(P), std::abs(Q), std::abs(R)}); }
};

inline constexpr int kDefaultLambdaNodes = 48;
inline constexpr double kJcorrConvergenceTolerance = 1e-5;

// B_corr(lambda_k, t) on a fixed lambda rule for many t. The lambda
// dependence is folded into two (nodes x modes) real matrices so each time
// costs one pair of matrix-vector products.
class LambdaBcorrTable {
public:
    LambdaBcorrTable(const bath::BathCorrelations& bath, quad::Rule rule) : rule_(std::move(rule)) {
        const auto& m = bath.measure();
        const double beta = bath.beta();
        omega_ = Eigen::Map<const Eigen::VectorXd>(m.omega.data(), static_cast<Eigen::Index>(m.size()));
        const auto K = static_cast<Eigen::Index>(rule_.size());
        const auto M = static_cast<Eigen::Index>(m.size());
        forward_.resize(K, M);
        backward_.resize(K, M);
        for (Eigen::Index k = 0; k < K; ++k) {
            const double lam = rule_.nodes[static_cast<std::size_t>(k)];
            for (Eigen::Index i = 0; i < M; ++i) {
                const double w = m.omega[static_cast<std::size_t>(i)];
                const double W = m.weight[static_cast<std::size_t>(i)];
                forward_(k, i) = W * bath.coeff_a()[static_cast<std::size_t>(i)] * std::exp(-w * lam);
                backward_(k, i) = W * bath.coeff_b()[static_cast<std::size_t>(i)] * std::exp(-w * (beta - lam));
            }
        }
    }

    const quad::Rule& rule() const { return rule_; }

    Eigen::VectorXcd at(double t) const {
        Eigen::VectorXcd phase(omega_.size());
        for (Eigen::Index i = 0; i < omega_.size(); ++i) phase(i) = std::polar(1.0, omega_(i) * t);
        return forward_.cast<cplx>() * phase + backward_.cast<cplx>() * phase.conjugate();
    }

private:
    quad::Rule rule_;
    Eigen::VectorXd omega_;
    Eigen::MatrixXd forward_, backward_;
};

namespace detail {

inline CorrOperator jcorr_closed_form(const LambdaBcorrTable& table, double t, const ModelParams& p) {
    const Eigen::VectorXcd bc = table.at(t);
    CorrOperator out;
    for (std::size_t k = 0; k < table.rule().size(); ++k) {
        const AlphaCoeffs a = alpha_eval(table.rule().nodes[k], t, p);
        const cplx wb = table.rule().weights[k] * bc(static_cast<Eigen::Index>(k));
        out.P += a.a1 * wb;
        out.Q += a.a2 * wb;
        out.R += a.a3 * wb;
    }
    return out;
}

} // namespace detail

struct JcorrOptions {
    int lambda_nodes{kDefaultLambdaNodes};
    bool check_convergence{true};
};

// P, Q, R by Gauss-Legendre in lambda over alpha_i(lambda, t) B_corr(lambda, t).
// With check_convergence the rule is repeated at twice the node count and a
// relative change above 1e-5 raises NumericalError.
inline CorrOperator jcorr(double t, const bath::BathCorrelations& bath, const ModelParams& p,
                          const JcorrOptions& opts = {}) {
    detail::require(t >= 0.0, "jcorr: t must be >= 0 (got " + std::to_string(t) + ")");
    const double beta = bath.beta();
    const LambdaBcorrTable table(bath, quad::gauss_legendre(opts.lambda_nodes, 0.0, beta));
    const CorrOperator value = detail::jcorr_closed_form(table, t, p);
    if (opts.check_convergence) {
        const LambdaBcorrTable fine(bath, quad::gauss_legendre(2 * opts.lambda_nodes, 0.0, beta));
        const CorrOperator ref = detail::jcorr_closed_form(fine, t, p);
        const double change = std::max({std::abs(ref.P - value.P), std::abs(ref.Q - value.Q),
                                         std::abs(ref.R - value.R)});
        const double scale = std::max(ref.magnitude(), 1e-300);
        if (change > kJcorrConvergenceTolerance * scale && change > 1e-14)
            throw NumericalError("jcorr: lambda quadrature not converged at t=" + std::to_string(t) +
                                 " (relative change " + std::to_string(change / scale) +
                                 " on doubling " + std::to_string(opts.lambda_nodes) + " nodes)");
    }
    return value;
}

// -(i/2)([rho J, F] - h.c.)
inline OperatorMatrix correlation_rhs_term(const OperatorMatrix& rho, const OperatorMatrix& jc,
                                           const OperatorMatrix& coupling) {
    require_same_dim(rho, jc, "correlation_rhs_term");
    require_same_dim(rho, coupling, "correlation_rhs_term");
    const OperatorMatrix x = commutator(rho * jc, coupling);
    return cplx{0.0, -0.5} * (x - x.adjoint());
}

// J^R_corr tabulated on a uniform time grid t_k = k * spacing, linearly
// interpolated between nodes.
class CorrelationSeries {
public:
    CorrelationSeries() = default;
    CorrelationSeries(double spacing, std::vector<OperatorMatrix> values)
        : spacing_(spacing), values_(std::move(values)) {
        detail::require(spacing_ > 0.0 && !values_.empty(), "CorrelationSeries: empty or invalid grid");
    }

    bool empty() const { return values_.empty(); }
    double spacing() const { return spacing_; }
    std::size_t size() const { return values_.size(); }
    const OperatorMatrix& node(std::size_t k) const { return values_.at(k); }
    double t_max() const { return spacing_ * static_cast<double>(values_.size() - 1); }

    OperatorMatrix at(double t) const {
        detail::require(!values_.empty(), "CorrelationSeries: no data");
        detail::require(t >= -1e-12 && t <= t_max() * (1.0 + 1e-12) + 1e-12,
                        "CorrelationSeries: t=" + std::to_string(t) + " outside the tabulated range");
        const double x = std::clamp(t / spacing_, 0.0, static_cast<double>(values_.size() - 1));
        const auto k = static_cast<std::size_t>(std::floor(x));
        const double frac = x - static_cast<double>(k);
        if (k + 1 >= values_.size() || frac < 1e-9) return values_[std::min(k, values_.size() - 1)];
        if (frac > 1.0 - 1e-9) return values_[k + 1];
        return (1.0 - frac) * values_[k] + frac * values_[k + 1];
    }

private:
    double spacing_{0.0};
    std::vector<OperatorMatrix> values_;
};

// Tabulates the closed-form route (F = Jz models) on t_k = k * spacing, k = 0..count-1.
inline CorrelationSeries tabulate_closed_form(const SpinSystem& sys, const ModelParams& p,
                                              const bath::BathCorrelations& bath, double spacing,
                                              std::size_t count, int lambda_nodes = kDefaultLambdaNodes) {
    const LambdaBcorrTable table(bath, quad::gauss_legendre(lambda_nodes, 0.0, bath.beta()));
    std::vector<OperatorMatrix> values;
    values.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        values.push_back(detail::jcorr_closed_form(table, spacing * static_cast<double>(k), p).assemble(sys));
    return {spacing, std::move(values)};
}

// Tabulates the matrix-exponential route for arbitrary F.
inline CorrelationSeries tabulate_generic(const SpinSystem& sys, const PreparationSpec& prep,
                                          const OperatorMatrix& h_s, const OperatorMatrix& coupling,
                                          const bath::BathCorrelations& bath, double spacing, std::size_t count,
                                          int lambda_nodes = kDefaultLambdaNodes) {
    prep.validate(sys.dim);
    const LambdaBcorrTable table(bath, quad::gauss_legendre(lambda_nodes, 0.0, bath.beta()));
    const HermitianSpectrum hs0(prep.h_s0(sys));
    const HermitianSpectrum hs(h_s);
    std::vector<OperatorMatrix> fr;
    fr.reserve(table.rule().size());
    for (double lam : table.rule().nodes)
        fr.push_back(prep.omega * hs0.similarity(coupling, cplx{lam, 0.0}) * prep.omega.adjoint());

    std::vector<OperatorMatrix> values;
    values.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double t = spacing * static_cast<double>(k);
        const Eigen::VectorXcd bc = table.at(t);
        OperatorMatrix acc = OperatorMatrix::Zero(sys.dim, sys.dim);
        for (std::size_t i = 0; i < fr.size(); ++i)
            acc += (table.rule().weights[i] * bc(static_cast<Eigen::Index>(i))) * fr[i];
        values.push_back(hs.similarity(acc, cplx{0.0, -t}));
    }
    return {spacing, std::move(values)};
}

} // namespace corrtcl
