// tcl2_solver.hpp — Time-local second-order master equation with the
// initial-correlation term:
//
//   d rho/dt = i[rho, H_S] - (i/2)([rho J^R_corr(beta, t), F] - h.c.)
//              + ([Lambda(t) rho, F] + h.c.),
//   Lambda(t) = int_0^t Fbar(tau) C(tau) dtau,  Fbar(tau) = e^{-i H_S tau} F e^{i H_S tau},
//
// integrated with fixed-step RK4. The memory integral is a prefix integral
// over a cached quarter-step grid so each step reuses the previous value.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "corrtcl/bath.hpp"
#include "corrtcl/correlation_term.hpp"
#include "corrtcl/linalg.hpp"

namespace corrtcl {

inline constexpr double kMaxKernelBytes = 2.0e9;

// Fbar and C on tau_i = i * node_spacing (node_spacing = dt / 4), and the
// Simpson prefix integral Lambda on the RK4 half-step grid t_k = k * dt / 2.
class KernelCache {
public:
    KernelCache(const OperatorMatrix& h_s, const OperatorMatrix& coupling, const bath::BathCorrelations& bath,
                double dt, double t_max) {
        detail::require(dt > 0.0, "build_kernel: dt must be > 0");
        detail::require(t_max >= dt, "build_kernel: t_max must be >= dt");
        require_same_dim(h_s, coupling, "build_kernel");
        const auto half_steps = static_cast<std::size_t>(std::ceil(t_max / (0.5 * dt) - 1e-9));
        const std::size_t nodes = 2 * half_steps + 1;
        const double dim = static_cast<double>(h_s.rows());
        const double bytes = 3.0 * 16.0 * dim * dim * static_cast<double>(nodes);
        if (bytes > kMaxKernelBytes)
            throw InvalidArgument("build_kernel: cache needs " + std::to_string(bytes / 1e9) +
                                  " GB; increase dt or reduce t_max/N (limit 2 GB)");

        dt_ = dt;
        spacing_ = 0.25 * dt;
        const HermitianSpectrum hs(h_s);
        fbar_.reserve(nodes);
        corr_.reserve(nodes);
        for (std::size_t i = 0; i < nodes; ++i) {
            const double tau = spacing_ * static_cast<double>(i);
            fbar_.push_back(i == 0 ? coupling : hs.similarity(coupling, cplx{0.0, -tau}));
            corr_.push_back(bath.real_corr(tau));
        }
        lambda_.reserve(half_steps + 1);
        lambda_.push_back(OperatorMatrix::Zero(h_s.rows(), h_s.cols()));
        for (std::size_t k = 0; k < half_steps; ++k) {
            const std::size_t i = 2 * k;
            lambda_.push_back(lambda_.back() + (spacing_ / 3.0) * (corr_[i] * fbar_[i] + 4.0 * corr_[i + 1] * fbar_[i + 1] +
                                                                    corr_[i + 2] * fbar_[i + 2]));
        }
    }

    double dt() const { return dt_; }
    double node_spacing() const { return spacing_; }
    std::size_t node_count() const { return fbar_.size(); }
    double t_max() const { return 0.5 * dt_ * static_cast<double>(lambda_.size() - 1); }
    const OperatorMatrix& fbar(std::size_t i) const { return fbar_.at(i); }
    cplx corr(std::size_t i) const { return corr_.at(i); }

    // Lambda(t); exact on the half-step grid, linear in between.
    OperatorMatrix lambda_at(double t) const {
        detail::require(t >= -1e-12, "lambda_operator: t must be >= 0");
        detail::require(t <= t_max() * (1.0 + 1e-12) + 1e-12,
                        "lambda_operator: t=" + std::to_string(t) + " beyond cached t_max=" + std::to_string(t_max()));
        const double x = std::max(0.0, t / (0.5 * dt_));
        const auto k = static_cast<std::size_t>(std::llround(x));
        if (std::abs(x - static_cast<double>(k)) < 1e-9) return lambda_[std::min(k, lambda_.size() - 1)];
        const auto lo = static_cast<std::size_t>(std::floor(x));
        const double frac = x - static_cast<double>(lo);
        return (1.0 - frac) * lambda_[lo] + frac * lambda_[std::min(lo + 1, lambda_.size() - 1)];
    }

private:
    double dt_{0.0};
    double spacing_{0.0};
    std::vector<OperatorMatrix> fbar_;
    std::vector<cplx> corr_;
    std::vector<OperatorMatrix> lambda_;
};

inline KernelCache build_kernel(const OperatorMatrix& h_s, const OperatorMatrix& coupling,
                                const bath::BathCorrelations& bath, double dt, double t_max) {
    return {h_s, coupling, bath, dt, t_max};
}

inline OperatorMatrix lambda_operator(double t, const KernelCache& kernel) { return kernel.lambda_at(t); }

struct SolverOptions {
    bool with_corr_term{true};
    double trace_tolerance{1e-6};
    std::optional<double> max_dt{}; // resolution bound checked by evolve when set
};

// Right-hand side of the master equation at time t.
inline OperatorMatrix rhs(const OperatorMatrix& rho, double t, const KernelCache& kernel,
                          const CorrelationSeries* jc, const OperatorMatrix& h_s, const OperatorMatrix& coupling,
                          const SolverOptions& options) {
    OperatorMatrix out = kI * commutator(rho, h_s);
    if (options.with_corr_term && jc != nullptr && !jc->empty())
        out += correlation_rhs_term(rho, jc->at(t), coupling);
    const OperatorMatrix x = commutator(kernel.lambda_at(t) * rho, coupling);
    out += x + x.adjoint();
    return out;
}

struct Trajectory {
    std::vector<double> times;
    std::vector<OperatorMatrix> states;
    std::vector<double> jx;  // 2 <Jx> / N
    std::vector<double> jx2; // 4 <Jx^2> / N^2
    bool corr_state{false};
    bool corr_term{false};
    double max_trace_drift{0.0};
    double max_hermiticity_defect{0.0}; // before the per-step hermitization
    double total_hermitization{0.0};
};

inline void record_observables(Trajectory& tr, const SpinSystem& sys, double t, const OperatorMatrix& rho) {
    const double n = static_cast<double>(sys.n_spins);
    tr.times.push_back(t);
    tr.states.push_back(rho);
    tr.jx.push_back(2.0 * expectation(rho, sys.jx).real() / n);
    tr.jx2.push_back(4.0 * expectation(rho, sys.jx * sys.jx).real() / (n * n));
    tr.max_trace_drift = std::max(tr.max_trace_drift, std::abs(rho.trace() - 1.0));
}

// Classical RK4 on t_i = i * dt, i = 0..round(t_max / dt). Kernel and
// correlation series must cover [0, t_max] on the dt/2 grid.
inline Trajectory evolve(const SpinSystem& sys, const OperatorMatrix& rho0, const OperatorMatrix& h_s,
                         const OperatorMatrix& coupling, const KernelCache& kernel, const CorrelationSeries* jc,
                         double dt, double t_max, const SolverOptions& options = {}) {
    require_same_dim(rho0, h_s, "evolve");
    require_same_dim(rho0, sys.jx, "evolve");
    detail::require(dt > 0.0 && t_max >= dt, "evolve: need dt > 0 and t_max >= dt");
    if (options.max_dt)
        detail::require(dt <= *options.max_dt * (1.0 + 1e-12),
                        "evolve: dt=" + std::to_string(dt) + " does not resolve the system/bath scales; use dt <= " +
                            std::to_string(*options.max_dt));
    detail::require(std::abs(kernel.dt() - dt) <= 1e-12 * dt, "evolve: kernel was built for a different dt");
    detail::require(is_hermitian(rho0, 1e-9), "evolve: initial state is not hermitian");
    detail::require(std::abs(rho0.trace() - 1.0) <= options.trace_tolerance, "evolve: initial state trace != 1");
    const auto steps = static_cast<std::size_t>(std::llround(t_max / dt));
    detail::require(kernel.t_max() >= steps * dt * (1.0 - 1e-12), "evolve: kernel does not cover t_max");
    if (options.with_corr_term && jc != nullptr)
        detail::require(jc->t_max() >= steps * dt * (1.0 - 1e-12), "evolve: correlation series does not cover t_max");

    Trajectory tr;
    tr.corr_term = options.with_corr_term && jc != nullptr;
    tr.times.reserve(steps + 1);
    tr.states.reserve(steps + 1);
    OperatorMatrix rho = rho0;
    record_observables(tr, sys, 0.0, rho);
    auto f = [&](const OperatorMatrix& r, double t) { return rhs(r, t, kernel, jc, h_s, coupling, options); };
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = dt * static_cast<double>(i);
        const OperatorMatrix k1 = f(rho, t);
        const OperatorMatrix k2 = f(rho + (0.5 * dt) * k1, t + 0.5 * dt);
        const OperatorMatrix k3 = f(rho + (0.5 * dt) * k2, t + 0.5 * dt);
        const OperatorMatrix k4 = f(rho + dt * k3, t + dt);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double defect = hermiticity_defect(rho);
        tr.max_hermiticity_defect = std::max(tr.max_hermiticity_defect, defect);
        tr.total_hermitization += 0.5 * defect;
        rho = hermitize(rho);
        const double drift = std::abs(rho.trace() - 1.0);
        if (drift > options.trace_tolerance)
            throw NumericalError("evolve: trace drift " + std::to_string(drift) + " at t=" +
                                 std::to_string(t + dt) + "; reduce dt (currently " + std::to_string(dt) + ")");
        record_observables(tr, sys, dt * static_cast<double>(i + 1), rho);
    }
    return tr;
}

} // namespace corrtcl
