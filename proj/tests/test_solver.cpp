// test_solver.cpp — memory kernel, right-hand side and RK4 propagation

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "corrtcl/scenario.hpp"
#include "corrtcl/tcl2_solver.hpp"

using namespace corrtcl;

namespace {

bath::BathSpec ohmic(double G = 0.05, double beta = 1.0) {
    bath::BathSpec b;
    b.G = G;
    b.beta = beta;
    return b;
}

OperatorMatrix random_density(Eigen::Index d, std::mt19937& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    OperatorMatrix a(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) a(r, c) = cplx{g(rng), g(rng)};
    OperatorMatrix rho = a * a.adjoint();
    return rho / rho.trace();
}

// Single spin, H = eps Jz + delta Jx: e^{-iH tau} = cos(w tau / 2) - i sin(w tau / 2) (n . sigma).
OperatorMatrix single_spin_fbar(double eps, double delta, double tau, const OperatorMatrix& f) {
    const double w = std::hypot(eps, delta);
    OperatorMatrix sx(2, 2), sz(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    sz << 1.0, 0.0, 0.0, -1.0;
    const OperatorMatrix ns = (eps * sz + delta * sx) / w;
    const OperatorMatrix u = std::cos(0.5 * w * tau) * OperatorMatrix::Identity(2, 2) - kI * std::sin(0.5 * w * tau) * ns;
    return u * f * u.adjoint();
}

} // namespace

TEST(KernelCache, FbarAtOriginIsCoupling) {
    const auto sys = build_spin_system(4);
    const bath::BathCorrelations bc(ohmic());
    const KernelCache k = build_kernel(4.0 * sys.jz + 0.5 * sys.jx, sys.jz, bc, 0.01, 0.1);
    EXPECT_EQ(max_abs(k.fbar(0) - sys.jz), 0.0);
    EXPECT_EQ(k.node_count(), 41u);
    EXPECT_DOUBLE_EQ(k.node_spacing(), 0.0025);
    EXPECT_NEAR(k.t_max(), 0.1, 1e-12);
}

TEST(KernelCache, CommutingCouplingIsStatic) {
    const auto sys = build_spin_system(5);
    const bath::BathCorrelations bc(ohmic());
    const KernelCache k = build_kernel(3.0 * sys.jz, sys.jz, bc, 0.02, 0.5);
    for (std::size_t i = 0; i < k.node_count(); ++i) EXPECT_LT(max_abs(k.fbar(i) - sys.jz), 1e-12);
}

TEST(KernelCache, SingleSpinFbarMatchesRotationFormula) {
    const auto sys = build_spin_system(1);
    const bath::BathCorrelations bc(ohmic());
    const KernelCache k = build_kernel(2.5 * sys.jz + 0.5 * sys.jx, sys.jz, bc, 0.01, 1.0);
    for (std::size_t i = 0; i < k.node_count(); i += 17) {
        const double tau = k.node_spacing() * static_cast<double>(i);
        EXPECT_LT(max_abs(k.fbar(i) - single_spin_fbar(2.5, 0.5, tau, sys.jz)), 1e-12);
        EXPECT_EQ(k.corr(i), bc.real_corr(tau));
    }
}

TEST(Lambda, VanishesAtOriginAndWithoutCoupling) {
    const auto sys = build_spin_system(3);
    const OperatorMatrix h = 4.0 * sys.jz + 0.5 * sys.jx;
    const KernelCache k = build_kernel(h, sys.jz, bath::BathCorrelations(ohmic()), 0.01, 1.0);
    EXPECT_EQ(max_abs(lambda_operator(0.0, k)), 0.0);
    const KernelCache z = build_kernel(h, sys.jz, bath::BathCorrelations(ohmic(0.0)), 0.01, 1.0);
    for (double t : {0.0, 0.005, 0.5, 1.0}) EXPECT_EQ(max_abs(lambda_operator(t, z)), 0.0);
}

TEST(Lambda, ShortTimeLimit) {
    const auto sys = build_spin_system(2);
    const bath::BathCorrelations bc(ohmic());
    const double dt = 1e-4;
    const KernelCache k = build_kernel(4.0 * sys.jz + 0.5 * sys.jx, sys.jz, bc, dt, 10 * dt);
    const OperatorMatrix ref = dt * bc.real_corr(0.0) * sys.jz;
    EXPECT_LT(max_abs(lambda_operator(dt, k) - ref), 1e-3 * max_abs(ref));
}

TEST(Lambda, MatchesFineTrapezoidOracle) {
    const auto sys = build_spin_system(1);
    const bath::BathCorrelations bc(ohmic());
    const KernelCache k = build_kernel(2.5 * sys.jz + 0.5 * sys.jx, sys.jz, bc, 0.004, 2.0);
    for (double t : {0.5, 1.3, 2.0}) {
        // trapezoid on 20000 cells with the endpoint correction
        const int cells = 20000;
        const double h = t / cells;
        OperatorMatrix acc = OperatorMatrix::Zero(2, 2);
        for (int i = 0; i <= cells; ++i) {
            const double tau = i * h;
            const double w = (i == 0 || i == cells) ? 0.5 : 1.0;
            acc += w * bc.real_corr(tau) * single_spin_fbar(2.5, 0.5, tau, sys.jz);
        }
        acc *= h;
        EXPECT_LT(max_abs(lambda_operator(t, k) - acc), 1e-7 * max_abs(acc)) << "t=" << t;
    }
}

TEST(Lambda, RejectsTimesOutsideCache) {
    const auto sys = build_spin_system(1);
    const KernelCache k = build_kernel(sys.jz, sys.jz, bath::BathCorrelations(ohmic()), 0.01, 0.1);
    EXPECT_THROW(lambda_operator(0.2, k), InvalidArgument);
    EXPECT_THROW(lambda_operator(-0.1, k), InvalidArgument);
}

TEST(Rhs, ZeroCouplingIsLiouvillian) {
    const auto sys = build_spin_system(4);
    const OperatorMatrix h = 4.0 * sys.jz + 0.5 * sys.jx;
    const KernelCache k = build_kernel(h, sys.jz, bath::BathCorrelations(ohmic(0.0)), 0.01, 1.0);
    std::mt19937 rng(4);
    const OperatorMatrix rho = random_density(sys.dim, rng);
    const OperatorMatrix r = rhs(rho, 0.37, k, nullptr, h, sys.jz, {});
    EXPECT_LT(max_abs(r - kI * commutator(rho, h)), 1e-14);
}

TEST(Rhs, TracelessAndHermitian) {
    std::mt19937 rng(12);
    const bath::BathCorrelations bc(ohmic());
    for (int n : {1, 3, 6}) {
        const auto sys = build_spin_system(n);
        const ModelParams p{4.0, 0.5, 2.5, 0.5};
        const OperatorMatrix h = p.h_s(sys);
        const KernelCache k = build_kernel(h, sys.jz, bc, 0.01, 1.0);
        const CorrelationSeries jc = tabulate_closed_form(sys, p, bc, 0.005, 201);
        for (double t : {0.0, 0.3, 0.995}) {
            const OperatorMatrix r = rhs(random_density(sys.dim, rng), t, k, &jc, h, sys.jz, {});
            EXPECT_LT(std::abs(r.trace()), 1e-12);
            EXPECT_LT(hermiticity_defect(r), 1e-12);
        }
    }
}

TEST(Rhs, PureDephasingConservesPopulations) {
    std::mt19937 rng(21);
    const auto sys = build_spin_system(5);
    const ModelParams p{4.0, 0.0, 2.5, 0.0};
    const bath::BathCorrelations bc(ohmic());
    const OperatorMatrix h = p.h_s(sys);
    const KernelCache k = build_kernel(h, sys.jz, bc, 0.01, 1.0);
    const CorrelationSeries jc = tabulate_closed_form(sys, p, bc, 0.005, 201);
    const OperatorMatrix r = rhs(random_density(sys.dim, rng), 0.41, k, &jc, h, sys.jz, {});
    EXPECT_LT(r.diagonal().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Evolve, FreePrecession) {
    const auto sys = build_spin_system(4);
    const auto prep = PreparationSpec::rotation(sys, 4.0, 0.0);
    const OperatorMatrix rho0 = prepare_uncorrelated(sys, prep, 1.0);
    const OperatorMatrix h = 2.5 * sys.jz;
    const KernelCache k = build_kernel(h, sys.jz, bath::BathCorrelations(ohmic(0.0)), 0.004, 3.0);
    const Trajectory tr = evolve(sys, rho0, h, sys.jz, k, nullptr, 0.004, 3.0);
    ASSERT_EQ(tr.times.size(), 751u);
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        EXPECT_NEAR(tr.jx[i], tr.jx[0] * std::cos(2.5 * tr.times[i]), 1e-6);
}

TEST(Evolve, StepHalvingConverges) {
    for (const char* name : {"fig1", "fig4"}) {
        auto cfg = *find_preset(name);
        cfg.t_max = 2.0;
        const auto coarse = run_scenario(cfg, false);
        cfg.dt *= 0.5;
        const auto fine = run_scenario(cfg, false);
        for (std::size_t i = 0; i < coarse.times.size(); ++i) {
            EXPECT_NEAR(coarse.jx_corr[i], fine.jx_corr[2 * i], 1e-6) << name;
            EXPECT_NEAR(coarse.jx_uncorr[i], fine.jx_uncorr[2 * i], 1e-6) << name;
        }
    }
}

TEST(Evolve, PreservesTraceAndHermiticity) {
    for (const char* name : {"fig2", "fig5", "fig13"}) {
        const auto rep = run_scenario(*find_preset(name), false);
        EXPECT_LT(rep.max_trace_drift, 1e-8) << name;
        EXPECT_LT(rep.max_hermiticity_defect, 1e-9) << name;
    }
}

TEST(Evolve, RejectsInconsistentInputs) {
    const auto sys = build_spin_system(2);
    const OperatorMatrix h = 4.0 * sys.jz + 0.5 * sys.jx;
    const KernelCache k = build_kernel(h, sys.jz, bath::BathCorrelations(ohmic()), 0.01, 1.0);
    const OperatorMatrix rho0 = prepare_uncorrelated(sys, PreparationSpec::rotation(sys, 4.0, 0.5), 1.0);
    SolverOptions coarse;
    coarse.max_dt = 0.005;
    EXPECT_THROW(evolve(sys, rho0, h, sys.jz, k, nullptr, 0.01, 1.0, coarse), InvalidArgument);
    EXPECT_THROW(evolve(sys, rho0, h, sys.jz, k, nullptr, 0.02, 1.0), InvalidArgument);
    EXPECT_THROW(evolve(sys, rho0, h, sys.jz, k, nullptr, 0.01, 2.0), InvalidArgument);
    EXPECT_THROW(evolve(sys, 2.0 * rho0, h, sys.jz, k, nullptr, 0.01, 1.0), InvalidArgument);
}

TEST(KernelCache, RejectsOversizedCache) {
    const auto sys = build_spin_system(200);
    const bath::BathCorrelations bc(ohmic());
    EXPECT_THROW(build_kernel(sys.jz, sys.jz, bc, 0.004, 5.0), InvalidArgument);
    EXPECT_THROW(build_kernel(sys.jz, sys.jz, bc, 0.0, 5.0), InvalidArgument);
}
