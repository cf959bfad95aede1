// linalg.hpp — Dense complex matrices and collective spin operators on the
// symmetric (N+1)-dimensional subspace.
//
// Basis convention: index i <-> |j, m> with m = j - i, i.e. m runs from +j
// down to -j. Every module that addresses matrix elements by Jz eigenvalue
// relies on this ordering (see m_of_index / index_of_m).

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "corrtcl/error.hpp"

namespace corrtcl {

using cplx = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

struct SpinSystem {
    int n_spins{1};
    Eigen::Index dim{2};
    OperatorMatrix jx;
    OperatorMatrix jy;
    OperatorMatrix jz;

    double j() const { return 0.5 * n_spins; }
    OperatorMatrix identity() const { return OperatorMatrix::Identity(dim, dim); }
};

inline double m_of_index(const SpinSystem& sys, Eigen::Index i) {
    return sys.j() - static_cast<double>(i);
}

inline Eigen::Index index_of_m(const SpinSystem& sys, double m) {
    return static_cast<Eigen::Index>(std::lround(sys.j() - m));
}

// Largest N accepted; dim^2 complex entries must stay desk-scale.
inline constexpr int kMaxSpins = 4096;

inline SpinSystem build_spin_system(int n_spins) {
    detail::require(n_spins >= 1, "build_spin_system: N must be >= 1 (got " +
                                      std::to_string(n_spins) + ")");
    detail::require(n_spins <= kMaxSpins, "build_spin_system: N=" + std::to_string(n_spins) +
                                              " exceeds the supported maximum " +
                                              std::to_string(kMaxSpins));
    SpinSystem sys;
    sys.n_spins = n_spins;
    sys.dim = n_spins + 1;
    const double j = sys.j();
    const Eigen::Index d = sys.dim;

    OperatorMatrix jplus = OperatorMatrix::Zero(d, d);
    sys.jz = OperatorMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const double m = j - static_cast<double>(i);
        sys.jz(i, i) = m;
        // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits at row i-1.
        if (i > 0) jplus(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const OperatorMatrix jminus = jplus.adjoint();
    sys.jx = 0.5 * (jplus + jminus);
    sys.jy = (-0.5 * kI) * (jplus - jminus);
    return sys;
}

inline void require_same_dim(const OperatorMatrix& a, const OperatorMatrix& b, const char* where) {
    detail::require(a.rows() == a.cols() && b.rows() == b.cols() && a.rows() == b.rows(),
                    std::string(where) + ": dimension mismatch (" + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()) + ")");
}

inline OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_dim(a, b, "commutator");
    return a * b - b * a;
}

inline OperatorMatrix dagger(const OperatorMatrix& a) { return a.adjoint(); }

inline cplx trace(const OperatorMatrix& a) {
    detail::require(a.rows() == a.cols(), "trace: matrix is not square");
    return a.trace();
}

// Tr(rho A) without forming the product.
inline cplx expectation(const OperatorMatrix& rho, const OperatorMatrix& a) {
    require_same_dim(rho, a, "expectation");
    return (rho.transpose().array() * a.array()).sum();
}

inline double max_abs(const OperatorMatrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const OperatorMatrix& a) { return max_abs(a - a.adjoint()); }

inline bool is_hermitian(const OperatorMatrix& a, double tol = 1e-12) {
    return a.rows() == a.cols() && hermiticity_defect(a) <= tol * std::max(1.0, max_abs(a));
}

inline OperatorMatrix hermitize(const OperatorMatrix& a) { return 0.5 * (a + a.adjoint()); }

// Eigendecomposition H = V diag(E) V^dagger of a hermitian matrix, reused
// for every function of H the solver needs.
class HermitianSpectrum {
public:
    explicit HermitianSpectrum(const OperatorMatrix& h) {
        detail::require(h.rows() == h.cols() && h.rows() > 0, "HermitianSpectrum: empty or non-square input");
        detail::require(is_hermitian(h), "HermitianSpectrum: input is not hermitian (defect " +
                                             std::to_string(hermiticity_defect(h)) + ")");
        Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(hermitize(h));
        if (es.info() != Eigen::Success) throw NumericalError("HermitianSpectrum: eigensolver failed");
        energies_ = es.eigenvalues();
        vectors_ = es.eigenvectors();
    }

    const RealVector& energies() const { return energies_; }
    const OperatorMatrix& vectors() const { return vectors_; }
    Eigen::Index dim() const { return energies_.size(); }

    // e^{zH}; `shift` is subtracted from every eigenvalue first, which keeps
    // e^{-beta H} finite when beta*E is large.
    OperatorMatrix exp(cplx z, double shift = 0.0) const {
        Eigen::VectorXcd d(dim());
        for (Eigen::Index k = 0; k < dim(); ++k) d(k) = std::exp(z * (energies_(k) - shift));
        return vectors_ * d.asDiagonal() * vectors_.adjoint();
    }

    OperatorMatrix to_eigenbasis(const OperatorMatrix& a) const { return vectors_.adjoint() * a * vectors_; }
    OperatorMatrix from_eigenbasis(const OperatorMatrix& a) const { return vectors_ * a * vectors_.adjoint(); }

    // e^{zH} A e^{-zH}, evaluated elementwise in the eigenbasis.
    OperatorMatrix similarity(const OperatorMatrix& a, cplx z) const {
        OperatorMatrix ae = to_eigenbasis(a);
        for (Eigen::Index r = 0; r < dim(); ++r)
            for (Eigen::Index c = 0; c < dim(); ++c) ae(r, c) *= std::exp(z * (energies_(r) - energies_(c)));
        return from_eigenbasis(ae);
    }

private:
    RealVector energies_;
    OperatorMatrix vectors_;
};

inline OperatorMatrix herm_propagator(const OperatorMatrix& h, cplx z) {
    return HermitianSpectrum(h).exp(z);
}

} // namespace corrtcl
