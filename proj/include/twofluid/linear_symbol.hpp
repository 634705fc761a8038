#pragma once

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "twofluid/closure.hpp"
#include "twofluid/errors.hpp"
#include "twofluid/types.hpp"

namespace twofluid {

/// Full per-mode symbol of the linearized system: d/dt (c+, u+, c-, u-) =
/// A(xi) (c+, u+, c-, u-) with the H terms switched off. Continuity rows
/// couple c only to the own-phase velocity through -i xi . ; momentum rows
/// carry -nu1 |xi|^2 diagonals, -nu2 xi (xi .) and the -i xi (beta + |xi|^2)
/// pressure/capillary couplings.
struct LinearSymbol {
    std::array<double, 3> xi{0.0, 0.0, 0.0};
    int dim = 2;
    Eigen::MatrixXcd matrix;
    EquilibriumCoefficients coeffs;
};

inline LinearSymbol build_symbol(const std::array<double, 3>& xi, int dim,
                                 const EquilibriumCoefficients& c) {
    LinearSymbol sym;
    sym.xi = xi;
    sym.dim = dim;
    sym.coeffs = c;
    const int n = 2 + 2 * dim;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
    double k2 = 0.0;
    for (int d = 0; d < dim; ++d) k2 += xi[static_cast<std::size_t>(d)] * xi[static_cast<std::size_t>(d)];
    const cplx mi{0.0, -1.0}; // -i

    auto fill_phase = [&](int row0, double beta_own, double beta_cross, int cross_row0, double nu1,
                          double nu2) {
        // continuity: c' = -i xi . u
        for (int d = 0; d < dim; ++d)
            A(row0, row0 + 1 + d) = mi * xi[static_cast<std::size_t>(d)];
        // momentum rows
        for (int d = 0; d < dim; ++d) {
            int r = row0 + 1 + d;
            A(r, row0) = mi * xi[static_cast<std::size_t>(d)] * (beta_own + k2);
            A(r, cross_row0) = mi * xi[static_cast<std::size_t>(d)] * beta_cross;
            A(r, r) += cplx{-nu1 * k2, 0.0};
            for (int e = 0; e < dim; ++e)
                A(r, row0 + 1 + e) +=
                    cplx{-nu2 * xi[static_cast<std::size_t>(d)] * xi[static_cast<std::size_t>(e)], 0.0};
        }
    };
    fill_phase(0, c.beta1, c.beta2, 1 + dim, c.nu1_plus, c.nu2_plus);
    fill_phase(1 + dim, c.beta4, c.beta3, 0, c.nu1_minus, c.nu2_minus);
    sym.matrix = std::move(A);
    return sym;
}

/// Reduced potential-part system in (c+, div Qu+, c-, div Qu-): real 4x4,
/// a function of k = |xi| only.
struct ReducedQSymbol {
    double k = 0.0;
    Eigen::Matrix4d matrix;
    EquilibriumCoefficients coeffs;
};

inline ReducedQSymbol reduce_q_symbol(double k, const EquilibriumCoefficients& c) {
    if (!(k > 0.0)) throw invalid_input("reduce_q_symbol: k must be positive");
    ReducedQSymbol sym;
    sym.k = k;
    sym.coeffs = c;
    const double k2 = k * k;
    Eigen::Matrix4d& A = sym.matrix;
    A.setZero();
    A(0, 1) = -1.0;
    A(1, 0) = k2 * (c.beta1 + k2);
    A(1, 2) = k2 * c.beta2;
    A(1, 1) = -c.nu_plus * k2;
    A(2, 3) = -1.0;
    A(3, 2) = k2 * (c.beta4 + k2);
    A(3, 0) = k2 * c.beta3;
    A(3, 3) = -c.nu_minus * k2;
    return sym;
}

/// Longitudinal (acoustic) sector in the real variables (c+, w+, c-, w-)
/// with w = i * (unit-xi . u-hat): the radial per-mode form used by the
/// whole-space quadrature. Same spectrum as the reduced Q system.
inline Eigen::Matrix4d acoustic_symbol(double k, const EquilibriumCoefficients& c) {
    const double k2 = k * k;
    Eigen::Matrix4d A;
    A.setZero();
    A(0, 1) = -k;
    A(1, 0) = k * (c.beta1 + k2);
    A(1, 2) = k * c.beta2;
    A(1, 1) = -c.nu_plus * k2;
    A(2, 3) = -k;
    A(3, 2) = k * (c.beta4 + k2);
    A(3, 0) = k * c.beta3;
    A(3, 3) = -c.nu_minus * k2;
    return A;
}

/// e^{tA} by eigendecomposition, falling back to scaling-and-squaring when
/// the eigenvector basis is ill conditioned (threshold 1e8).
inline Eigen::MatrixXcd propagator(const Eigen::MatrixXcd& A, double t, double cond_threshold = 1e8) {
    if (!(t >= 0.0)) throw invalid_input("propagator: t must be nonnegative");
    if (t == 0.0) return Eigen::MatrixXcd::Identity(A.rows(), A.cols());
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A);
    if (es.info() == Eigen::Success) {
        const Eigen::MatrixXcd& V = es.eigenvectors();
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
        double smin = svd.singularValues()(svd.singularValues().size() - 1);
        double smax = svd.singularValues()(0);
        if (smin > 0.0 && smax / smin < cond_threshold) {
            Eigen::VectorXcd ph = (es.eigenvalues() * t).array().exp();
            return V * ph.asDiagonal() * V.inverse();
        }
    }
    Eigen::MatrixXcd At = A * t;
    return At.exp();
}

inline Eigen::MatrixXcd propagator(const LinearSymbol& s, double t) { return propagator(s.matrix, t); }
inline Eigen::MatrixXcd propagator(const ReducedQSymbol& s, double t) {
    return propagator(Eigen::MatrixXcd(s.matrix.cast<cplx>()), t);
}

} // namespace twofluid
