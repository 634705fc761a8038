#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "twofluid/errors.hpp"
#include "twofluid/types.hpp"

namespace twofluid {

enum class GreenBranch { oscillatory, critical, overdamped };

/// Fourier-space Green matrix of the scalar model system
///   da/dt =  k^2 v,   dv/dt = -k^2 a - nu k^2 v
/// acting on (a, v), i.e. the per-mode form of the coupled
/// capillary-viscous pair. Entries are exact in all three discriminant
/// branches of lambda^2 + nu k^2 lambda + k^4.
struct Green2x2 {
    double nu = 0.0;
    double k = 0.0;
    double t = 0.0;
    std::array<std::array<double, 2>, 2> entries{};
    GreenBranch branch = GreenBranch::oscillatory;
    std::complex<double> lambda_plus{};
    std::complex<double> lambda_minus{};

    double max_entry() const {
        double m = 0.0;
        for (const auto& row : entries)
            for (double e : row) m = std::max(m, std::abs(e));
        return m;
    }
};

inline std::pair<std::complex<double>, std::complex<double>> green_eigenvalues(double nu, double k) {
    std::complex<double> disc = std::sqrt(std::complex<double>(nu * nu / 4.0 - 1.0, 0.0));
    double k2 = k * k;
    return {-0.5 * nu * k2 + k2 * disc, -0.5 * nu * k2 - k2 * disc};
}

/// Mode system matrix of the (a, v) pair; the propagator oracle integrates
/// this directly.
inline Eigen::Matrix2d green_mode_matrix(double nu, double k) {
    Eigen::Matrix2d m;
    double k2 = k * k;
    m << 0.0, k2, -k2, -nu * k2;
    return m;
}

/// Discriminant branches are selected with an absolute band on nu^2 - 4;
/// inside the band the critical formula (the analytic limit of both sides)
/// is used. The critical (1,2) entry is k^2 t e^{-nu k^2 t / 2}: the form
/// forced by G(0) = I and the nu^2 -> 4 limit.
inline Green2x2 green_2x2(double nu, double k, double t, double branch_band = 1e-8) {
    if (!(nu > 0.0)) throw invalid_input("green_2x2: nu must be positive");
    if (!(k > 0.0)) throw invalid_input("green_2x2: k must be positive");
    if (!(t >= 0.0)) throw invalid_input("green_2x2: t must be nonnegative");

    Green2x2 g;
    g.nu = nu;
    g.k = k;
    g.t = t;
    std::tie(g.lambda_plus, g.lambda_minus) = green_eigenvalues(nu, k);

    const double k2 = k * k;
    const double z = k2 * t;
    const double damp = std::exp(-0.5 * nu * z);
    const double disc = nu * nu - 4.0;

    if (std::abs(disc) <= branch_band) {
        g.branch = GreenBranch::critical;
        g.entries = {{{damp * (1.0 + 0.5 * nu * z), damp * z},
                      {-damp * z, damp * (1.0 - 0.5 * nu * z)}}};
    } else if (disc < 0.0) {
        g.branch = GreenBranch::oscillatory;
        double h = std::sqrt(1.0 - nu * nu / 4.0);
        double s = std::sin(h * z), c = std::cos(h * z);
        g.entries = {{{damp * (c + 0.5 * nu / h * s), damp * s / h},
                      {-damp * s / h, damp * (c - 0.5 * nu / h * s)}}};
    } else {
        g.branch = GreenBranch::overdamped;
        double w = std::sqrt(nu * nu / 4.0 - 1.0);
        double s = std::sinh(w * z), c = std::cosh(w * z);
        g.entries = {{{damp * (c + 0.5 * nu / w * s), damp * s / w},
                      {-damp * s / w, damp * (c - 0.5 * nu / w * s)}}};
    }
    return g;
}

} // namespace twofluid
