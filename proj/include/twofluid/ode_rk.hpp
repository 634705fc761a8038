#pragma once

#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "twofluid/errors.hpp"
#include "twofluid/types.hpp"

namespace twofluid {

/// Adaptive Dormand-Prince 5(4) integrator for small ODE systems.
/// Serves as the independent oracle for the closed-form propagators, so it
/// never touches the Green-matrix formulas: only the raw right-hand side.
inline Eigen::VectorXcd integrate_ode(const std::function<Eigen::VectorXcd(double, const Eigen::VectorXcd&)>& rhs,
                                      Eigen::VectorXcd y, double t0, double t1, double tol = 1e-12) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    if (t1 == t0) return y;
    double t = t0;
    double h = (t1 - t0) / 64.0;
    Eigen::VectorXcd k1 = rhs(t, y);
    int steps = 0;
    while (t < t1) {
        if (++steps > 2000000) throw no_convergence("integrate_ode: step limit exceeded");
        h = std::min(h, t1 - t);
        Eigen::VectorXcd k2 = rhs(t + c2 * h, y + h * (a21 * k1));
        Eigen::VectorXcd k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        Eigen::VectorXcd k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        Eigen::VectorXcd k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        Eigen::VectorXcd k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        Eigen::VectorXcd ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        Eigen::VectorXcd k7 = rhs(t + h, ynew);
        Eigen::VectorXcd err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double scale = tol * (1.0 + std::max(y.norm(), ynew.norm()));
        double enorm = err.norm() / scale;
        if (enorm <= 1.0) {
            t += h;
            y = std::move(ynew);
            k1 = std::move(k7);
        }
        double factor = (enorm > 0.0) ? 0.9 * std::pow(enorm, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        if (!(h > 0.0) || !std::isfinite(h)) throw no_convergence("integrate_ode: step size underflow");
    }
    return y;
}

/// Convenience overload for constant-matrix systems y' = A y.
inline Eigen::VectorXcd integrate_linear_ode(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y0,
                                             double t, double tol = 1e-12) {
    return integrate_ode([&A](double, const Eigen::VectorXcd& y) { return Eigen::VectorXcd(A * y); }, y0,
                         0.0, t, tol);
}

} // namespace twofluid
