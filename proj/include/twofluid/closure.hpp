#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "twofluid/errors.hpp"

namespace twofluid {

/// Both capillary coefficients are fixed to one; the symbol is kept so the
/// capillary term stays visible at its use sites.
inline constexpr double kCapillarySigma = 1.0;

/// Barotropic pressure law P(rho) = amplitude * rho^gamma, gamma > 1.
struct PressureLaw {
    double gamma = 2.0;
    double amplitude = 1.0;

    void validate() const {
        if (!(gamma > 1.0)) throw invalid_input("PressureLaw: gamma must exceed 1");
        if (!(amplitude > 0.0)) throw invalid_input("PressureLaw: amplitude must be positive");
    }
    double pressure(double rho) const { return amplitude * std::pow(rho, gamma); }
    double dpressure(double rho) const { return amplitude * gamma * std::pow(rho, gamma - 1.0); }
    bool operator==(const PressureLaw& o) const {
        return gamma == o.gamma && amplitude == o.amplitude;
    }
};

/// Pointwise solution of the pressure-equilibrium closure at given masses.
struct ClosureState {
    double rho_plus = 0.0;
    double rho_minus = 0.0;
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    double s2_plus = 0.0;
    double s2_minus = 0.0;
    double pressure = 0.0;
    double c2 = 0.0;
};

/// Linearization constants of the reformulated system at the (1,1) state.
struct EquilibriumCoefficients {
    double beta1 = 0.0, beta2 = 0.0, beta3 = 0.0, beta4 = 0.0;
    double nu1_plus = 0.0, nu1_minus = 0.0;
    double nu2_plus = 0.0, nu2_minus = 0.0;
    double nu_plus = 0.0, nu_minus = 0.0;
    double mu_plus = 0.0, mu_minus = 0.0;
    double lambda_plus = 0.0, lambda_minus = 0.0;
};

/// Pointwise values of the nonlinear coefficient functions at one (c+, c-).
struct CoeffValues {
    double g_plus = 0.0, g_minus = 0.0, g_tilde = 0.0;
    double h_plus = 0.0, h_minus = 0.0;
    double k_plus = 0.0, k_minus = 0.0;
    double l_plus = 0.0, l_minus = 0.0;
};

namespace closure_detail {

struct Residual {
    double R_plus, R_minus;
    PressureLaw law_plus, law_minus;

    // phi(rho+) = P+(rho+) - P-(R- rho+ / (rho+ - R+)); strictly increasing
    // on (R+, inf).
    double phi(double rho_p) const {
        double rho_m = R_minus * rho_p / (rho_p - R_plus);
        return law_plus.pressure(rho_p) - law_minus.pressure(rho_m);
    }
    double dphi(double rho_p) const {
        double rho_m = R_minus * rho_p / (rho_p - R_plus);
        double gap = rho_p - R_plus;
        double s2p = law_plus.dpressure(rho_p);
        double s2m = law_minus.dpressure(rho_m);
        return s2p + s2m * R_minus * R_plus / (gap * gap);
    }
};

} // namespace closure_detail

/// Root of the pressure closure: bracket by geometric expansion from
/// R+(1+delta), bisection to a coarse width, then bracket-safeguarded
/// Newton polished to stagnation. Returned root satisfies
/// |phi(rho+)| <= tol * (1 + |P|).
inline double solve_rho_plus(double R_plus, double R_minus, const PressureLaw& law_plus,
                             const PressureLaw& law_minus, double tol = 1e-12) {
    if (!(R_plus > 0.0) || !(R_minus > 0.0)) throw invalid_input("solve_rho_plus: masses must be positive");
    if (!(tol > 0.0)) throw invalid_input("solve_rho_plus: tol must be positive");
    law_plus.validate();
    law_minus.validate();

    closure_detail::Residual f{R_plus, R_minus, law_plus, law_minus};

    double delta = 1e-6;
    double lo = R_plus * (1.0 + delta);
    int shrink = 0;
    while (f.phi(lo) >= 0.0) {
        delta *= 0.0625;
        lo = R_plus * (1.0 + delta);
        if (++shrink > 20)
            throw no_convergence("solve_rho_plus: no negative residual near rho+ = R+");
    }
    double hi = lo;
    int expand = 0;
    do {
        hi *= 2.0;
        if (++expand > 200) {
            std::ostringstream os;
            os << "solve_rho_plus: bracketing failed, last bracket [" << lo << ", " << hi << "]";
            throw no_convergence(os.str());
        }
    } while (f.phi(hi) <= 0.0);

    while (hi - lo > 1e-3 * std::max(1.0, 0.5 * (hi + lo))) {
        double mid = 0.5 * (lo + hi);
        (f.phi(mid) < 0.0 ? lo : hi) = mid;
    }

    double x = 0.5 * (lo + hi);
    double fx = f.phi(x);
    double best_x = x, best_f = std::abs(fx);
    for (int it = 0; it < 80 && fx != 0.0; ++it) {
        (fx < 0.0 ? lo : hi) = x;
        double step = fx / f.dphi(x);
        double xn = x - step;
        if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);
        if (xn == x) break;
        x = xn;
        fx = f.phi(x);
        if (std::abs(fx) < best_f) {
            best_f = std::abs(fx);
            best_x = x;
        } else if (std::abs(fx) > 4.0 * best_f && it > 4) {
            break; // rounding floor reached
        }
    }
    double tol_abs = tol * (1.0 + std::abs(law_plus.pressure(best_x)));
    if (best_f > tol_abs) {
        std::ostringstream os;
        os << "solve_rho_plus: residual " << best_f << " above tolerance " << tol_abs;
        throw no_convergence(os.str());
    }
    return best_x;
}

inline ClosureState state_from_root(double rho_p, double R_plus, double R_minus,
                                    const PressureLaw& law_plus, const PressureLaw& law_minus) {
    ClosureState st;
    st.rho_plus = rho_p;
    st.rho_minus = R_minus * rho_p / (rho_p - R_plus);
    st.alpha_plus = R_plus / rho_p;
    st.alpha_minus = 1.0 - st.alpha_plus;
    st.pressure = law_plus.pressure(rho_p);
    st.s2_plus = law_plus.gamma * st.pressure / st.rho_plus;
    st.s2_minus = law_minus.gamma * st.pressure / st.rho_minus;
    st.c2 = st.s2_minus * st.s2_plus /
            (st.alpha_minus * st.rho_plus * st.s2_plus + st.alpha_plus * st.rho_minus * st.s2_minus);
    return st;
}

inline ClosureState derived_state(double R_plus, double R_minus, const PressureLaw& law_plus,
                                  const PressureLaw& law_minus, double tol = 1e-12) {
    double rho_p = solve_rho_plus(R_plus, R_minus, law_plus, law_minus, tol);
    return state_from_root(rho_p, R_plus, R_minus, law_plus, law_minus);
}

inline EquilibriumCoefficients equilibrium_coefficients(const PressureLaw& law_plus,
                                                        const PressureLaw& law_minus, double mu_plus,
                                                        double mu_minus, double lambda_plus,
                                                        double lambda_minus) {
    if (!(mu_plus > 0.0) || !(mu_minus > 0.0))
        throw invalid_input("equilibrium_coefficients: shear viscosities must be positive");
    if (!(lambda_plus + 2.0 * mu_plus > 0.0) || !(lambda_minus + 2.0 * mu_minus > 0.0))
        throw invalid_input("equilibrium_coefficients: lambda + 2 mu must be positive");

    ClosureState st = derived_state(1.0, 1.0, law_plus, law_minus);
    EquilibriumCoefficients c;
    c.beta1 = st.c2 * st.rho_minus / st.rho_plus;
    c.beta2 = st.c2;
    c.beta3 = st.c2;
    c.beta4 = st.c2 * st.rho_plus / st.rho_minus;
    c.nu1_plus = mu_plus / st.rho_plus;
    c.nu1_minus = mu_minus / st.rho_minus;
    c.nu2_plus = (mu_plus + lambda_plus) / st.rho_plus;
    c.nu2_minus = (mu_minus + lambda_minus) / st.rho_minus;
    c.nu_plus = c.nu1_plus + c.nu2_plus;
    c.nu_minus = c.nu1_minus + c.nu2_minus;
    c.mu_plus = mu_plus;
    c.mu_minus = mu_minus;
    c.lambda_plus = lambda_plus;
    c.lambda_minus = lambda_minus;
    return c;
}

inline CoeffValues coeff_from_states(const ClosureState& st, const ClosureState& base, double c_plus,
                                     double c_minus) {
    CoeffValues v;
    v.g_plus = st.c2 * st.rho_minus / st.rho_plus - base.c2 * base.rho_minus / base.rho_plus;
    v.g_minus = st.c2 * st.rho_plus / st.rho_minus - base.c2 * base.rho_plus / base.rho_minus;
    v.g_tilde = st.c2 - base.c2;
    v.h_plus = st.c2 * st.alpha_minus / ((c_plus + 1.0) * st.s2_minus);
    v.h_minus = -st.c2 / (st.rho_minus * st.s2_minus);
    v.k_plus = -st.c2 / ((c_minus + 1.0) * st.s2_plus * st.rho_plus);
    v.k_minus = st.alpha_plus * st.c2 / ((c_minus + 1.0) * st.s2_plus);
    v.l_plus = 1.0 / st.rho_plus - 1.0 / base.rho_plus;
    v.l_minus = 1.0 / st.rho_minus - 1.0 / base.rho_minus;
    return v;
}

/// Nonlinear coefficient functions at a single perturbation pair.
inline CoeffValues coeff_functions(double c_plus, double c_minus, const PressureLaw& law_plus,
                                   const PressureLaw& law_minus, double tol = 1e-12) {
    if (!(c_plus + 1.0 > 0.0) || !(c_minus + 1.0 > 0.0))
        throw invalid_input("coeff_functions: perturbation must keep masses positive");
    ClosureState st = derived_state(c_plus + 1.0, c_minus + 1.0, law_plus, law_minus, tol);
    ClosureState base = derived_state(1.0, 1.0, law_plus, law_minus, tol);
    return coeff_from_states(st, base, c_plus, c_minus);
}

/// Vectorized closure evaluation for the solver: one warm-started Newton per
/// sample (closed form when the two laws coincide, since then rho+ = R+ + R-).
class CoeffFieldEvaluator {
public:
    CoeffFieldEvaluator(const PressureLaw& law_plus, const PressureLaw& law_minus, double tol = 1e-12)
        : lp_(law_plus), lm_(law_minus), tol_(tol), identical_(law_plus == law_minus),
          base_(derived_state(1.0, 1.0, law_plus, law_minus, tol)) {}

    const ClosureState& base_state() const { return base_; }

    ClosureState state_at(double c_plus, double c_minus) const {
        double Rp = c_plus + 1.0, Rm = c_minus + 1.0;
        if (!(Rp > 0.0) || !(Rm > 0.0))
            throw invalid_input("CoeffFieldEvaluator: mass positivity violated");
        double rho_p;
        if (identical_) {
            rho_p = Rp + Rm;
        } else {
            rho_p = warm_newton(Rp, Rm);
        }
        return state_from_root(rho_p, Rp, Rm, lp_, lm_);
    }

    CoeffValues values_at(double c_plus, double c_minus) const {
        return coeff_from_states(state_at(c_plus, c_minus), base_, c_plus, c_minus);
    }

    /// Evaluate all nine coefficient functions over parallel sample arrays.
    void evaluate(const std::vector<double>& c_plus, const std::vector<double>& c_minus,
                  std::vector<CoeffValues>& out) const {
        out.resize(c_plus.size());
        for (std::size_t i = 0; i < c_plus.size(); ++i)
            out[i] = values_at(c_plus[i], c_minus[i]);
    }

private:
    double warm_newton(double Rp, double Rm) const {
        closure_detail::Residual f{Rp, Rm, lp_, lm_};
        // Warm start at the identical-law value; falls back to the full
        // bracketed solve when Newton wanders.
        double x = Rp + Rm;
        if (x <= Rp) x = Rp * 1.5;
        for (int it = 0; it < 40; ++it) {
            double fx = f.phi(x);
            if (std::abs(fx) <= tol_ * (1.0 + std::abs(lp_.pressure(x)))) return x;
            double xn = x - fx / f.dphi(x);
            if (!(xn > Rp) || !std::isfinite(xn)) return solve_rho_plus(Rp, Rm, lp_, lm_, tol_);
            if (xn == x) return x;
            x = xn;
        }
        return solve_rho_plus(Rp, Rm, lp_, lm_, tol_);
    }

    PressureLaw lp_, lm_;
    double tol_;
    bool identical_;
    ClosureState base_;
};

} // namespace twofluid
