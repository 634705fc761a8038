#pragma once

#include <cmath>
#include <string>

#include "twofluid/besov.hpp"
#include "twofluid/bony.hpp"
#include "twofluid/filter_bank.hpp"

namespace twofluid {

/// Named empirical checks of the harmonic-analysis estimates: each case
/// evaluates the LHS/RHS ratio of one inequality on trial fields. The
/// harness asserts stability of the max ratio across resolutions, not a
/// specific constant.
enum class IneqCase {
    bernstein_up,
    bernstein_down,
    product_positive_s,
    product_sum_index,
    paraproduct,
    remainder,
    mixed_low_high,
};

struct IneqParams {
    double s = 0.5;    // regularity of the estimate
    double s1 = 0.4;   // first index (product_sum_index)
    double s2 = 0.4;   // second index (product_sum_index)
    double p = 2.0;    // Lebesgue exponent
    double r = 1.0;    // summation exponent
    double sigma = 1.0;// mixed low-high index
    int q = 0;         // dyadic shell of a localized trial field (Bernstein)
    int n0 = 3;        // the universal shell offset of the mixed estimate
};

inline IneqCase ineq_case_from_name(const std::string& name) {
    if (name == "bernstein-up") return IneqCase::bernstein_up;
    if (name == "bernstein-down") return IneqCase::bernstein_down;
    if (name == "product-positive-s") return IneqCase::product_positive_s;
    if (name == "product-sum-index") return IneqCase::product_sum_index;
    if (name == "paraproduct") return IneqCase::paraproduct;
    if (name == "remainder") return IneqCase::remainder;
    if (name == "mixed-low-high") return IneqCase::mixed_low_high;
    throw invalid_input("unknown inequality case: " + name);
}

inline double check_inequality(IneqCase c, const SpectralField& f, const SpectralField& g,
                               const DyadicFilterBank& bank, const IneqParams& prm) {
    const int N = f.grid().dim;
    auto ratio = [](double lhs, double rhs) { return lhs == 0.0 ? 0.0 : lhs / rhs; };

    switch (c) {
    case IneqCase::bernstein_up: {
        double lhs = f.is_scalar() ? f.gradient().lp_norm(prm.p) : f.derivative(0).lp_norm(prm.p);
        double rhs = std::pow(2.0, prm.q) * f.lp_norm(prm.p);
        return ratio(lhs, rhs);
    }
    case IneqCase::bernstein_down: {
        double sup = 0.0;
        for (int d = 0; d < N; ++d) sup = std::max(sup, f.derivative(d, 0).lp_norm(prm.p));
        double lhs = std::pow(2.0, prm.q) * f.lp_norm(prm.p);
        return ratio(lhs, sup);
    }
    case IneqCase::product_positive_s: {
        if (!(prm.s > 0.0)) throw invalid_input("product_positive_s: requires s > 0");
        BesovSpec sp(prm.s, prm.p, prm.r);
        SpectralField fg = SpectralField::product(f, g);
        double lhs = besov_norm(fg, sp, bank);
        double rhs = f.lp_norm(kInf) * besov_norm(g, sp, bank) + g.lp_norm(kInf) * besov_norm(f, sp, bank);
        return ratio(lhs, rhs);
    }
    case IneqCase::product_sum_index: {
        double np = N / prm.p;
        if (!(prm.s1 < np && prm.s2 < np && prm.s1 + prm.s2 > 0.0))
            throw invalid_input("product_sum_index: requires s1, s2 < N/p and s1 + s2 > 0");
        SpectralField fg = SpectralField::product(f, g);
        double lhs = besov_norm(fg, BesovSpec(prm.s1 + prm.s2 - np, prm.p, prm.r), bank);
        double rhs = besov_norm(f, BesovSpec(prm.s1, prm.p, prm.r), bank) *
                     besov_norm(g, BesovSpec(prm.s2, prm.p, kInf), bank);
        return ratio(lhs, rhs);
    }
    case IneqCase::paraproduct: {
        if (N < 2) throw invalid_input("paraproduct: requires N >= 2");
        double pmax = (N == 2) ? 4.0 : std::min(4.0, 2.0 * N / (N - 2.0));
        if (!(prm.p >= 2.0 && prm.p <= pmax)) throw invalid_input("paraproduct: p outside [2, min(4, 2N/(N-2))]");
        BonyParts parts = bony_decompose(f, g, bank);
        double lhs = besov_norm(parts.para_fg, BesovSpec(prm.s - 1.0 + N / 2.0 - N / prm.p, 2.0, 1.0), bank);
        double rhs = besov_norm(f, BesovSpec(N / prm.p - 1.0, prm.p, 1.0), bank) *
                     besov_norm(g, BesovSpec(prm.s, prm.p, 1.0), bank);
        return ratio(lhs, rhs);
    }
    case IneqCase::remainder: {
        if (N < 2) throw invalid_input("remainder: requires N >= 2");
        double np = N / prm.p;
        double npp = N - np; // N/p' with 1/p + 1/p' = 1
        if (!(prm.s > 1.0 - std::min(np, npp)))
            throw invalid_input("remainder: requires s > 1 - min(N/p, N/p')");
        if (!(prm.p >= 1.0 && prm.p <= 4.0)) throw invalid_input("remainder: requires 1 <= p <= 4");
        BonyParts parts = bony_decompose(f, g, bank);
        double lhs = besov_norm(parts.remainder, BesovSpec(prm.s - 1.0 + N / 2.0 - np, 2.0, 1.0), bank);
        double rhs = besov_norm(f, BesovSpec(np - 1.0, prm.p, 1.0), bank) *
                     besov_norm(g, BesovSpec(prm.s, prm.p, 1.0), bank);
        return ratio(lhs, rhs);
    }
    case IneqCase::mixed_low_high: {
        if (!(prm.p >= 2.0 && prm.p <= 4.0)) throw invalid_input("mixed_low_high: requires 2 <= p <= 4");
        if (!(prm.sigma > 0.0)) throw invalid_input("mixed_low_high: requires sigma > 0");
        double s0 = 2.0 * N / prm.p - N / 2.0;
        auto [glow, ghigh] = bank.split_low_high(g);
        (void)glow;
        SpectralField prod = SpectralField::product(f, ghigh);
        double lhs = besov_norm_low(prod, BesovSpec(-s0, 2.0, kInf), bank);
        double pstar = (prm.p == 2.0) ? kInf : 2.0 * prm.p / (prm.p - 2.0);
        double mid = bank.low_pass(f, bank.j0() + prm.n0).lp_norm(pstar);
        double rhs = (besov_norm(f, BesovSpec(prm.sigma, prm.p, 1.0), bank) + mid) *
                     besov_norm(ghigh, BesovSpec(-prm.sigma, prm.p, kInf), bank);
        return ratio(lhs, rhs);
    }
    }
    throw invalid_input("check_inequality: unhandled case");
}

} // namespace twofluid
