#pragma once

#include <algorithm>

#include "twofluid/closure.hpp"
#include "twofluid/spectral_field.hpp"

namespace twofluid {

/// Perturbation state of the two-fluid system: c = R - 1 per phase plus the
/// two velocity fields.
struct FieldState {
    SpectralField c_plus, c_minus;
    SpectralField u_plus, u_minus;
    double time = 0.0;

    static FieldState equilibrium(const Grid& g) {
        FieldState st{SpectralField::scalar(g), SpectralField::scalar(g),
                      SpectralField::vector_field(g), SpectralField::vector_field(g), 0.0};
        return st;
    }

    const Grid& grid() const { return c_plus.grid(); }

    double min_mass() const {
        double m = kInf;
        for (const SpectralField* c : {&c_plus, &c_minus})
            for (double v : c->phys()) m = std::min(m, 1.0 + v);
        return m;
    }
    bool masses_positive() const { return min_mass() > 0.0; }

    double mass_plus() const { return c_plus.mean(); }
    double mass_minus() const { return c_minus.mean(); }
};

/// Physical model bundle: pressure laws, raw viscosities and everything
/// derived from them at the (1,1) state.
struct TwoFluidModel {
    PressureLaw law_plus{2.0, 1.0};
    PressureLaw law_minus{2.0, 1.0};
    EquilibriumCoefficients coeffs;
    CoeffFieldEvaluator evaluator;

    TwoFluidModel(const PressureLaw& lp, const PressureLaw& lm, double mu_p, double mu_m,
                  double lambda_p, double lambda_m)
        : law_plus(lp), law_minus(lm),
          coeffs(equilibrium_coefficients(lp, lm, mu_p, mu_m, lambda_p, lambda_m)),
          evaluator(lp, lm) {}

    static TwoFluidModel symmetric_default() {
        return TwoFluidModel(PressureLaw{2.0, 1.0}, PressureLaw{2.0, 1.0}, 1.0, 1.0, 0.0, 0.0);
    }
};

} // namespace twofluid
