#pragma once

#include <cmath>
#include <utility>

#include "twofluid/errors.hpp"
#include "twofluid/spectral_field.hpp"

namespace twofluid {

/// Helmholtz projectors: Q picks the potential part xi (xi . u)/|xi|^2,
/// P = I - Q the divergence-free part; the zero mode is assigned to P.
inline std::pair<SpectralField, SpectralField> helmholtz(const SpectralField& u) {
    if (u.is_scalar() || u.grid().dim < 2)
        throw invalid_input("helmholtz: vector field in dimension >= 2 required");
    const Grid& g = u.grid();
    const int nc = u.components();
    SpectralField q(g, nc);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto xi = g.frequency(i);
        double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if (k2 == 0.0) continue;
        cplx dot{0.0, 0.0};
        for (int c = 0; c < nc; ++c) dot += xi[static_cast<std::size_t>(c)] * u.spec(c)[i];
        for (int c = 0; c < nc; ++c)
            q.mutable_spec(c)[i] = xi[static_cast<std::size_t>(c)] * dot / k2;
    }
    SpectralField p = u;
    p -= q;
    return {std::move(p), std::move(q)};
}

/// Lambda^ell: the |xi|^ell multiplier with the zero mode mapped to zero.
/// Negative orders require (numerically) mean-free input.
inline SpectralField fractional_derivative(const SpectralField& f, double ell) {
    if (ell < 0.0) {
        double scale = 0.0;
        for (int c = 0; c < f.components(); ++c)
            for (const auto& v : f.spec(c)) scale = std::max(scale, std::abs(v));
        for (int c = 0; c < f.components(); ++c)
            if (std::abs(f.spec(c)[0]) > 1e-12 * (1.0 + scale))
                throw invalid_input("fractional_derivative: negative order needs zero-mean input");
    }
    const Grid& g = f.grid();
    return f.multiplied([&g, ell](std::size_t i) {
        double k = g.frequency_norm(i);
        if (k == 0.0) return cplx{0.0, 0.0};
        return cplx{std::pow(k, ell), 0.0};
    });
}

} // namespace twofluid
