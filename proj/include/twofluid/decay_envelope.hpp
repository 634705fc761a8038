#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "twofluid/errors.hpp"
#include "twofluid/green2x2.hpp"
#include "twofluid/linear_symbol.hpp"

namespace twofluid {

/// Fitted exponential decay envelope |G(xi, t)| <= C e^{-theta k^2 t}.
struct DecayEnvelope {
    double theta = 0.0;     // fitted exponential rate in k^2 t
    double prefactor = 1.0; // smallest C validating the bound on the samples
    double c0 = 0.0;        // low-frequency rate constant (when fitted on |xi| <= xi0)
    double xi0 = 0.0;       // low-frequency cutoff used
};

/// Least-squares fit of log(maxent) against z = k^2 t, then a backoff that
/// shrinks theta until the envelope constant drops under `cap`. Failure to
/// find any positive rate is a verification failure carrying the witnessing
/// sample.
inline DecayEnvelope fit_envelope(const std::function<double(double, double)>& max_entry,
                                  const std::vector<double>& ks, const std::vector<double>& ts,
                                  double cap = 10.0) {
    if (ks.empty() || ts.empty()) throw invalid_input("fit_envelope: empty sample sets");
    struct Sample {
        double k, t, z, y;
    };
    std::vector<Sample> samples;
    samples.reserve(ks.size() * ts.size());
    for (double k : ks) {
        if (!(k > 0.0)) throw invalid_input("fit_envelope: k samples must be positive");
        for (double t : ts) {
            double y = max_entry(k, t);
            if (!std::isfinite(y)) {
                std::ostringstream os;
                os << "fit_envelope: non-finite entry at (k=" << k << ", t=" << t << ")";
                throw verification_failure(os.str());
            }
            samples.push_back({k, t, k * k * t, y});
        }
    }

    // slope of log y vs z over samples with z > 0
    double sz = 0, szz = 0, sy = 0, szy = 0;
    std::size_t n = 0;
    for (const auto& s : samples) {
        if (!(s.z > 0.0) || !(s.y > 0.0)) continue;
        double ly = std::log(s.y);
        sz += s.z;
        szz += s.z * s.z;
        sy += ly;
        szy += s.z * ly;
        ++n;
    }
    if (n < 2) throw invalid_input("fit_envelope: not enough usable samples");
    double denom = static_cast<double>(n) * szz - sz * sz;
    double theta = -(static_cast<double>(n) * szy - sz * sy) / denom;

    auto envelope_const = [&samples](double th) {
        double c = 0.0;
        for (const auto& s : samples) c = std::max(c, s.y * std::exp(th * s.z));
        return c;
    };

    if (!(theta > 0.0)) {
        const Sample* witness = &samples.front();
        double worst = -1.0;
        for (const auto& s : samples) {
            if (s.z > 0.0 && s.y > worst) {
                worst = s.y;
                witness = &s;
            }
        }
        std::ostringstream os;
        os << "fit_envelope: no positive decay rate (fitted theta = " << theta << "), witness (k=" << witness->k
           << ", t=" << witness->t << ", |G| = " << witness->y << ")";
        throw verification_failure(os.str());
    }
    while (envelope_const(theta) > cap) {
        theta *= 0.95;
        if (theta < 1e-8) {
            std::ostringstream os;
            os << "fit_envelope: no theta > 0 satisfies prefactor cap " << cap;
            throw verification_failure(os.str());
        }
    }
    DecayEnvelope env;
    env.theta = theta;
    env.prefactor = envelope_const(theta);
    return env;
}

/// Envelope of the explicit 2x2 Green matrix.
inline DecayEnvelope fit_decay_envelope(double nu, const std::vector<double>& ks,
                                        const std::vector<double>& ts, double cap = 10.0) {
    return fit_envelope([nu](double k, double t) { return green_2x2(nu, k, t).max_entry(); }, ks, ts, cap);
}

/// Low-frequency envelope of the reduced 4x4 propagator on |xi| <= xi0,
/// i.e. the computable content of the Godunov-type bound: |U(xi,t)| <=
/// C e^{-c0 |xi|^2 t} below the cutoff.
inline DecayEnvelope fit_low_frequency_envelope(const EquilibriumCoefficients& coeffs, double xi0,
                                                const std::vector<double>& ts, int n_k = 24,
                                                double cap = 20.0) {
    if (!(xi0 > 0.0)) throw invalid_input("fit_low_frequency_envelope: xi0 must be positive");
    std::vector<double> ks;
    for (int i = 1; i <= n_k; ++i) ks.push_back(xi0 * i / n_k);
    auto maxent = [&coeffs](double k, double t) {
        Eigen::MatrixXcd P = propagator(reduce_q_symbol(k, coeffs), t);
        return P.cwiseAbs().maxCoeff();
    };
    DecayEnvelope env = fit_envelope(maxent, ks, ts, cap);
    env.c0 = env.theta;
    env.xi0 = xi0;
    return env;
}

} // namespace twofluid
