#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "twofluid/errors.hpp"
#include "twofluid/filter_bank.hpp"
#include "twofluid/spectral_field.hpp"

namespace twofluid {

/// Homogeneous Besov space parameters.
struct BesovSpec {
    double s = 0.0;
    double p = 2.0;
    double r = 1.0;

    BesovSpec() = default;
    BesovSpec(double s_, double p_, double r_) : s(s_), p(p_), r(r_) { validate(); }
    void validate() const {
        if (!std::isfinite(s)) throw invalid_input("BesovSpec: s must be finite");
        if (!(p >= 1.0)) throw invalid_input("BesovSpec: p must lie in [1, inf]");
        if (!(r >= 1.0)) throw invalid_input("BesovSpec: r must lie in [1, inf]");
    }
};

namespace besov_detail {

/// ell^r reduction of per-shell values a_j (already weighted).
inline double lr_reduce(const std::vector<double>& a, double r) {
    if (std::isinf(r)) {
        double mx = 0.0;
        for (double v : a) mx = std::max(mx, v);
        return mx;
    }
    double acc = 0.0;
    for (double v : a) acc += std::pow(v, r);
    return std::pow(acc, 1.0 / r);
}

} // namespace besov_detail

/// Per-shell weighted block norms 2^{js} ||Delta_j f||_{L^p} over a j-range.
inline std::vector<double> shell_norms(const SpectralField& f, const BesovSpec& spec,
                                       const DyadicFilterBank& bank, int j_lo, int j_hi) {
    spec.validate();
    std::vector<double> a;
    for (int j = std::max(j_lo, bank.j_min()); j <= std::min(j_hi, bank.j_max()); ++j) {
        double w = bank.block(f, j).lp_norm(spec.p);
        a.push_back(std::pow(2.0, spec.s * j) * w);
    }
    return a;
}

inline double besov_norm(const SpectralField& f, const BesovSpec& spec, const DyadicFilterBank& bank) {
    auto a = shell_norms(f, spec, bank, bank.j_min(), bank.j_max());
    return besov_detail::lr_reduce(a, spec.r);
}

/// Truncated norms; both include the threshold shell j0, mirroring the
/// low/high sum convention with its one-shell overlap.
inline double besov_norm_low(const SpectralField& f, const BesovSpec& spec, const DyadicFilterBank& bank) {
    auto a = shell_norms(f, spec, bank, bank.j_min(), bank.j0());
    return besov_detail::lr_reduce(a, spec.r);
}

inline double besov_norm_high(const SpectralField& f, const BesovSpec& spec, const DyadicFilterBank& bank) {
    auto a = shell_norms(f, spec, bank, bank.j0(), bank.j_max());
    return besov_detail::lr_reduce(a, spec.r);
}

/// Trapezoid L^rho norm in time of samples v(t_i); rho = inf gives sup.
inline double time_lr_norm(const std::vector<double>& times, const std::vector<double>& v, double rho) {
    if (times.size() != v.size()) throw invalid_input("time_lr_norm: length mismatch");
    if (std::isinf(rho)) {
        double mx = 0.0;
        for (double x : v) mx = std::max(mx, x);
        return mx;
    }
    if (times.size() < 2) throw invalid_input("time_lr_norm: need at least 2 time samples");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        double dt = times[i + 1] - times[i];
        if (!(dt > 0.0)) throw invalid_input("time_lr_norm: times must increase strictly");
        acc += 0.5 * dt * (std::pow(v[i], rho) + std::pow(v[i + 1], rho));
    }
    return std::pow(acc, 1.0 / rho);
}

/// Chemin-Lerner norm from a precomputed block-norm table
/// w[jrel][ti] = ||Delta_{j_lo+jrel} f(t_i)||_{L^p}: the time norm is taken
/// inside the shell sum.
inline double chemin_lerner_from_blocks(const std::vector<double>& times,
                                        const std::vector<std::vector<double>>& w, int j_lo, double rho,
                                        double s, double r) {
    std::vector<double> a;
    a.reserve(w.size());
    for (std::size_t jr = 0; jr < w.size(); ++jr) {
        double tn = time_lr_norm(times, w[jr], rho);
        a.push_back(std::pow(2.0, s * (j_lo + static_cast<int>(jr))) * tn);
    }
    return besov_detail::lr_reduce(a, r);
}

/// Chemin-Lerner norm of a recorded field series (time norm inside j).
inline double chemin_lerner_norm(const std::vector<double>& times, const std::vector<SpectralField>& fields,
                                 double rho, const BesovSpec& spec, const DyadicFilterBank& bank) {
    spec.validate();
    if (times.size() != fields.size() || times.empty())
        throw invalid_input("chemin_lerner_norm: empty or mismatched series");
    if (!std::isinf(rho) && times.size() < 2)
        throw invalid_input("chemin_lerner_norm: need at least 2 samples for finite rho");
    std::vector<std::vector<double>> w;
    for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
        std::vector<double> row(times.size());
        for (std::size_t i = 0; i < times.size(); ++i) row[i] = bank.block(fields[i], j).lp_norm(spec.p);
        w.push_back(std::move(row));
    }
    return chemin_lerner_from_blocks(times, w, bank.j_min(), rho, spec.s, spec.r);
}

/// L^rho_T(Besov) companion (shell sum inside, time norm outside).
inline double time_besov_norm(const std::vector<double>& times, const std::vector<SpectralField>& fields,
                              double rho, const BesovSpec& spec, const DyadicFilterBank& bank) {
    if (times.size() != fields.size() || times.empty())
        throw invalid_input("time_besov_norm: empty or mismatched series");
    std::vector<double> v(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) v[i] = besov_norm(fields[i], spec, bank);
    return time_lr_norm(times, v, rho);
}

} // namespace twofluid
