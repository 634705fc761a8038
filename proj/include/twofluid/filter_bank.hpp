#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "twofluid/errors.hpp"
#include "twofluid/grid.hpp"
#include "twofluid/spectral_field.hpp"

namespace twofluid {

namespace lp_detail {

inline double ramp(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

/// Smooth step: 0 for t <= 0, 1 for t >= 1, C-infinity in between.
inline double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double a = ramp(t);
    return a / (a + ramp(1.0 - t));
}

/// Radial cutoff chi: 1 for r <= 3/4, 0 for r >= 4/3.
inline double chi(double r) { return smooth_step((4.0 / 3.0 - r) / (4.0 / 3.0 - 3.0 / 4.0)); }

/// Shell multiplier phi(r) = chi(r/2) - chi(r), supported in [3/4, 8/3].
inline double phi(double r) { return chi(r / 2.0) - chi(r); }

} // namespace lp_detail

/// Dyadic partition of unity on the grid's frequency lattice. Keeps every
/// shell j whose multiplier phi(2^-j |xi|) is nonzero somewhere on the
/// lattice; telescoping then covers all resolved nonzero frequencies.
class DyadicFilterBank {
public:
    DyadicFilterBank(const Grid& g, int j0) : grid_(g), j0_(j0) {
        const double ximin = g.xi_min();
        const double ximax = g.xi_max();
        // Support bounds 3/4 and 8/3 applied to the resolved band.
        int lo = static_cast<int>(std::ceil(std::log2(3.0 * ximin / 8.0)));
        int hi = static_cast<int>(std::floor(std::log2(4.0 * ximax / 3.0)));
        std::vector<double> knorm(g.size());
        for (std::size_t i = 0; i < knorm.size(); ++i) knorm[i] = g.frequency_norm(i);
        for (int j = lo; j <= hi; ++j) {
            std::vector<double> tab(g.size());
            bool any = false;
            const double scale = std::ldexp(1.0, -j);
            for (std::size_t i = 0; i < tab.size(); ++i) {
                tab[i] = lp_detail::phi(knorm[i] * scale);
                any = any || tab[i] != 0.0;
            }
            if (!any) continue;
            if (tables_.empty()) j_min_ = j;
            j_max_ = j;
            tables_.push_back(std::move(tab));
        }
        if (static_cast<int>(tables_.size()) < 3)
            throw invalid_input("DyadicFilterBank: grid too coarse to host at least 3 dyadic shells");
        if (j0_ < j_min_ - 1 || j0_ > j_max_)
            throw invalid_input("DyadicFilterBank: j0 outside the resolvable range");
    }

    /// Threshold defaults to the largest j with 2^j <= 1.
    explicit DyadicFilterBank(const Grid& g) : DyadicFilterBank(g, 0) {}

    const Grid& grid() const { return grid_; }
    int j_min() const { return j_min_; }
    int j_max() const { return j_max_; }
    int j0() const { return j0_; }

    bool in_range(int j) const { return j >= j_min_ && j <= j_max_; }

    const std::vector<double>& multiplier(int j) const {
        if (!in_range(j)) throw invalid_input("DyadicFilterBank: j out of range");
        return tables_[static_cast<std::size_t>(j - j_min_)];
    }

    /// phi(2^-j |xi|) for an arbitrary scalar frequency.
    static double shell_value(int j, double k) { return lp_detail::phi(k * std::ldexp(1.0, -j)); }
    static double low_cut_value(int j0, double k) {
        // S_{j0+1} = chi(2^-(j0+1) xi) by telescoping; covers j <= j0.
        return lp_detail::chi(k * std::ldexp(1.0, -(j0 + 1)));
    }

    /// Frequency-localized block of f.
    SpectralField block(const SpectralField& f, int j) const {
        const auto& tab = multiplier(j);
        return f.multiplied([&tab](std::size_t i) { return cplx{tab[i], 0.0}; });
    }

    /// S_q f: all blocks below q plus the mean, i.e. the chi(2^-q xi)
    /// multiplier of the continuum operator.
    SpectralField low_pass(const SpectralField& f, int q) const {
        const Grid& g = grid_;
        const double scale = std::ldexp(1.0, -q);
        return f.multiplied([&g, scale](std::size_t i) {
            return cplx{lp_detail::chi(g.frequency_norm(i) * scale), 0.0};
        });
    }

    /// (f_low, f_high): blocks j <= j0 plus the zero mode versus the rest;
    /// the parts always sum back to f exactly.
    std::pair<SpectralField, SpectralField> split_low_high(const SpectralField& f) const {
        SpectralField low = low_pass(f, j0_ + 1);
        SpectralField high = f;
        high -= low;
        return {std::move(low), std::move(high)};
    }

private:
    Grid grid_;
    int j0_ = 0;
    int j_min_ = 0;
    int j_max_ = -1;
    std::vector<std::vector<double>> tables_;
};

} // namespace twofluid
