#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "twofluid/errors.hpp"

namespace twofluid {

/// Per-shell block norms of one component group at one Lebesgue exponent:
/// w[j - j_lo][ti] = ||Delta_j (group)(t_i)||_{L^p}.
struct BlockChannel {
    std::string group; // "all", "rho", "vel", "grad"
    double p = 2.0;
    int j_lo = 0;
    std::vector<std::vector<double>> w;

    int j_hi() const { return j_lo + static_cast<int>(w.size()) - 1; }
};

/// A named scalar time series (plain norms, functionals, diagnostics).
struct ScalarChannel {
    std::string id;
    std::vector<double> v;
};

/// Time-stamped norm data recorded from a solver run or assembled by the
/// linear quadrature; everything the decay functionals need.
struct NormSeries {
    std::vector<double> times;
    std::vector<BlockChannel> blocks;
    std::vector<ScalarChannel> scalars;

    const BlockChannel& block_channel(const std::string& group, double p) const {
        for (const auto& b : blocks)
            if (b.group == group && b.p == p) return b;
        throw invalid_input("NormSeries: missing block channel " + group);
    }
    bool has_block_channel(const std::string& group, double p) const {
        for (const auto& b : blocks)
            if (b.group == group && b.p == p) return true;
        return false;
    }
    const ScalarChannel& scalar_channel(const std::string& id) const {
        for (const auto& s : scalars)
            if (s.id == id) return s;
        throw invalid_input("NormSeries: missing scalar channel " + id);
    }

    /// Besov norm (ell^r over shells of 2^{js} block norms) of one group at
    /// one time index, restricted to shells [j_min, j_max].
    double besov_at(const std::string& group, double p, double s, double r, std::size_t ti, int j_min,
                    int j_max) const {
        const BlockChannel& b = block_channel(group, p);
        double acc = 0.0, mx = 0.0;
        for (int j = std::max(j_min, b.j_lo); j <= std::min(j_max, b.j_hi()); ++j) {
            double a = std::pow(2.0, s * j) * b.w[static_cast<std::size_t>(j - b.j_lo)][ti];
            if (std::isinf(r))
                mx = std::max(mx, a);
            else
                acc += std::pow(a, r);
        }
        return std::isinf(r) ? mx : std::pow(acc, 1.0 / r);
    }
};

} // namespace twofluid
