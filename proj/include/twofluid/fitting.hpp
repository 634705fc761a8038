#pragma once

#include <cmath>
#include <vector>

#include "twofluid/errors.hpp"

namespace twofluid {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // max |log residual| over the window
    std::size_t samples = 0;
    double t_lo = 0.0, t_hi = 0.0;
};

/// Least-squares slope of log(value) against log<t>, <t> = 1 + t, over the
/// samples falling inside [t_lo, t_hi].
inline FitResult fit_decay(const std::vector<double>& times, const std::vector<double>& values,
                           double t_lo, double t_hi) {
    if (times.size() != values.size()) throw invalid_input("fit_decay: length mismatch");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_lo || times[i] > t_hi) continue;
        if (!(values[i] > 0.0)) throw invalid_input("fit_decay: values must be positive in the window");
        x.push_back(std::log(1.0 + times[i]));
        y.push_back(std::log(values[i]));
    }
    if (x.size() < 8) throw invalid_input("fit_decay: need at least 8 samples in the window");
    double sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sxx += x[i] * x[i];
        sy += y[i];
        sxy += x[i] * y[i];
    }
    double n = static_cast<double>(x.size());
    FitResult r;
    r.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    r.intercept = (sy - r.slope * sx) / n;
    for (std::size_t i = 0; i < x.size(); ++i)
        r.residual = std::max(r.residual, std::abs(y[i] - r.slope * x[i] - r.intercept));
    r.samples = x.size();
    r.t_lo = t_lo;
    r.t_hi = t_hi;
    return r;
}

} // namespace twofluid
