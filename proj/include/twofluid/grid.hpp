#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "twofluid/errors.hpp"

namespace twofluid {

/// Periodic grid on [0,L)^dim. Fourier modes carry integer multi-indices
/// m with -n/2 < m_i <= n/2; the physical frequency is xi = 2*pi*m/L.
struct Grid {
    int dim = 2;               // 1, 2 or 3
    int n = 64;                // points per axis, even
    double length = 2.0 * std::numbers::pi;

    Grid() = default;
    Grid(int dim_, int n_, double length_) : dim(dim_), n(n_), length(length_) {
        if (dim < 1 || dim > 3) throw invalid_input("Grid: dim must be 1, 2 or 3");
        if (n < 4 || n % 2 != 0) throw invalid_input("Grid: points per axis must be even and >= 4");
        if (!(length > 0.0)) throw invalid_input("Grid: length must be positive");
    }

    std::size_t size() const {
        std::size_t s = 1;
        for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
        return s;
    }

    double dx() const { return length / n; }
    /// Quadrature weight of one cell (volume element for L^p sums).
    double cell_volume() const { return std::pow(dx(), dim); }
    double volume() const { return std::pow(length, dim); }

    /// Signed mode index for linear index i along one axis (FFT order).
    int mode_index(int i) const { return (i <= n / 2) ? i : i - n; }

    /// Frequency vector of the flattened spectral index `idx`
    /// (row-major over axes, same layout as the field storage).
    std::array<double, 3> frequency(std::size_t idx) const {
        std::array<double, 3> xi{0.0, 0.0, 0.0};
        const double base = 2.0 * std::numbers::pi / length;
        for (int d = dim - 1; d >= 0; --d) {
            int i = static_cast<int>(idx % static_cast<std::size_t>(n));
            idx /= static_cast<std::size_t>(n);
            xi[static_cast<std::size_t>(d)] = base * mode_index(i);
        }
        return xi;
    }

    double frequency_norm(std::size_t idx) const {
        auto xi = frequency(idx);
        return std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    }

    /// Smallest nonzero |xi| on the lattice.
    double xi_min() const { return 2.0 * std::numbers::pi / length; }
    /// Largest |xi| on the lattice (corner of the Nyquist cube).
    double xi_max() const {
        return 2.0 * std::numbers::pi / length * (n / 2) * std::sqrt(static_cast<double>(dim));
    }

    /// True when any axis of the flattened spectral index sits on the
    /// self-conjugate Nyquist plane m = n/2.
    bool on_nyquist(std::size_t idx) const {
        for (int d = dim - 1; d >= 0; --d) {
            int i = static_cast<int>(idx % static_cast<std::size_t>(n));
            idx /= static_cast<std::size_t>(n);
            if (i == n / 2) return true;
        }
        return false;
    }

    /// Physical coordinates of flattened sample index.
    std::array<double, 3> coords(std::size_t idx) const {
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int d = dim - 1; d >= 0; --d) {
            int i = static_cast<int>(idx % static_cast<std::size_t>(n));
            idx /= static_cast<std::size_t>(n);
            x[static_cast<std::size_t>(d)] = dx() * i;
        }
        return x;
    }

    bool operator==(const Grid& o) const {
        return dim == o.dim && n == o.n && length == o.length;
    }
};

} // namespace twofluid
