#pragma once

#include <complex>
#include <cstring>
#include <limits>
#include <map>
#include <memory>
#include <vector>

#include <fftw3.h>

#include "twofluid/errors.hpp"
#include "twofluid/types.hpp"
#include "twofluid/grid.hpp"

namespace twofluid {

namespace detail {

/// Cached in-place c2c FFTW plans, one per (dim, n, sign). Buffers are
/// fftw-allocated; callers copy through them. Not thread-safe: all FFT
/// traffic is expected to stay on one thread (fields are not concurrently
/// mutable anyway).
class FftEngine {
public:
    static FftEngine& instance() {
        static FftEngine e;
        return e;
    }

    // sign: FFTW_FORWARD or FFTW_BACKWARD, both unnormalized.
    void execute(const Grid& g, int sign, const cplx* in, cplx* out) {
        Entry& e = entry(g, sign);
        std::memcpy(e.buf, in, g.size() * sizeof(cplx));
        fftw_execute(e.plan);
        std::memcpy(out, e.buf, g.size() * sizeof(cplx));
    }

    ~FftEngine() {
        for (auto& [k, e] : plans_) {
            fftw_destroy_plan(e.plan);
            fftw_free(e.buf);
        }
    }

private:
    struct Entry {
        fftw_plan plan{};
        fftw_complex* buf{};
    };

    Entry& entry(const Grid& g, int sign) {
        auto key = std::make_tuple(g.dim, g.n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        Entry e;
        e.buf = fftw_alloc_complex(g.size());
        std::vector<int> dims(static_cast<std::size_t>(g.dim), g.n);
        e.plan = fftw_plan_dft(g.dim, dims.data(), e.buf, e.buf, sign, FFTW_ESTIMATE);
        if (!e.plan) throw runtime_failure("FFTW plan creation failed");
        return plans_.emplace(key, e).first->second;
    }

    std::map<std::tuple<int, int, int>, Entry> plans_;
};

} // namespace detail

/// Real field (scalar or dim-vector) on a periodic grid, carried in both
/// physical samples and Fourier coefficients with lazy synchronization.
/// Convention: f(x) = sum_m fhat(m) e^{i xi_m . x}, so the forward
/// transform divides by the sample count and coefficients of a real field
/// are conjugate-symmetric.
class SpectralField {
public:
    SpectralField() = default;

    SpectralField(const Grid& g, int components)
        : grid_(g), ncomp_(components),
          phys_(static_cast<std::size_t>(components), std::vector<double>(g.size(), 0.0)),
          spec_(static_cast<std::size_t>(components), std::vector<cplx>(g.size(), cplx{0.0, 0.0})),
          phys_ok_(true), spec_ok_(true) {
        if (components != 1 && components != g.dim)
            throw invalid_input("SpectralField: components must be 1 or grid.dim");
    }

    static SpectralField scalar(const Grid& g) { return SpectralField(g, 1); }
    static SpectralField vector_field(const Grid& g) { return SpectralField(g, g.dim); }

    const Grid& grid() const { return grid_; }
    int components() const { return ncomp_; }
    bool is_scalar() const { return ncomp_ == 1; }

    const std::vector<double>& phys(int c = 0) const {
        sync_phys();
        return phys_[static_cast<std::size_t>(c)];
    }
    const std::vector<cplx>& spec(int c = 0) const {
        sync_spec();
        return spec_[static_cast<std::size_t>(c)];
    }

    /// Mutable access invalidates the other representation.
    std::vector<double>& mutable_phys(int c = 0) {
        sync_phys();
        spec_ok_ = false;
        return phys_[static_cast<std::size_t>(c)];
    }
    std::vector<cplx>& mutable_spec(int c = 0) {
        sync_spec();
        phys_ok_ = false;
        return spec_[static_cast<std::size_t>(c)];
    }

    double mean(int c = 0) const {
        if (spec_ok_) return spec_[static_cast<std::size_t>(c)][0].real();
        const auto& p = phys_[static_cast<std::size_t>(c)];
        double s = 0.0;
        for (double v : p) s += v;
        return s / static_cast<double>(p.size());
    }

    /// Apply a spectral multiplier m(idx) (complex) to every component.
    template <typename F>
    SpectralField multiplied(F&& mult) const {
        SpectralField out(grid_, ncomp_);
        for (int c = 0; c < ncomp_; ++c) {
            const auto& in = spec(c);
            auto& o = out.spec_[static_cast<std::size_t>(c)];
            for (std::size_t i = 0; i < in.size(); ++i) o[i] = mult(i) * in[i];
        }
        out.phys_ok_ = false;
        out.spec_ok_ = true;
        return out;
    }

    /// d/dx_axis via the i*xi multiplier; the axis Nyquist plane is zeroed
    /// to keep odd multipliers real-field safe.
    SpectralField derivative(int axis, int comp = -1) const {
        const Grid& g = grid_;
        auto one_comp = [&](int c) {
            std::vector<cplx> o(g.size());
            const auto& in = spec(c);
            for (std::size_t i = 0; i < in.size(); ++i) {
                auto xi = g.frequency(i);
                bool nyq = at_axis_nyquist(i, axis);
                o[i] = nyq ? cplx{0.0, 0.0} : cplx{0.0, xi[static_cast<std::size_t>(axis)]} * in[i];
            }
            return o;
        };
        if (comp >= 0 || ncomp_ == 1) {
            SpectralField out(g, 1);
            out.spec_[0] = one_comp(comp < 0 ? 0 : comp);
            out.phys_ok_ = false;
            return out;
        }
        SpectralField out(g, ncomp_);
        for (int c = 0; c < ncomp_; ++c) out.spec_[static_cast<std::size_t>(c)] = one_comp(c);
        out.phys_ok_ = false;
        return out;
    }

    SpectralField laplacian() const {
        return multiplied([this](std::size_t i) {
            double k = grid_.frequency_norm(i);
            return cplx{-k * k, 0.0};
        });
    }

    /// div of a vector field -> scalar.
    SpectralField divergence() const {
        if (is_scalar()) throw invalid_input("divergence: vector field required");
        SpectralField out(grid_, 1);
        auto& o = out.spec_[0];
        for (int c = 0; c < ncomp_; ++c) {
            const auto& in = spec(c);
            for (std::size_t i = 0; i < in.size(); ++i) {
                auto xi = grid_.frequency(i);
                if (at_axis_nyquist(i, c)) continue;
                o[i] += cplx{0.0, xi[static_cast<std::size_t>(c)]} * in[i];
            }
        }
        out.phys_ok_ = false;
        return out;
    }

    /// grad of a scalar -> vector field.
    SpectralField gradient() const {
        if (!is_scalar()) throw invalid_input("gradient: scalar field required");
        SpectralField out(grid_, grid_.dim);
        for (int d = 0; d < grid_.dim; ++d)
            out.spec_[static_cast<std::size_t>(d)] = derivative(d).spec_[0];
        out.phys_ok_ = false;
        out.spec_ok_ = true;
        return out;
    }

    /// Zero all modes with any |m_i| > n/3 (2/3-rule dealiasing ball).
    void dealias() {
        sync_spec();
        phys_ok_ = false;
        const int cut = grid_.n / 3;
        for (auto& comp : spec_) {
            for (std::size_t i = 0; i < comp.size(); ++i) {
                if (outside_cut(i, cut)) comp[i] = cplx{0.0, 0.0};
            }
        }
    }

    SpectralField& operator+=(const SpectralField& o) {
        check_same(o);
        sync_spec();
        o.sync_spec();
        phys_ok_ = false;
        for (int c = 0; c < ncomp_; ++c) {
            auto& a = spec_[static_cast<std::size_t>(c)];
            const auto& b = o.spec_[static_cast<std::size_t>(c)];
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        }
        return *this;
    }

    SpectralField& operator-=(const SpectralField& o) {
        check_same(o);
        sync_spec();
        o.sync_spec();
        phys_ok_ = false;
        for (int c = 0; c < ncomp_; ++c) {
            auto& a = spec_[static_cast<std::size_t>(c)];
            const auto& b = o.spec_[static_cast<std::size_t>(c)];
            for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
        }
        return *this;
    }

    SpectralField& operator*=(double s) {
        if (spec_ok_) {
            for (auto& comp : spec_)
                for (auto& v : comp) v *= s;
            if (phys_ok_) {
                for (auto& comp : phys_)
                    for (auto& v : comp) v *= s;
            }
        } else {
            for (auto& comp : phys_)
                for (auto& v : comp) v *= s;
        }
        return *this;
    }

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

    /// Pointwise physical-space product of two scalars (or scalar*vector),
    /// dealiased by the 2/3 rule after re-transforming.
    static SpectralField product(const SpectralField& a, const SpectralField& b, bool dealias = true) {
        if (!(a.grid_ == b.grid_)) throw invalid_input("product: grid mismatch");
        const SpectralField& s = a.is_scalar() ? a : b;
        const SpectralField& v = a.is_scalar() ? b : a;
        if (!s.is_scalar()) throw invalid_input("product: at least one factor must be scalar");
        SpectralField out(a.grid_, v.ncomp_);
        const auto& sp = s.phys();
        for (int c = 0; c < v.ncomp_; ++c) {
            const auto& vp = v.phys(c);
            auto& op = out.phys_[static_cast<std::size_t>(c)];
            for (std::size_t i = 0; i < sp.size(); ++i) op[i] = sp[i] * vp[i];
        }
        out.spec_ok_ = false;
        if (dealias) out.dealias();
        return out;
    }

    /// L^p norm by grid quadrature; components reduced pointwise in the
    /// Euclidean norm. p = infinity as grid max.
    double lp_norm(double p) const {
        sync_phys();
        const std::size_t npts = grid_.size();
        double acc = 0.0;
        double mx = 0.0;
        for (std::size_t i = 0; i < npts; ++i) {
            double m2 = 0.0;
            for (int c = 0; c < ncomp_; ++c) {
                double v = phys_[static_cast<std::size_t>(c)][i];
                m2 += v * v;
            }
            double m = std::sqrt(m2);
            if (std::isinf(p))
                mx = std::max(mx, m);
            else
                acc += std::pow(m, p);
        }
        if (std::isinf(p)) return mx;
        return std::pow(acc * grid_.cell_volume(), 1.0 / p);
    }

    double l2_norm() const {
        // Plancherel when spectral is current, else quadrature.
        if (spec_ok_) {
            double acc = 0.0;
            for (const auto& comp : spec_)
                for (const auto& v : comp) acc += std::norm(v);
            return std::sqrt(acc * grid_.volume());
        }
        return lp_norm(2.0);
    }

    /// Largest |coefficient| difference against another field.
    double max_spectral_diff(const SpectralField& o) const {
        check_same(o);
        double mx = 0.0;
        for (int c = 0; c < ncomp_; ++c) {
            const auto& a = spec(c);
            const auto& b = o.spec(c);
            for (std::size_t i = 0; i < a.size(); ++i) mx = std::max(mx, std::abs(a[i] - b[i]));
        }
        return mx;
    }

    /// Force exact conjugate symmetry (used after building coefficients
    /// by hand in spectral space).
    void symmetrize() {
        sync_spec();
        phys_ok_ = false;
        const int n = grid_.n;
        std::vector<int> idx(static_cast<std::size_t>(grid_.dim));
        for (auto& comp : spec_) {
            for (std::size_t i = 0; i < comp.size(); ++i) {
                std::size_t rest = i;
                for (int d = grid_.dim - 1; d >= 0; --d) {
                    idx[static_cast<std::size_t>(d)] = static_cast<int>(rest % static_cast<std::size_t>(n));
                    rest /= static_cast<std::size_t>(n);
                }
                std::size_t j = 0;
                for (int d = 0; d < grid_.dim; ++d) {
                    int m = (n - idx[static_cast<std::size_t>(d)]) % n;
                    j = j * static_cast<std::size_t>(n) + static_cast<std::size_t>(m);
                }
                if (j < i) continue;
                cplx avg = 0.5 * (comp[i] + std::conj(comp[j]));
                comp[i] = avg;
                comp[j] = std::conj(avg);
            }
        }
    }

private:
    void check_same(const SpectralField& o) const {
        if (!(grid_ == o.grid_) || ncomp_ != o.ncomp_)
            throw invalid_input("SpectralField: shape mismatch");
    }

    bool at_axis_nyquist(std::size_t idx, int axis) const {
        const int n = grid_.n;
        std::size_t rest = idx;
        for (int d = grid_.dim - 1; d >= 0; --d) {
            int i = static_cast<int>(rest % static_cast<std::size_t>(n));
            rest /= static_cast<std::size_t>(n);
            if (d == axis) return i == n / 2;
        }
        return false;
    }

    bool outside_cut(std::size_t idx, int cut) const {
        const int n = grid_.n;
        std::size_t rest = idx;
        for (int d = grid_.dim - 1; d >= 0; --d) {
            int i = static_cast<int>(rest % static_cast<std::size_t>(n));
            rest /= static_cast<std::size_t>(n);
            int m = (i <= n / 2) ? i : i - n;
            if (std::abs(m) > cut) return true;
        }
        return false;
    }

    void sync_phys() const {
        if (phys_ok_) return;
        auto& eng = detail::FftEngine::instance();
        std::vector<cplx> tmp(grid_.size());
        for (int c = 0; c < ncomp_; ++c) {
            eng.execute(grid_, FFTW_BACKWARD, spec_[static_cast<std::size_t>(c)].data(), tmp.data());
            auto& p = phys_[static_cast<std::size_t>(c)];
            for (std::size_t i = 0; i < tmp.size(); ++i) p[i] = tmp[i].real();
        }
        phys_ok_ = true;
    }

    void sync_spec() const {
        if (spec_ok_) return;
        auto& eng = detail::FftEngine::instance();
        std::vector<cplx> tmp(grid_.size());
        const double inv = 1.0 / static_cast<double>(grid_.size());
        for (int c = 0; c < ncomp_; ++c) {
            const auto& p = phys_[static_cast<std::size_t>(c)];
            for (std::size_t i = 0; i < p.size(); ++i) tmp[i] = cplx{p[i], 0.0};
            auto& s = spec_[static_cast<std::size_t>(c)];
            eng.execute(grid_, FFTW_FORWARD, tmp.data(), s.data());
            for (auto& v : s) v *= inv;
        }
        spec_ok_ = true;
    }

    Grid grid_{};
    int ncomp_ = 1;
    mutable std::vector<std::vector<double>> phys_;
    mutable std::vector<std::vector<cplx>> spec_;
    mutable bool phys_ok_ = true;
    mutable bool spec_ok_ = true;
};

} // namespace twofluid
