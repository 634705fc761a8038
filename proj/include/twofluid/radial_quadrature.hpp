#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "twofluid/errors.hpp"
#include "twofluid/filter_bank.hpp"
#include "twofluid/fitting.hpp"
#include "twofluid/linear_symbol.hpp"
#include "twofluid/norm_series.hpp"

namespace twofluid {

/// Gauss-Legendre nodes and weights on [-1, 1].
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<std::size_t>(n), 0.0);
    w.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[static_cast<std::size_t>(i)] = -z;
        x[static_cast<std::size_t>(n - 1 - i)] = z;
        w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
    }
}

/// Quadrature rule over one dyadic shell support [3/4, 8/3] * 2^j,
/// truncated at k_cap, with panel counts sized to the fastest phase the
/// integrand can accumulate while the shell still contributes.
struct ShellRule {
    int j = 0;
    std::vector<double> k, w;
};

struct RadialQuadratureConfig {
    int j_lo = -20;
    int j_hi = 0;          // usually the low/high threshold j0
    double k_cap = 8.0;    // quadrature never goes above this |xi|
    double t_max = 2000.0; // largest time the series will be evaluated at
    double phase_rate = 4.0; // bound on |d Im lambda / dk| of the symbol
    double decay_guess = 0.05; // conservative lower bound on theta for panel sizing
    int nodes_per_panel = 8;
    int max_panels = 40000;
};

inline std::vector<ShellRule> build_shell_rules(const RadialQuadratureConfig& cfg,
                                                const std::vector<double>& breakpoints = {}) {
    std::vector<double> gx, gw;
    gauss_legendre(cfg.nodes_per_panel, gx, gw);
    std::vector<ShellRule> rules;
    for (int j = cfg.j_lo; j <= cfg.j_hi; ++j) {
        double a = 0.75 * std::ldexp(1.0, j);
        double b = std::min((8.0 / 3.0) * std::ldexp(1.0, j), cfg.k_cap);
        if (!(b > a)) continue;
        // Oscillation budget: phase across the shell at the last time the
        // shell still matters (or t_max, whichever is smaller).
        double t_rel = std::min(cfg.t_max, 60.0 / (cfg.decay_guess * a * a));
        double span = (b - a) * (cfg.phase_rate + 3.0 * b) * t_rel;
        int panels = static_cast<int>(std::ceil(span / 1.5)) + 2;
        panels = std::clamp(panels, 2, cfg.max_panels);

        std::vector<double> edges;
        for (int p = 0; p <= panels; ++p) edges.push_back(a + (b - a) * p / panels);
        for (double bp : breakpoints)
            if (bp > a && bp < b) edges.push_back(bp);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

        ShellRule rule;
        rule.j = j;
        for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
            double lo = edges[e], hi = edges[e + 1];
            double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (std::size_t q = 0; q < gx.size(); ++q) {
                rule.k.push_back(mid + half * gx[q]);
                rule.w.push_back(half * gw[q]);
            }
        }
        rules.push_back(std::move(rule));
    }
    if (rules.empty()) throw invalid_input("build_shell_rules: empty shell range");
    return rules;
}

/// Semigroup samples along the radial frequency axis: per quadrature node
/// the symbol is diagonalized once, after which |U(k, t)|^2 is a small
/// exponential sum for any t. Nodes where the eigenbasis is unreliable
/// fall back to direct matrix exponentials.
class RadialPropagatorTable {
public:
    using MatrixGen = std::function<Eigen::MatrixXd(double)>;
    using ProfileGen = std::function<Eigen::VectorXd(double)>;

    RadialPropagatorTable(const MatrixGen& gen, const ProfileGen& profile,
                          const std::vector<ShellRule>& rules, int dim,
                          const ProfileGen& channel_weights = nullptr)
        : rules_(rules), dim_(dim) {
        const double pref = surface_area(dim) / std::pow(2.0 * std::numbers::pi, dim);
        for (std::size_t s = 0; s < rules.size(); ++s) {
            const ShellRule& r = rules[s];
            for (std::size_t i = 0; i < r.k.size(); ++i) {
                double k = r.k[i];
                Eigen::VectorXd u0 = profile(k);
                double phi = DyadicFilterBank::shell_value(r.j, k);
                if (phi == 0.0 || u0.squaredNorm() == 0.0) continue;
                Node nd;
                nd.shell = s;
                nd.k = k;
                nd.weight = pref * r.w[i] * phi * phi * std::pow(k, dim - 1);
                Eigen::MatrixXd A = gen(k);
                Eigen::VectorXcd u0c = u0.cast<cplx>();
                Eigen::MatrixXcd Ac = A.cast<cplx>();
                Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Ac);
                bool ok = es.info() == Eigen::Success;
                if (ok) {
                    const Eigen::MatrixXcd& V = es.eigenvectors();
                    Eigen::MatrixXcd R = V * es.eigenvalues().asDiagonal() * V.inverse() - Ac;
                    ok = R.norm() <= 1e-7 * (1.0 + Ac.norm());
                    if (ok) {
                        Eigen::VectorXcd c = V.partialPivLu().solve(u0c);
                        int n = static_cast<int>(Ac.rows());
                        nd.lambda = es.eigenvalues();
                        nd.modes.resize(n);
                        for (int m = 0; m < n; ++m) nd.modes[static_cast<std::size_t>(m)] = c(m) * V.col(m);
                        nd.max_re = nd.lambda.real().maxCoeff();
                        double amp = 0.0;
                        for (const auto& wm : nd.modes) amp += wm.norm();
                        nd.amp = amp;
                        if (channel_weights) {
                            Eigen::VectorXd d = channel_weights(k);
                            nd.wmodes.resize(nd.modes.size());
                            for (std::size_t m = 0; m < nd.modes.size(); ++m)
                                nd.wmodes[m] = d.cast<cplx>().asDiagonal() * nd.modes[m];
                        }
                    }
                }
                if (!ok) {
                    nd.direct = true;
                    nd.A = A;
                    nd.u0 = u0;
                    if (channel_weights) nd.dw = channel_weights(k);
                }
                nodes_.push_back(std::move(nd));
            }
        }
    }

    std::size_t shell_count() const { return rules_.size(); }
    int shell_j(std::size_t s) const { return rules_[s].j; }

    /// Per-shell block L2 norms at time t: B_j(t). With `weighted` the
    /// channel-weighted variant (e.g. the (grad c, u) stack) is returned.
    std::vector<double> shell_norms(double t, bool weighted = false) const {
        std::vector<double> acc(rules_.size(), 0.0);
        for (const auto& nd : nodes_) {
            double v;
            if (nd.direct) {
                Eigen::MatrixXd P = (nd.A * t).exp();
                Eigen::VectorXd u = P * nd.u0;
                if (weighted) u = nd.dw.asDiagonal() * u;
                v = u.squaredNorm();
            } else {
                if (nd.amp * nd.amp * std::exp(2.0 * nd.max_re * t) < 1e-300) continue;
                v = mag2(weighted && !nd.wmodes.empty() ? nd.wmodes : nd.modes, nd.lambda, t);
            }
            acc[nd.shell] += nd.weight * v;
        }
        for (double& a : acc) a = std::sqrt(std::max(a, 0.0));
        return acc;
    }

private:
    struct Node {
        std::size_t shell = 0;
        double k = 0.0, weight = 0.0;
        Eigen::VectorXcd lambda;
        std::vector<Eigen::VectorXcd> modes, wmodes;
        double max_re = 0.0, amp = 0.0;
        bool direct = false;
        Eigen::MatrixXd A;
        Eigen::VectorXd u0, dw;
    };

    static double surface_area(int dim) {
        switch (dim) {
        case 1: return 2.0;
        case 2: return 2.0 * std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi;
        default: throw invalid_input("RadialPropagatorTable: dim must be 1, 2 or 3");
        }
    }

    static double mag2(const std::vector<Eigen::VectorXcd>& modes, const Eigen::VectorXcd& lambda,
                       double t) {
        Eigen::VectorXcd u = Eigen::VectorXcd::Zero(modes.front().size());
        for (std::size_t m = 0; m < modes.size(); ++m)
            u += std::exp(lambda(static_cast<Eigen::Index>(m)) * t) * modes[m];
        return u.squaredNorm();
    }

    std::vector<ShellRule> rules_;
    int dim_;
    std::vector<Node> nodes_;
};

/// Whole-space low-frequency norm series of a semigroup with radial data:
/// block channel "all" (and "grad" when weights are supplied).
inline NormSeries radial_norm_series(const RadialPropagatorTable& table, const std::vector<double>& times,
                                     bool with_grad = false) {
    NormSeries ns;
    ns.times = times;
    BlockChannel all;
    all.group = "all";
    all.p = 2.0;
    all.j_lo = table.shell_j(0);
    all.w.assign(table.shell_count(), std::vector<double>(times.size(), 0.0));
    BlockChannel grad = all;
    grad.group = "grad";
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
        auto b = table.shell_norms(times[ti], false);
        for (std::size_t s = 0; s < b.size(); ++s) all.w[s][ti] = b[s];
        if (with_grad) {
            auto bg = table.shell_norms(times[ti], true);
            for (std::size_t s = 0; s < bg.size(); ++s) grad.w[s][ti] = bg[s];
        }
    }
    ns.blocks.push_back(std::move(all));
    if (with_grad) ns.blocks.push_back(std::move(grad));
    return ns;
}

/// Log-spaced time grid.
inline std::vector<double> log_time_grid(double t_lo, double t_hi, int n) {
    std::vector<double> ts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        ts[static_cast<std::size_t>(i)] = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (n - 1));
    return ts;
}

struct LinearDecayResult {
    double slope = 0.0;
    double predicted = 0.0;
    FitResult fit;
    NormSeries series;
};

/// Fitted large-time slope of the low-frequency Besov norm of e^{tA} U0
/// under radial quadrature, for comparison with -(s + s0)/2.
inline LinearDecayResult linear_decay_exponent(const EquilibriumCoefficients& coeffs, double s, double p,
                                               int N, double k_cut = 1.0,
                                               const std::vector<double>* times = nullptr,
                                               int j0 = 0) {
    double s0 = 2.0 * N / p - N / 2.0;
    if (!(s + s0 > 0.0)) throw invalid_input("linear_decay_exponent: requires s + s0 > 0");

    std::vector<double> tgrid = times ? *times : log_time_grid(1.0, 2000.0, 70);
    RadialQuadratureConfig qc;
    qc.j_hi = j0;
    qc.t_max = tgrid.back();
    double beta_sum = coeffs.beta1 + coeffs.beta2 + coeffs.beta3 + coeffs.beta4;
    qc.phase_rate = std::sqrt(std::max(beta_sum, 1.0)) + 1.0;
    qc.decay_guess = 0.05 * std::min(coeffs.nu_plus, coeffs.nu_minus);
    auto rules = build_shell_rules(qc, {k_cut});

    auto gen = [&coeffs](double k) { return Eigen::MatrixXd(acoustic_symbol(k, coeffs)); };
    auto profile = [k_cut](double k) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(4);
        if (k <= k_cut) v << 1.0, 1.0, 1.0, 1.0;
        return v;
    };
    RadialPropagatorTable table(gen, profile, rules, N);

    LinearDecayResult res;
    res.series = radial_norm_series(table, tgrid);
    std::vector<double> norms(tgrid.size());
    for (std::size_t ti = 0; ti < tgrid.size(); ++ti)
        norms[ti] = res.series.besov_at("all", 2.0, s, 1.0, ti, -1000, j0);
    res.fit = fit_decay(tgrid, norms, tgrid.back() / 10.0, tgrid.back());
    res.slope = res.fit.slope;
    res.predicted = -(s + s0) / 2.0;
    ScalarChannel sc;
    sc.id = "besov_low_s";
    sc.v = norms;
    res.series.scalars.push_back(std::move(sc));
    return res;
}

/// sup over t of sum_q t^{sigma/2} 2^{q sigma} e^{-c0 2^{2q} t}.
inline double kernel_sum_sup(double sigma, double c0, int q_lo, int q_hi,
                             const std::vector<double>& ts) {
    double sup = 0.0;
    for (double t : ts) {
        double acc = 0.0;
        for (int q = q_lo; q <= q_hi; ++q) {
            double twoq = std::ldexp(1.0, q);
            acc += std::pow(t, sigma / 2.0) * std::pow(twoq, sigma) * std::exp(-c0 * twoq * twoq * t);
        }
        sup = std::max(sup, acc);
    }
    return sup;
}

namespace quad_detail {

template <typename F>
double panel_integrate(F&& f, double a, double b, int nodes = 16) {
    std::vector<double> gx, gw;
    gauss_legendre(nodes, gx, gw);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) acc += gw[i] * f(mid + half * gx[i]);
    return acc * half;
}

/// Geometric panel edges refining towards both ends of [0, t].
inline std::vector<double> two_sided_edges(double t) {
    std::vector<double> e{0.0};
    for (double s = 1.0; s < t / 2.0; s *= 2.0) e.push_back(s);
    e.push_back(t / 2.0);
    std::vector<double> upper;
    for (double s = 1.0; s < t / 2.0; s *= 2.0) upper.push_back(t - s);
    for (auto it = upper.rbegin(); it != upper.rend(); ++it) e.push_back(*it);
    e.push_back(t);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
}

} // namespace quad_detail

/// Ratio of int_0^t (1+t-tau)^{-r1} (1+tau)^{-r2} dtau to (1+t)^{-min(r1,r2)}.
inline double lemma_2_16_ratio(double r1, double r2, double t) {
    if (!(r1 > 0.0) || !(r2 > 0.0) || !(std::max(r1, r2) > 1.0))
        throw invalid_input("lemma_2_16_ratio: requires r1, r2 > 0 and max > 1");
    auto f = [&](double tau) { return std::pow(1.0 + t - tau, -r1) * std::pow(1.0 + tau, -r2); };
    double acc = 0.0;
    auto edges = quad_detail::two_sided_edges(t);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        acc += quad_detail::panel_integrate(f, edges[i], edges[i + 1]);
    return acc * std::pow(1.0 + t, std::min(r1, r2));
}

/// Ratio of int_0^t (1+t-tau)^{-r1} tau^{-theta} (1+tau)^{theta-r2} dtau to
/// (1+t)^{-r1}; the tau^{-theta} singularity is removed by substitution.
inline double lemma_2_17_ratio(double r1, double r2, double theta, double t) {
    if (!(0.0 <= r1 && r1 <= r2 && r2 > 1.0)) throw invalid_input("lemma_2_17_ratio: requires 0 <= r1 <= r2, r2 > 1");
    if (!(0.0 <= theta && theta < 1.0)) throw invalid_input("lemma_2_17_ratio: requires 0 <= theta < 1");
    double acc = 0.0;
    double head = std::min(1.0, t);
    // tau = head * u^{1/(1-theta)} removes the endpoint singularity
    auto g = [&](double u) {
        double tau = head * std::pow(u, 1.0 / (1.0 - theta));
        return std::pow(1.0 + t - tau, -r1) * std::pow(1.0 + tau, theta - r2) *
               std::pow(head, 1.0 - theta) / (1.0 - theta);
    };
    acc += quad_detail::panel_integrate(g, 0.0, 1.0, 32);
    if (t > 1.0) {
        auto f = [&](double tau) {
            return std::pow(1.0 + t - tau, -r1) * std::pow(tau, -theta) * std::pow(1.0 + tau, theta - r2);
        };
        auto edges = quad_detail::two_sided_edges(t);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            if (edges[i + 1] <= 1.0) continue;
            acc += quad_detail::panel_integrate(f, std::max(1.0, edges[i]), edges[i + 1]);
        }
    }
    return acc * std::pow(1.0 + t, r1);
}

} // namespace twofluid
