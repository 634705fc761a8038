#pragma once

#include <vector>

#include "twofluid/field_state.hpp"

namespace twofluid {

struct NonlinearTerms {
    SpectralField H1; // mass source, + phase (scalar)
    SpectralField H2; // momentum source, + phase (vector)
    SpectralField H3; // mass source, - phase (scalar)
    SpectralField H4; // momentum source, - phase (vector)
};

namespace solver_detail {

/// Physical-space tables of the nine coefficient functions over the grid.
struct CoeffFields {
    std::vector<double> g_plus, g_minus, g_tilde;
    std::vector<double> h_plus, h_minus, k_plus, k_minus;
    std::vector<double> l_plus, l_minus;
};

inline CoeffFields coeff_fields(const std::vector<double>& cp, const std::vector<double>& cm,
                                const CoeffFieldEvaluator& ev) {
    CoeffFields f;
    const std::size_t n = cp.size();
    for (auto* v : {&f.g_plus, &f.g_minus, &f.g_tilde, &f.h_plus, &f.h_minus, &f.k_plus, &f.k_minus,
                    &f.l_plus, &f.l_minus})
        v->resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        CoeffValues v = ev.values_at(cp[i], cm[i]);
        f.g_plus[i] = v.g_plus;
        f.g_minus[i] = v.g_minus;
        f.g_tilde[i] = v.g_tilde;
        f.h_plus[i] = v.h_plus;
        f.h_minus[i] = v.h_minus;
        f.k_plus[i] = v.k_plus;
        f.k_minus[i] = v.k_minus;
        f.l_plus[i] = v.l_plus;
        f.l_minus[i] = v.l_minus;
    }
    return f;
}

} // namespace solver_detail

/// Right-hand sides of the perturbation system: H1/H3 the mass
/// fluxes, H2/H4 the momentum sources assembled term by term with the
/// pointwise coefficient functions. Spatial derivatives are spectral,
/// every product is formed in physical space and dealiased.
inline NonlinearTerms nonlinear_terms(const FieldState& state, const TwoFluidModel& model) {
    if (!state.masses_positive())
        throw invalid_input("nonlinear_terms: state invalid, mass positivity violated");
    const Grid& g = state.grid();
    const int N = g.dim;
    const std::size_t npts = g.size();

    auto cf = solver_detail::coeff_fields(state.c_plus.phys(), state.c_minus.phys(), model.evaluator);

    // H1 = -div(c+ u+), H3 = -div(c- u-)
    auto mass_flux = [&](const SpectralField& c, const SpectralField& u) {
        SpectralField cu = SpectralField::product(c, u);
        SpectralField h = cu.divergence();
        h *= -1.0;
        return h;
    };
    // braced init follows declaration order H1, H3, H2, H4
    NonlinearTerms out{mass_flux(state.c_plus, state.u_plus), mass_flux(state.c_minus, state.u_minus),
                       SpectralField::vector_field(g), SpectralField::vector_field(g)};

    // derivative tables
    std::vector<const std::vector<double>*> dcp(static_cast<std::size_t>(N)),
        dcm(static_cast<std::size_t>(N));
    std::vector<SpectralField> dcp_f, dcm_f;
    for (int d = 0; d < N; ++d) {
        dcp_f.push_back(state.c_plus.derivative(d));
        dcm_f.push_back(state.c_minus.derivative(d));
    }
    for (int d = 0; d < N; ++d) {
        dcp[static_cast<std::size_t>(d)] = &dcp_f[static_cast<std::size_t>(d)].phys();
        dcm[static_cast<std::size_t>(d)] = &dcm_f[static_cast<std::size_t>(d)].phys();
    }

    auto momentum = [&](const SpectralField& u, double mu, double lambda, bool plus_phase,
                        SpectralField& H) {
        // du[i][j] = d_j u_i, physical
        std::vector<std::vector<SpectralField>> du;
        for (int i = 0; i < N; ++i) {
            std::vector<SpectralField> row;
            for (int j = 0; j < N; ++j) row.push_back(u.derivative(j, i));
            du.push_back(std::move(row));
        }
        SpectralField lap = u.laplacian();
        SpectralField divu = u.divergence();
        std::vector<SpectralField> ddiv;
        for (int d = 0; d < N; ++d) ddiv.push_back(divu.derivative(d));
        const auto& divu_p = divu.phys();

        const auto& gp = plus_phase ? cf.g_plus : cf.g_minus;
        const auto& hh = plus_phase ? cf.h_plus : cf.h_minus;
        const auto& kk = plus_phase ? cf.k_plus : cf.k_minus;
        const auto& ll = plus_phase ? cf.l_plus : cf.l_minus;

        std::vector<double> acc(npts);
        for (int i = 0; i < N; ++i) {
            const auto& own_grad = plus_phase ? *dcp[static_cast<std::size_t>(i)]
                                              : *dcm[static_cast<std::size_t>(i)];
            const auto& other_grad = plus_phase ? *dcm[static_cast<std::size_t>(i)]
                                                : *dcp[static_cast<std::size_t>(i)];
            const auto& lap_i = lap.phys(i);
            const auto& ddiv_i = ddiv[static_cast<std::size_t>(i)].phys();
            for (std::size_t x = 0; x < npts; ++x) {
                double v = -gp[x] * own_grad[x] - cf.g_tilde[x] * other_grad[x];
                v += mu * ll[x] * lap_i[x] + (mu + lambda) * ll[x] * ddiv_i[x];
                v += lambda * divu_p[x] * (hh[x] * (*dcp[static_cast<std::size_t>(i)])[x] +
                                           kk[x] * (*dcm[static_cast<std::size_t>(i)])[x]);
                acc[x] = v;
            }
            for (int j = 0; j < N; ++j) {
                const auto& uj = u.phys(j);
                const auto& dij = du[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].phys();
                const auto& dji = du[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].phys();
                const auto& cpj = *dcp[static_cast<std::size_t>(j)];
                const auto& cmj = *dcm[static_cast<std::size_t>(j)];
                for (std::size_t x = 0; x < npts; ++x) {
                    double v = -uj[x] * dij[x]; // advection
                    v += mu * (hh[x] * cpj[x] + kk[x] * cmj[x]) * (dij[x] + dji[x]);
                    acc[x] += v;
                }
            }
            H.mutable_phys(i) = acc;
        }
        H.dealias();
    };
    momentum(state.u_plus, model.coeffs.mu_plus, model.coeffs.lambda_plus, true, out.H2);
    momentum(state.u_minus, model.coeffs.mu_minus, model.coeffs.lambda_minus, false, out.H4);
    return out;
}

} // namespace twofluid
