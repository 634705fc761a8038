#pragma once

#include <vector>

#include "twofluid/besov.hpp"
#include "twofluid/filter_bank.hpp"
#include "twofluid/spectral_field.hpp"

namespace twofluid {

struct BonyParts {
    SpectralField para_fg;   // T_f g
    SpectralField para_gf;   // T_g f
    SpectralField remainder; // R(f, g)
};

/// Bony decomposition of a scalar product fg. Products are formed in
/// physical space; with `dealias` the 2/3-rule projector is applied to each
/// product, so the parts reconstruct the dealiased product plus the
/// mean-mean term (the uncovered band), which the caller can report.
inline BonyParts bony_decompose(const SpectralField& f, const SpectralField& g,
                                const DyadicFilterBank& bank, bool dealias = true) {
    if (!(f.grid() == g.grid())) throw invalid_input("bony_decompose: grid mismatch");
    if (!f.is_scalar() || !g.is_scalar()) throw invalid_input("bony_decompose: scalar fields required");

    const int jlo = bank.j_min(), jhi = bank.j_max();
    const int nshell = jhi - jlo + 1;
    std::vector<SpectralField> bf, bg;
    bf.reserve(static_cast<std::size_t>(nshell));
    bg.reserve(static_cast<std::size_t>(nshell));
    for (int j = jlo; j <= jhi; ++j) {
        bf.push_back(bank.block(f, j));
        bg.push_back(bank.block(g, j));
    }

    BonyParts out{SpectralField::scalar(f.grid()), SpectralField::scalar(f.grid()),
                  SpectralField::scalar(f.grid())};
    for (int j = jlo; j <= jhi; ++j) {
        SpectralField sf = bank.low_pass(f, j - 1);
        SpectralField sg = bank.low_pass(g, j - 1);
        const auto& dg = bg[static_cast<std::size_t>(j - jlo)];
        const auto& df = bf[static_cast<std::size_t>(j - jlo)];
        out.para_fg += SpectralField::product(sf, dg, dealias);
        out.para_gf += SpectralField::product(sg, df, dealias);

        SpectralField tilde = dg;
        if (j > jlo) tilde += bg[static_cast<std::size_t>(j - 1 - jlo)];
        if (j < jhi) tilde += bg[static_cast<std::size_t>(j + 1 - jlo)];
        out.remainder += SpectralField::product(df, tilde, dealias);
    }
    return out;
}

/// L2 distance between the reconstructed parts and the raw pointwise
/// product: the reported residue of the telescoping identity.
inline double bony_residue(const BonyParts& parts, const SpectralField& f, const SpectralField& g) {
    SpectralField sum = parts.para_fg;
    sum += parts.para_gf;
    sum += parts.remainder;
    SpectralField prod = SpectralField::product(f, g, /*dealias=*/false);
    sum -= prod;
    return sum.l2_norm();
}

} // namespace twofluid
