#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "twofluid/filter_bank.hpp"

using namespace twofluid;
using Catch::Matchers::WithinAbs;

TEST_CASE("partition of unity on every nonzero lattice frequency") {
    for (int dim : {1, 2}) {
        Grid g(dim, 64, 2.0 * std::numbers::pi);
        DyadicFilterBank bank(g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            double k = g.frequency_norm(i);
            if (k == 0.0) continue;
            double sum = 0.0;
            for (int j = bank.j_min(); j <= bank.j_max(); ++j) sum += bank.multiplier(j)[i];
            REQUIRE_THAT(sum, WithinAbs(1.0, 1e-10));
        }
    }
}

TEST_CASE("shell support bounds hold exactly") {
    Grid g(2, 64, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
        const auto& tab = bank.multiplier(j);
        for (std::size_t i = 0; i < tab.size(); ++i) {
            double r = g.frequency_norm(i) * std::ldexp(1.0, -j);
            if (r < 0.75 || r > 8.0 / 3.0) REQUIRE(tab[i] == 0.0);
        }
    }
}

TEST_CASE("blocks two shells apart have exactly disjoint supports") {
    Grid g(2, 64, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    for (int j = bank.j_min(); j <= bank.j_max(); ++j)
        for (int k = j + 2; k <= bank.j_max(); ++k) {
            const auto& a = bank.multiplier(j);
            const auto& b = bank.multiplier(k);
            for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i] * b[i] == 0.0);
        }
}

TEST_CASE("resolved shell range follows from the support bounds") {
    // 1D, 256 points, L = 2pi: |xi| in [1, 128]; a shell j is resolvable iff
    // [3/4, 8/3] 2^j meets the band, giving ceil(log2(3/8)) .. floor(log2(4*128/3)).
    Grid g(1, 256, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    REQUIRE(bank.j_min() == static_cast<int>(std::ceil(std::log2(3.0 / 8.0))));
    REQUIRE(bank.j_max() == static_cast<int>(std::floor(std::log2(4.0 * 128.0 / 3.0))));
}

TEST_CASE("single mode in the exclusive band belongs to exactly one block") {
    // mode m = 11, shell j = 3: 11/8 lies in (4/3, 3/2) where neighbours vanish
    Grid g(1, 64, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    SpectralField f = SpectralField::scalar(g);
    auto& p = f.mutable_phys();
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::cos(11.0 * g.coords(i)[0]);

    SpectralField b3 = bank.block(f, 3);
    REQUIRE(b3.max_spectral_diff(f) <= 1e-12);
    for (int j : {2, 4, 5}) {
        if (!bank.in_range(j)) continue;
        REQUIRE(bank.block(f, j).l2_norm() <= 1e-12);
    }
}

TEST_CASE("blocks of zero are zero and blocks are linear") {
    Grid g(2, 32, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    SpectralField z = SpectralField::scalar(g);
    REQUIRE(bank.block(z, 0).l2_norm() == 0.0);

    SpectralField a = test_support::random_field(g, 21, 10);
    SpectralField b = test_support::random_field(g, 22, 10);
    SpectralField lin = bank.block(a + b, 1);
    SpectralField sum = bank.block(a, 1) + bank.block(b, 1);
    REQUIRE(lin.max_spectral_diff(sum) <= 1e-13);
}

TEST_CASE("band-limited mean-free fields reconstruct from their blocks") {
    Grid g(2, 64, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    SpectralField f = test_support::random_field(g, 33, 20);
    SpectralField sum = SpectralField::scalar(g);
    for (int j = bank.j_min(); j <= bank.j_max(); ++j) sum += bank.block(f, j);
    REQUIRE(sum.max_spectral_diff(f) <= 1e-10);
}

TEST_CASE("low/high split sums back exactly and localizes") {
    Grid g(2, 64, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g); // j0 = 0
    SpectralField f = test_support::random_field(g, 44);
    auto [low, high] = bank.split_low_high(f);
    SpectralField sum = low + high;
    REQUIRE(sum.max_spectral_diff(f) <= 1e-13);

    // a single mode deep in the low band leaves no high part
    SpectralField lowmode = SpectralField::scalar(g);
    auto& p = lowmode.mutable_phys();
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::cos(g.coords(i)[0]);
    auto [l2, h2] = bank.split_low_high(lowmode);
    REQUIRE(h2.l2_norm() <= 1e-10);
    REQUIRE_THAT(l2.l2_norm(), WithinAbs(lowmode.l2_norm(), 1e-10));
}

TEST_CASE("the mean rides with the low part") {
    Grid g(2, 32, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    SpectralField f = SpectralField::scalar(g);
    for (auto& v : f.mutable_phys()) v = 3.25;
    auto [low, high] = bank.split_low_high(f);
    REQUIRE(high.l2_norm() <= 1e-12);
    REQUIRE_THAT(low.mean(), WithinAbs(3.25, 1e-12));
}

TEST_CASE("out-of-range thresholds are rejected") {
    Grid g(1, 64, 2.0 * std::numbers::pi);
    REQUIRE_THROWS_AS(DyadicFilterBank(g, 40), invalid_input);
    REQUIRE_THROWS_AS(DyadicFilterBank(g, -40), invalid_input);
    DyadicFilterBank ok(g);
    REQUIRE_THROWS_AS(ok.multiplier(ok.j_max() + 1), invalid_input);
}
