#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "twofluid/besov.hpp"

using namespace twofluid;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
SpectralField mode11(const Grid& g) {
    SpectralField f = SpectralField::scalar(g);
    auto& p = f.mutable_phys();
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::cos(11.0 * g.coords(i)[0]);
    return f;
}
} // namespace

TEST_CASE("besov norm of zero is zero") {
    Grid g(2, 32, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    REQUIRE(besov_norm(SpectralField::scalar(g), BesovSpec(0.7, 2.0, 1.0), bank) == 0.0);
}

TEST_CASE("single mode reduces to one weighted block") {
    Grid g(1, 64, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    SpectralField f = mode11(g);
    double l2 = std::sqrt(g.volume() / 2.0);
    for (double s : {-1.0, 0.0, 1.5}) {
        REQUIRE_THAT(besov_norm(f, BesovSpec(s, 2.0, 1.0), bank), WithinRel(std::pow(2.0, 3.0 * s) * l2, 1e-10));
        REQUIRE_THAT(besov_norm(f, BesovSpec(s, 2.0, kInf), bank),
                     WithinRel(std::pow(2.0, 3.0 * s) * l2, 1e-10));
    }
    double linf = 1.0;
    REQUIRE_THAT(besov_norm(f, BesovSpec(0.0, kInf, 1.0), bank), WithinAbs(linf, 1e-9));
}

TEST_CASE("B^0_{2,2} stays within the overlap factor of L2") {
    Grid g(2, 64, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    for (unsigned seed = 0; seed < 100; ++seed) {
        SpectralField f = test_support::random_field(g, 100 + seed);
        double ratio = besov_norm(f, BesovSpec(0.0, 2.0, 2.0), bank) / f.l2_norm();
        REQUIRE(ratio >= 0.70);
        REQUIRE(ratio <= 1.0 + 1e-9);
    }
}

TEST_CASE("interpolation inequality between regularity indices") {
    Grid g(2, 64, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    for (unsigned seed = 0; seed < 20; ++seed) {
        SpectralField f = test_support::random_field(g, 200 + seed);
        double s1 = -0.5, s2 = 1.5, theta = 0.3;
        double s = theta * s1 + (1.0 - theta) * s2;
        double lhs = besov_norm(f, BesovSpec(s, 2.0, 1.0), bank);
        double rhs = std::pow(besov_norm(f, BesovSpec(s1, 2.0, 1.0), bank), theta) *
                     std::pow(besov_norm(f, BesovSpec(s2, 2.0, 1.0), bank), 1.0 - theta);
        REQUIRE(lhs <= 1.01 * rhs);
    }
}

TEST_CASE("derivation equivalence against the gradient") {
    Grid g(2, 64, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    for (unsigned seed = 0; seed < 20; ++seed) {
        SpectralField f = test_support::random_field(g, 300 + seed);
        SpectralField grad = f.gradient();
        for (double s : {0.0, 1.0}) {
            double a = besov_norm(f, BesovSpec(s, 2.0, 1.0), bank);
            double b = besov_norm(grad, BesovSpec(s - 1.0, 2.0, 1.0), bank);
            double ratio = a / b;
            REQUIRE(ratio >= 1.0 / 3.0);
            REQUIRE(ratio <= 3.0);
        }
    }
}

TEST_CASE("truncated low norm controls the full norm of the low field") {
    Grid g(2, 64, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    for (unsigned seed = 0; seed < 10; ++seed) {
        SpectralField f = test_support::random_field(g, 400 + seed);
        auto [low, high] = bank.split_low_high(f);
        (void)high;
        BesovSpec sp(0.5, 2.0, 1.0);
        double full_of_low = besov_norm(low, sp, bank);
        double truncated = besov_norm_low(f, sp, bank);
        REQUIRE(full_of_low <= 2.0 * truncated); // one-shell overlap slack
    }
}

TEST_CASE("chemin-lerner equals the static norm for constant series") {
    Grid g(1, 64, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    SpectralField f = test_support::random_field(g, 55, 20);
    std::vector<double> times{0.0, 0.5, 1.0};
    std::vector<SpectralField> series{f, f, f};
    BesovSpec sp(0.5, 2.0, 1.0);
    REQUIRE_THAT(chemin_lerner_norm(times, series, kInf, sp, bank), WithinRel(besov_norm(f, sp, bank), 1e-12));
}

TEST_CASE("separable single-block series integrates the amplitude") {
    Grid g(1, 64, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    SpectralField shape = mode11(g);
    int nt = 101;
    std::vector<double> times(static_cast<std::size_t>(nt));
    std::vector<SpectralField> series;
    for (int i = 0; i < nt; ++i) {
        times[static_cast<std::size_t>(i)] = static_cast<double>(i) / (nt - 1);
        SpectralField f = shape;
        f *= std::exp(-times[static_cast<std::size_t>(i)]);
        series.push_back(std::move(f));
    }
    double s = 0.75;
    double expected = (1.0 - std::exp(-1.0)) * std::pow(2.0, 3.0 * s) * std::sqrt(g.volume() / 2.0);
    REQUIRE_THAT(chemin_lerner_norm(times, series, 1.0, BesovSpec(s, 2.0, 1.0), bank),
                 WithinRel(expected, 1e-4));
}

TEST_CASE("L1-in-time Besov and Chemin-Lerner agree when r = 1") {
    Grid g(2, 32, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    std::vector<double> times{0.0, 0.3, 0.7, 1.2};
    std::vector<SpectralField> series;
    for (unsigned i = 0; i < times.size(); ++i) series.push_back(test_support::random_field(g, 600 + i));
    BesovSpec sp(0.4, 2.0, 1.0);
    double a = chemin_lerner_norm(times, series, 1.0, sp, bank);
    double b = time_besov_norm(times, series, 1.0, sp, bank);
    REQUIRE_THAT(a, WithinRel(b, 1e-12));
}

TEST_CASE("finite-rho chemin-lerner needs two samples") {
    Grid g(1, 64, 2.0 * std::numbers::pi);
    DyadicFilterBank bank(g);
    std::vector<double> times{0.0};
    std::vector<SpectralField> series{SpectralField::scalar(g)};
    REQUIRE_THROWS_AS(chemin_lerner_norm(times, series, 1.0, BesovSpec(0.0, 2.0, 1.0), bank),
                      invalid_input);
    REQUIRE_THROWS_AS(BesovSpec(0.0, 0.5, 1.0), invalid_input);
}
