#include <catch_amalgamated.hpp>

#include "twofluid/decay_envelope.hpp"
#include "twofluid/radial_quadrature.hpp"

using namespace twofluid;
using Catch::Matchers::WithinAbs;

namespace {
std::vector<double> k_sweep() { return log_time_grid(0.25, 4.0, 16); }
std::vector<double> t_sweep() {
    std::vector<double> ts{0.0};
    for (double t : log_time_grid(0.05, 10.0, 40)) ts.push_back(t);
    return ts;
}
} // namespace

TEST_CASE("exact heat factor fits theta = 1 with unit prefactor") {
    auto env = fit_envelope([](double k, double t) { return std::exp(-k * k * t); }, k_sweep(), t_sweep());
    REQUIRE_THAT(env.theta, WithinAbs(1.0, 1e-9));
    REQUIRE_THAT(env.prefactor, WithinAbs(1.0, 1e-9));
}

TEST_CASE("oscillatory branch decays near nu/2") {
    auto env = fit_decay_envelope(1.0, k_sweep(), t_sweep());
    REQUIRE(env.theta >= 0.4);
    REQUIRE(env.theta <= 0.55);
    REQUIRE(env.prefactor < 10.0);
}

TEST_CASE("all three branches admit an envelope with modest constant") {
    for (double nu : {1.0, 2.0, 3.0}) {
        auto env = fit_decay_envelope(nu, k_sweep(), t_sweep());
        REQUIRE(env.theta > 0.0);
        REQUIRE(env.prefactor < 10.0);
    }
}

TEST_CASE("growth is reported as a verification failure with a witness") {
    REQUIRE_THROWS_AS(
        fit_envelope([](double k, double t) { return std::exp(+0.3 * k * k * t); }, k_sweep(), t_sweep()),
        verification_failure);
    try {
        fit_envelope([](double k, double t) { return std::exp(+0.3 * k * k * t); }, k_sweep(), t_sweep());
    } catch (const verification_failure& e) {
        REQUIRE(std::string(e.what()).find("witness") != std::string::npos);
    }
}

TEST_CASE("symmetric two-fluid low-frequency envelope exists") {
    PressureLaw g2{2.0, 1.0};
    auto c = equilibrium_coefficients(g2, g2, 1.0, 1.0, 0.0, 0.0);
    std::vector<double> ts = t_sweep();
    auto env = fit_low_frequency_envelope(c, 1.0, ts);
    REQUIRE(env.theta > 0.0);
    REQUIRE(env.c0 == env.theta);
    REQUIRE(env.xi0 == 1.0);
    REQUIRE(env.prefactor >= 1.0);
}

TEST_CASE("envelope rejects empty samples") {
    REQUIRE_THROWS_AS(fit_envelope([](double, double) { return 1.0; }, {}, {1.0}), invalid_input);
    REQUIRE_THROWS_AS(fit_envelope([](double, double) { return 1.0; }, {-1.0}, {1.0}), invalid_input);
}
