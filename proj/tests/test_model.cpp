// Parameters, steady state, susceptibility, and thermal occupancy.

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>

#include "optomech/params.hpp"

using namespace optomech;

namespace {

CavityParams base_params() {
    CavityParams p;
    p.gamma = 100.0;
    p.gamma_m = 1e-3;
    p.omega_m = 1.0;
    return p;
}

}  // namespace

TEST_CASE("steady state amplitude on resonance and detuned") {
    CavityParams p = base_params();

    p.gamma = 1.0;
    p.drive_amplitude = 0.5;
    CHECK_THAT(std::abs(steady_state(p).a0 - complexd(1.0, 0.0)),
               Catch::Matchers::WithinAbs(0.0, 1e-15));

    p.gamma = 4.0;
    p.drive_amplitude = 1.0;
    CHECK_THAT(std::abs(steady_state(p).a0 - complexd(1.0, 0.0)),
               Catch::Matchers::WithinAbs(0.0, 1e-15));

    p.gamma = 1.0;
    p.delta = 0.5;
    p.drive_amplitude = 1.0;
    const complexd a0 = steady_state(p).a0;
    CHECK_THAT(a0.real(), Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THAT(a0.imag(), Catch::Matchers::WithinAbs(1.0, 1e-15));
}

TEST_CASE("steady state derives both effective couplings from |a0|") {
    CavityParams p = base_params();
    p.gamma = 4.0;
    p.drive_amplitude = 1.0;  // a0 = 1
    p.g_omega = 0.25;
    p.g_gamma = 0.125;
    const SteadyState s = steady_state(p);
    CHECK_THAT(s.G_omega, Catch::Matchers::WithinRel(2.0 * 0.25, 1e-15));
    CHECK_THAT(s.G_gamma, Catch::Matchers::WithinRel(0.125, 1e-15));
}

TEST_CASE("steady state is real and positive on resonance with positive drive") {
    CavityParams p = base_params();
    p.drive_amplitude = 3.7;
    const SteadyState s = steady_state(p);
    CHECK(s.a0.imag() == 0.0);
    CHECK(s.a0.real() > 0.0);
}

TEST_CASE("|a0|^2 is Lorentzian in detuning and maximal on resonance") {
    CavityParams p = base_params();
    p.gamma = 2.5;
    p.drive_amplitude = 1.3;
    for (double delta : {-3.0, -0.7, 0.0, 0.4, 2.0}) {
        p.delta = delta;
        const double expected = p.gamma * p.drive_amplitude * p.drive_amplitude /
                                (p.gamma * p.gamma / 4.0 + delta * delta);
        CHECK_THAT(std::norm(steady_state(p).a0), Catch::Matchers::WithinRel(expected, 1e-14));
    }
    p.delta = 0.0;
    const double peak = std::norm(steady_state(p).a0);
    p.delta = 0.3;
    CHECK(std::norm(steady_state(p).a0) < peak);
}

TEST_CASE("steady state scales linearly with the drive") {
    CavityParams p = base_params();
    p.drive_amplitude = 0.8;
    p.g_omega = 0.1;
    p.delta = 0.2;
    const SteadyState s1 = steady_state(p);
    p.drive_amplitude *= 2.0;
    const SteadyState s2 = steady_state(p);
    CHECK_THAT(std::abs(s2.a0), Catch::Matchers::WithinRel(2.0 * std::abs(s1.a0), 1e-14));
    // Doubling the drive doubles G, hence quadruples any G^2 quantity.
    CHECK_THAT(s2.G_omega * s2.G_omega,
               Catch::Matchers::WithinRel(4.0 * s1.G_omega * s1.G_omega, 1e-13));
}

TEST_CASE("parameter validation rejects unphysical inputs") {
    CavityParams p = base_params();
    CHECK_NOTHROW(p.validate());

    CavityParams bad = p;
    bad.gamma = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.gamma_m = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.gamma_m = 2.0;  // overdamped: gamma_m >= omega_m
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.omega_m = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.n_th = -0.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.drive_amplitude = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.delta = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("mechanical susceptibility landmarks") {
    CavityParams p = base_params();

    const complexd at_resonance = susceptibility(p.omega_m, p);
    CHECK_THAT(at_resonance.real(), Catch::Matchers::WithinAbs(0.0, 1e-15));
    CHECK_THAT(at_resonance.imag(), Catch::Matchers::WithinRel(1.0 / p.gamma_m, 1e-14));

    const complexd at_zero = susceptibility(0.0, p);
    CHECK_THAT(at_zero.real(), Catch::Matchers::WithinRel(1.0 / p.omega_m, 1e-15));
    CHECK(at_zero.imag() == 0.0);

    CavityParams tiny = p;
    tiny.gamma_m = 1e-12;
    const complexd at_double = susceptibility(2.0 * p.omega_m, tiny);
    CHECK_THAT(at_double.real(), Catch::Matchers::WithinRel(-1.0 / 3.0, 1e-10));
}

TEST_CASE("susceptibility obeys the reality condition chi(-w) = conj(chi(w))") {
    CavityParams p = base_params();
    for (double w : {0.3, 0.999, 1.0, 1.7}) {
        CHECK(susceptibility(-w, p) == std::conj(susceptibility(w, p)));
    }
}

TEST_CASE("susceptibility at a generic off-resonant frequency") {
    // gamma_m = 1e-3, omega_m = 1, omega = 1.01; value frozen from exact
    // rational-arithmetic evaluation of 1/(omega_m - omega^2/omega_m - i gamma_m omega/omega_m).
    CavityParams p = base_params();
    const complexd chi = susceptibility(1.01, p);
    CHECK_THAT(chi.real(), Catch::Matchers::WithinRel(-49.6259413806529441, 1e-14));
    CHECK_THAT(chi.imag(), Catch::Matchers::WithinRel(2.49364183057012306, 1e-14));
}

TEST_CASE("thermal occupancy follows the Bose-Einstein form") {
    CHECK(thermal_occupancy(0.0, 1.0) == 0.0);
    // omega_m / T = ln 2 makes exp(omega_m/T) - 1 = 1 exactly.
    CHECK_THAT(thermal_occupancy(1.0 / std::log(2.0), 1.0),
               Catch::Matchers::WithinRel(1.0, 1e-14));
    // Classical limit: T = 100 omega_m; frozen exact value 1/(e^(1/100) - 1).
    const double classical = thermal_occupancy(100.0, 1.0);
    CHECK_THAT(classical, Catch::Matchers::WithinRel(99.5008333319444477, 1e-14));
    CHECK_THAT(classical, Catch::Matchers::WithinRel(100.0, 0.01));  // within 1% of T/omega_m
    // Monotone in temperature.
    CHECK(thermal_occupancy(2.0, 1.0) > thermal_occupancy(1.0, 1.0));
    CHECK_THROWS_AS(thermal_occupancy(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(thermal_occupancy(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("normalization to mechanical-frequency units preserves the physics") {
    CavityParams p;
    p.gamma = 300.0;
    p.gamma_m = 0.01;
    p.omega_m = 1000.0;
    p.delta = 4.0;
    p.g_omega = 0.07;
    p.g_gamma = 0.02;
    p.drive_amplitude = 50.0;
    p.n_th = 2.5;

    const CavityParams n = p.normalized();
    CHECK(n.omega_m == 1.0);
    CHECK_THAT(n.gamma, Catch::Matchers::WithinRel(0.3, 1e-15));
    CHECK_THAT(n.gamma_m, Catch::Matchers::WithinRel(1e-5, 1e-15));
    CHECK_THAT(n.delta, Catch::Matchers::WithinRel(4e-3, 1e-15));
    CHECK(n.n_th == p.n_th);

    // The intracavity amplitude is dimensionless and must not change.
    const SteadyState orig = steady_state(p);
    const SteadyState norm = steady_state(n);
    CHECK_THAT(std::abs(norm.a0), Catch::Matchers::WithinRel(std::abs(orig.a0), 1e-13));
    // Couplings are rates: they scale down by omega_m.
    CHECK_THAT(norm.G_omega * p.omega_m, Catch::Matchers::WithinRel(orig.G_omega, 1e-13));
    CHECK_THAT(norm.G_gamma * p.omega_m, Catch::Matchers::WithinRel(orig.G_gamma, 1e-13));
}
