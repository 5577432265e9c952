// Homodyne spectra, optimal squeezing, cooperativities, and the closed-form
// limits that serve as cross-checks on the general solver.

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "optomech/spectrum.hpp"

using namespace optomech;

namespace {

CavityParams wide_params(double gamma = 100.0) {
    CavityParams p;
    p.gamma = gamma;
    p.gamma_m = 1e-3;
    p.omega_m = 1.0;
    return p;
}

SteadyState with_G_omega(double g) {
    SteadyState s;
    s.a0 = 1.0;
    s.G_omega = g;
    return s;
}

SteadyState with_G_gamma(double g) {
    SteadyState s;
    s.a0 = 1.0;
    s.G_gamma = g;
    return s;
}

// Coupling strength that realizes a requested back-action cooperativity.
double g_for_cooperativity(const CavityParams& p, double n_ba) {
    return std::sqrt(n_ba * p.gamma * p.gamma_m);
}

}  // namespace

TEST_CASE("shot-noise floor: zero couplings give unit spectrum at every angle") {
    const CavityParams p = wide_params();
    SteadyState s;
    s.a0 = 1.0;
    const Eigen::Matrix3cd n = input_correlator(0.0);
    for (double w : {0.2, 0.9, 1.0, 1.4}) {
        const NoiseTransfer plus = transfer_general(w, CouplingKind::dispersive, p, s);
        const NoiseTransfer minus = transfer_general(-w, CouplingKind::dispersive, p, s);
        for (double theta : {0.0, 0.4, M_PI / 2, 2.0}) {
            CHECK_THAT(szz(theta, plus, minus, n), Catch::Matchers::WithinRel(1.0, 1e-12));
        }
    }
}

TEST_CASE("frequency-pull coupling leaves the amplitude quadrature at vacuum") {
    const CavityParams p = wide_params();
    const SteadyState s = with_G_omega(0.5);
    const Eigen::Matrix3cd n = input_correlator(0.3);
    for (double w : {0.5, 0.999, 1.0, 1.002, 1.8}) {
        const NoiseTransfer plus = transfer_dispersive_badcavity(w, p, s);
        const NoiseTransfer minus = transfer_dispersive_badcavity(-w, p, s);
        CHECK_THAT(szz(0.0, plus, minus, n), Catch::Matchers::WithinRel(1.0, 1e-14));
    }
}

TEST_CASE("on-resonance phase-quadrature noise matches the frozen closed-form values") {
    // S_ZZ(omega_m, theta=pi/2) = 1 + 16 n_ba (n_th + n_ba + 1/2).
    const CavityParams p = wide_params();

    SECTION("n_ba = 2, n_th = 0 -> 81") {
        const SteadyState s = with_G_omega(g_for_cooperativity(p, 2.0));
        const Eigen::Matrix3cd n = input_correlator(0.0);
        const NoiseTransfer plus = transfer_dispersive_badcavity(p.omega_m, p, s);
        const NoiseTransfer minus = transfer_dispersive_badcavity(-p.omega_m, p, s);
        CHECK_THAT(szz(M_PI / 2, plus, minus, n), Catch::Matchers::WithinRel(81.0, 1e-12));
    }
    SECTION("n_ba = 1/2, n_th = 3/10 -> 11.4") {
        const SteadyState s = with_G_omega(g_for_cooperativity(p, 0.5));
        const Eigen::Matrix3cd n = input_correlator(0.3);
        const NoiseTransfer plus = transfer_dispersive_badcavity(p.omega_m, p, s);
        const NoiseTransfer minus = transfer_dispersive_badcavity(-p.omega_m, p, s);
        CHECK_THAT(szz(M_PI / 2, plus, minus, n), Catch::Matchers::WithinRel(11.4, 1e-12));
    }
}

TEST_CASE("no squeezing exactly on the mechanical resonance") {
    // Re chi(omega_m) = 0 removes the cross term, so the best quadrature is
    // the untouched one: s_min = 1 at theta = 0.
    const CavityParams p = wide_params();
    const SteadyState s = with_G_omega(g_for_cooperativity(p, 2.0));
    const Eigen::Matrix3cd n = input_correlator(0.0);
    const NoiseTransfer plus = transfer_dispersive_badcavity(p.omega_m, p, s);
    const NoiseTransfer minus = transfer_dispersive_badcavity(-p.omega_m, p, s);
    const OptimalSqueeze opt = optimal_squeeze(plus, minus, n);
    CHECK_THAT(opt.s_min, Catch::Matchers::WithinRel(1.0, 1e-10));
    const double folded = std::min(opt.theta_opt, M_PI - opt.theta_opt);
    CHECK_THAT(folded, Catch::Matchers::WithinAbs(0.0, 1e-6));
}

TEST_CASE("optimal squeezing dips below vacuum off resonance and bounds the samples") {
    const CavityParams p = wide_params();
    const SteadyState s = with_G_omega(g_for_cooperativity(p, 2.0));
    const Eigen::Matrix3cd n = input_correlator(0.0);
    for (double off : {0.5, 1.0, 3.0, 8.0}) {
        const double w = p.omega_m + off * p.gamma_m;
        const NoiseTransfer plus = transfer_dispersive_badcavity(w, p, s);
        const NoiseTransfer minus = transfer_dispersive_badcavity(-w, p, s);
        const OptimalSqueeze opt = optimal_squeeze(plus, minus, n);
        CHECK(opt.s_min < 1.0);
        CHECK(opt.s_min > 0.0);
        for (double theta : {0.0, 0.3, 1.0, 2.2}) {
            CHECK(opt.s_min <= szz(theta, plus, minus, n) + 1e-12);
        }
        // The attaining angle really attains it.
        CHECK_THAT(szz(opt.theta_opt, plus, minus, n),
                   Catch::Matchers::WithinRel(opt.s_min, 1e-9));
    }
}

TEST_CASE("uncertainty bound: the two quadrature eigenvalues multiply to at least 1") {
    const CavityParams p = wide_params();
    const Eigen::Matrix3cd n = input_correlator(0.0);
    for (double nba : {0.5, 2.0, 50.0}) {
        const SteadyState s = with_G_omega(g_for_cooperativity(p, nba));
        for (double off : {0.0, 0.7, 2.0, 10.0}) {
            const double w = p.omega_m + off * p.gamma_m;
            const NoiseTransfer plus = transfer_general(w, CouplingKind::dispersive, p, s);
            const NoiseTransfer minus = transfer_general(-w, CouplingKind::dispersive, p, s);
            const OptimalSqueeze opt = optimal_squeeze(plus, minus, n);
            CHECK(opt.s_min * opt.s_max >= 1.0 - 1e-10);
        }
    }
}

TEST_CASE("squeezing floor formula") {
    CHECK(s_limit(0.0, 0.0) == 1.0);
    CHECK_THAT(s_limit(0.5, 0.0), Catch::Matchers::WithinRel(0.5, 1e-15));
    CHECK(s_limit(1e12, 0.0) < 1e-11);
    CHECK_THAT(s_limit(2.0, 0.0), Catch::Matchers::WithinRel(0.2, 1e-15));
    CHECK_THROWS_AS(s_limit(-1.0, 0.0), std::invalid_argument);
}

TEST_CASE("near-resonance Lorentzian profile of the optimal squeezing") {
    const double gamma_m = 1e-3;
    CHECK_THAT(lorentzian_sm(0.0, 2.0, 0.0, gamma_m), Catch::Matchers::WithinRel(1.0, 1e-14));
    CHECK_THAT(lorentzian_sm(0.5 * gamma_m, 2.0, 0.0, gamma_m),
               Catch::Matchers::WithinRel(0.6, 1e-14));
    CHECK_THAT(lorentzian_sm(1e6 * gamma_m, 2.0, 0.0, gamma_m),
               Catch::Matchers::WithinRel(0.2, 1e-9));
}

TEST_CASE("Lorentzian profile matches the solver in its validity window") {
    // The profile is valid while |offset|/gamma_m stays well below
    // n_ba + n_th + 1/2, so probe a strongly driven, hot configuration.
    const CavityParams base = wide_params();
    CavityParams p = base;
    p.n_th = 50.0;
    const double n_ba = 150.0;
    const SteadyState s = with_G_omega(g_for_cooperativity(p, n_ba));
    const Eigen::Matrix3cd n = input_correlator(p.n_th);
    for (double d : {-12.0, -10.0, -3.0, -1.0, 1.0, 3.0, 10.0, 12.0}) {
        const double w = p.omega_m - d * p.gamma_m;
        const NoiseTransfer plus = transfer_dispersive_badcavity(w, p, s);
        const NoiseTransfer minus = transfer_dispersive_badcavity(-w, p, s);
        const double got = optimal_squeeze(plus, minus, n).s_min;
        const double predicted = lorentzian_sm(d * p.gamma_m, n_ba, p.n_th, p.gamma_m);
        CHECK_THAT(got, Catch::Matchers::WithinRel(predicted, 0.02));
    }
    // Far wing (still within validity): the spectrum sits on the S_0 floor.
    const double w = p.omega_m - 10.0 * p.gamma_m;
    const NoiseTransfer plus = transfer_dispersive_badcavity(w, p, s);
    const NoiseTransfer minus = transfer_dispersive_badcavity(-w, p, s);
    CHECK_THAT(optimal_squeeze(plus, minus, n).s_min,
               Catch::Matchers::WithinRel(s_limit(n_ba, p.n_th), 0.02));
}

TEST_CASE("swap correspondence between the two coupling kinds") {
    // Dissipative coupling with G_g |beta(omega)| = G squeezes exactly as the
    // dispersive coupling with G_w = G, in the conjugate quadrature.
    const CavityParams p = wide_params();
    const Eigen::Matrix3cd n = input_correlator(0.2);
    const double g = 0.45;
    for (double off : {0.6, 2.0, 5.0}) {
        const double w = p.omega_m + off * p.gamma_m;
        const double beta_mag = 2.0 * w / p.gamma;
        const SteadyState disp = with_G_omega(g);
        const SteadyState diss = with_G_gamma(g / beta_mag);

        const OptimalSqueeze a = optimal_squeeze(transfer_dispersive_badcavity(w, p, disp),
                                                 transfer_dispersive_badcavity(-w, p, disp), n);
        const OptimalSqueeze b = optimal_squeeze(transfer_dissipative_badcavity(w, p, diss),
                                                 transfer_dissipative_badcavity(-w, p, diss), n);
        CHECK_THAT(b.s_min, Catch::Matchers::WithinRel(a.s_min, 1e-9));
        // theta_opt shifts by pi/2 (mod pi).
        double shift = std::fmod(std::abs(a.theta_opt - b.theta_opt), M_PI);
        shift = std::min(shift, M_PI - shift);
        CHECK_THAT(shift, Catch::Matchers::WithinAbs(M_PI / 2, 1e-6));
    }
}

TEST_CASE("closed-form cooperativities") {
    CavityParams p;
    p.gamma = 1.0;
    p.gamma_m = 1.0;
    p.omega_m = 2.0;  // keep the oscillator underdamped
    SteadyState s;
    s.a0 = 1.0;
    s.G_omega = 1.0;
    s.G_gamma = 1.0;
    CHECK_THAT(cooperativity(p, s, CouplingKind::dispersive),
               Catch::Matchers::WithinRel(1.0, 1e-15));
    // At omega = gamma/2 the dilution factor is exactly 1.
    CHECK_THAT(cooperativity(p, s, CouplingKind::dissipative, p.gamma / 2),
               Catch::Matchers::WithinRel(1.0, 1e-15));
    CHECK(cooperativity(p, s, CouplingKind::dissipative, 0.0) == 0.0);
    CHECK_THAT(cooperativity(p, s, CouplingKind::dissipative, p.gamma / 20),
               Catch::Matchers::WithinRel(0.01, 1e-12));
}

TEST_CASE("solver-extracted cooperativity tracks the closed form") {
    const CavityParams p = wide_params(1e3);
    const double w = p.omega_m;

    const SteadyState disp = with_G_omega(0.5);
    const double disp_expected = cooperativity(p, disp, CouplingKind::dispersive);
    CHECK_THAT(extracted_cooperativity(w, CouplingKind::dispersive, p, disp),
               Catch::Matchers::WithinRel(disp_expected, 5e-2));

    const SteadyState diss = with_G_gamma(0.5);
    const double diss_expected = cooperativity(p, diss, CouplingKind::dissipative, w);
    CHECK_THAT(extracted_cooperativity(w, CouplingKind::dissipative, p, diss),
               Catch::Matchers::WithinRel(diss_expected, 5e-2));
}

TEST_CASE("backaction drive ratio equals the sideband dilution factor") {
    const CavityParams p = wide_params();
    const SteadyState s = with_G_gamma(0.3);
    CHECK_THAT(backaction_reduction_factor(p.gamma / 2, p, s),
               Catch::Matchers::WithinRel(1.0, 1e-10));
    CHECK_THAT(backaction_reduction_factor(1.0, p, s),
               Catch::Matchers::WithinRel(2.0 / p.gamma, 1e-10));
    // gamma / omega = 1e3 at fixed omega = 1.
    CavityParams wide = wide_params(1e3);
    CHECK_THAT(backaction_reduction_factor(1.0, wide, s),
               Catch::Matchers::WithinRel(2e-3, 0.01));
    SteadyState uncoupled;
    uncoupled.a0 = 1.0;
    CHECK_THROWS_AS(backaction_reduction_factor(1.0, p, uncoupled), std::invalid_argument);
}

TEST_CASE("spectrum sweep over a grid") {
    CavityParams p = wide_params();
    const SteadyState s = with_G_omega(g_for_cooperativity(p, 2.0));
    std::vector<double> grid;
    for (int k = -20; k <= 20; ++k) grid.push_back(p.omega_m + 0.5 * k * p.gamma_m);

    const SqueezeSpectrum sp = spectrum_sweep(p, s, CouplingKind::dispersive, grid);
    REQUIRE(sp.grid.size() == grid.size());
    REQUIRE(sp.s_zz.size() == 2);
    CHECK(sp.validated);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(sp.s_min[i] <= sp.s_zz[0][i] + 1e-12);
        CHECK(sp.s_min[i] <= sp.s_zz[1][i] + 1e-12);
        CHECK(sp.s_min[i] > 0.0);
        CHECK(sp.s_min[i] <= 1.0 + 1e-10);
        CHECK_THAT(sp.n_ba_like[i], Catch::Matchers::WithinRel(2.0, 1e-12));
        CHECK_THAT(sp.s_limit_value[i], Catch::Matchers::WithinRel(0.2, 1e-12));
    }

    // Zero couplings: the floor column is identically 1.
    SteadyState off;
    off.a0 = 1.0;
    const SqueezeSpectrum flat = spectrum_sweep(p, off, CouplingKind::dispersive, grid);
    for (double v : flat.s_min) CHECK_THAT(v, Catch::Matchers::WithinRel(1.0, 1e-10));

    // Unvalidated territory is flagged, not rejected.
    CHECK_FALSE(spectrum_sweep(p, s, CouplingKind::mixed, grid).validated);
    CavityParams detuned = p;
    detuned.delta = 0.05;
    CHECK_FALSE(spectrum_sweep(detuned, s, CouplingKind::dispersive, grid).validated);
}

TEST_CASE("default spectrum grid clusters around the mechanical resonance") {
    const CavityParams p = wide_params();
    const std::vector<double> g = default_spectrum_grid(p);
    CHECK(g.size() >= 500);
    CHECK(std::is_sorted(g.begin(), g.end()));
    CHECK(g.front() >= 0.4 * p.omega_m);
    CHECK(g.back() <= 2.1 * p.omega_m);
    // More than half of all points lie within 50 gamma_m of resonance.
    const auto lo = std::lower_bound(g.begin(), g.end(), p.omega_m - 50.0 * p.gamma_m);
    const auto hi = std::upper_bound(g.begin(), g.end(), p.omega_m + 50.0 * p.gamma_m);
    CHECK(std::distance(lo, hi) > static_cast<std::ptrdiff_t>(g.size() / 2));
    CHECK(std::binary_search(g.begin(), g.end(), p.omega_m));
}
