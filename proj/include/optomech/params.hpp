#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace optomech {

using complexd = std::complex<double>;

/// Which position dependence of the cavity couples to the mechanics:
/// the resonance frequency (dispersive), the decay rate (dissipative),
/// or both at once. Mixed results are exploratory: the analytic
/// benchmarks below only cover the two pure cases.
enum class CouplingKind { dispersive, dissipative, mixed };

[[nodiscard]] inline const char* to_string(CouplingKind k) {
    switch (k) {
        case CouplingKind::dispersive:  return "dispersive";
        case CouplingKind::dissipative: return "dissipative";
        case CouplingKind::mixed:       return "mixed";
    }
    return "unknown";
}

/// Physical parameters of a one-sided optomechanical cavity whose input
/// mirror is the mechanical oscillator.
///
/// All rate-like members share a single frequency unit; the algebra is
/// invariant under a common rescaling, so any consistent unit works.
/// normalized() rescales everything so that omega_m == 1, which is the
/// unit system used internally by the sweep drivers.
struct CavityParams {
    double gamma = 0.0;            ///< cavity (optical) energy decay rate
    double gamma_m = 0.0;          ///< mechanical damping rate
    double omega_m = 1.0;          ///< mechanical resonance frequency
    double delta = 0.0;            ///< laser-cavity detuning; > 0 means blue
    double g_omega = 0.0;          ///< bare dispersive coupling rate
    double g_gamma = 0.0;          ///< bare dissipative coupling rate
    double drive_amplitude = 0.0;  ///< classical drive amplitude A0 (real, >= 0)
    double n_th = 0.0;             ///< thermal occupancy of the mechanical bath

    friend bool operator==(const CavityParams&, const CavityParams&) = default;

    /// Reject unphysical parameter sets. The mechanical oscillator must be
    /// underdamped (gamma_m < omega_m) for the susceptibility-based spectra
    /// to describe a resonance at all.
    void validate() const {
        auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
        if (!(gamma > 0.0)) fail("cavity decay rate gamma must be positive");
        if (!(gamma_m > 0.0)) fail("mechanical damping gamma_m must be positive");
        if (!(omega_m > 0.0)) fail("mechanical frequency omega_m must be positive");
        if (!(gamma_m < omega_m)) fail("mechanical damping gamma_m must be below omega_m");
        if (!(n_th >= 0.0)) fail("thermal occupancy n_th cannot be negative");
        if (!(drive_amplitude >= 0.0)) fail("drive amplitude must be real and non-negative");
        if (!std::isfinite(gamma) || !std::isfinite(gamma_m) || !std::isfinite(omega_m) ||
            !std::isfinite(delta) || !std::isfinite(g_omega) || !std::isfinite(g_gamma) ||
            !std::isfinite(drive_amplitude) || !std::isfinite(n_th))
            fail("cavity parameters must be finite");
    }

    /// Same physics with omega_m scaled to 1. Rates scale linearly and the
    /// drive amplitude as sqrt(rate), which keeps the intracavity amplitude
    /// and every spectrum dimensionless-identical.
    [[nodiscard]] CavityParams normalized() const {
        CavityParams p = *this;
        const double w = omega_m;
        p.gamma /= w;
        p.gamma_m /= w;
        p.delta /= w;
        p.g_omega /= w;
        p.g_gamma /= w;
        p.drive_amplitude /= std::sqrt(w);
        p.omega_m = 1.0;
        return p;
    }
};

/// Classical working point of the driven cavity and the drive-enhanced
/// coupling rates derived from it. The effective couplings use |a0|: on
/// resonance a0 is real anyway, and off resonance the residual phase is
/// outside the validated scope of the spectra (see transfer_general).
struct SteadyState {
    complexd a0{0.0, 0.0};  ///< mean intracavity amplitude
    double G_omega = 0.0;   ///< effective dispersive coupling, 2 g_omega |a0|
    double G_gamma = 0.0;   ///< effective dissipative coupling, g_gamma |a0|
};

/// Mean-field balance of drive and decay: (gamma/2 - i delta) a0 = sqrt(gamma) A0.
[[nodiscard]] inline SteadyState steady_state(const CavityParams& p) {
    p.validate();
    SteadyState s;
    s.a0 = std::sqrt(p.gamma) * p.drive_amplitude / complexd(p.gamma / 2.0, -p.delta);
    const double mag = std::abs(s.a0);
    s.G_omega = 2.0 * p.g_omega * mag;
    s.G_gamma = p.g_gamma * mag;
    return s;
}

/// Mechanical susceptibility chi(omega) = omega_m / (omega_m^2 - omega^2 - i gamma_m omega).
/// Obeys chi(-omega) = conj(chi(omega)); on resonance chi(omega_m) = i / gamma_m.
[[nodiscard]] inline complexd susceptibility(double omega, const CavityParams& p) {
    const complexd inv(p.omega_m * p.omega_m - omega * omega, -p.gamma_m * omega);
    return p.omega_m / inv;
}

/// Bose-Einstein occupancy 1 / (exp(omega_m / T) - 1) of the mechanical bath.
/// The temperature is given in energy units with hbar = 1, i.e. as a
/// frequency, so the exponent is simply omega_m / temperature. T = 0 gives 0;
/// in the classical limit omega_m << T this approaches T / omega_m.
[[nodiscard]] inline double thermal_occupancy(double temperature, double omega_m) {
    if (!(temperature >= 0.0)) throw std::invalid_argument("temperature cannot be negative");
    if (!(omega_m > 0.0)) throw std::invalid_argument("omega_m must be positive");
    if (temperature == 0.0) return 0.0;
    const double x = omega_m / temperature;
    return 1.0 / std::expm1(x);  // expm1 keeps the classical limit accurate
}

}  // namespace optomech
