#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "optomech/errors.hpp"
#include "optomech/params.hpp"
#include "optomech/transfer.hpp"

namespace optomech {

/// Raw (un-symmetrized) homodyne spectrum of Z(theta) = X_out cos(theta) +
/// Y_out sin(theta) at +omega: sum_ab u_i T_ia(omega) N_ab u_j T_jb(-omega).
/// Diagnostic only -- its imaginary and frequency-odd parts carry ordering
/// information that the measured (symmetrized) spectrum discards.
[[nodiscard]] inline complexd szz_raw(double theta, const NoiseTransfer& plus,
                                      const NoiseTransfer& minus, const Eigen::Matrix3cd& n) {
    const Eigen::Vector2cd u(std::cos(theta), std::sin(theta));
    return (u.transpose() * (plus.t * n * minus.t.transpose()) * u)(0);
}

/// Measured homodyne squeezing spectrum: the frequency-even, real part of the
/// raw spectrum, 0.5 Re[s(omega) + s(-omega)]. Values below 1 mean squeezing
/// below the vacuum level.
[[nodiscard]] inline double szz(double theta, const NoiseTransfer& plus,
                                const NoiseTransfer& minus, const Eigen::Matrix3cd& n) {
    return 0.5 * (szz_raw(theta, plus, minus, n) + szz_raw(theta, minus, plus, n)).real();
}

/// 2x2 symmetrized covariance of the output quadratures at one frequency.
/// Real symmetric by construction; S_ZZ(theta) is its quadratic form along
/// (cos theta, sin theta).
[[nodiscard]] inline Eigen::Matrix2d output_covariance(const NoiseTransfer& plus,
                                                       const NoiseTransfer& minus,
                                                       const Eigen::Matrix3cd& n) {
    const Eigen::Matrix2cd s_plus = plus.t * n * minus.t.transpose();
    const Eigen::Matrix2cd s_minus = minus.t * n * plus.t.transpose();
    const Eigen::Matrix2d c = 0.5 * (s_plus + s_minus).real();
    return 0.5 * (c + c.transpose());
}

/// Best squeezing available at one frequency and the quadrature that attains it.
struct OptimalSqueeze {
    double s_min = 1.0;    ///< minimum of S_ZZ over theta
    double theta_opt = 0.0;///< attaining angle, reported in [0, pi)
    double s_max = 1.0;    ///< maximum over theta (conjugate quadrature)
};

/// Minimize S_ZZ over the homodyne angle. Computed through two independent
/// routes that are required to agree to one part in 1e10: (a) the smallest
/// eigenvalue of the symmetrized output covariance, and (b) the closed form
/// s = base + (m - sqrt(m^2 + n^2)) / 2 with m, n extracted from S_ZZ samples
/// at theta = 0, pi/2, pi/4. Disagreement raises ConvergenceError.
[[nodiscard]] inline OptimalSqueeze optimal_squeeze(const NoiseTransfer& plus,
                                                    const NoiseTransfer& minus,
                                                    const Eigen::Matrix3cd& n) {
    const Eigen::Matrix2d c = output_covariance(plus, minus, n);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(c);
    OptimalSqueeze r;
    r.s_min = es.eigenvalues()(0);
    r.s_max = es.eigenvalues()(1);
    const Eigen::Vector2d v = es.eigenvectors().col(0);
    r.theta_opt = std::atan2(v(1), v(0));
    if (r.theta_opt < 0.0) r.theta_opt += M_PI;           // theta and theta+pi are the same quadrature
    if (r.theta_opt >= M_PI) r.theta_opt -= M_PI;

    // Independent route: quadratic-in-theta reconstruction from three spectra.
    const double s0 = szz(0.0, plus, minus, n);
    const double s90 = szz(M_PI / 2.0, plus, minus, n);
    const double s45 = szz(M_PI / 4.0, plus, minus, n);
    const double base = std::min(s0, s90);
    const double m = std::abs(s90 - s0);
    const double cross = 2.0 * (s45 - 0.5 * (s0 + s90));
    const double closed = base + 0.5 * (m - std::hypot(m, cross));
    const double scale = std::max({std::abs(r.s_min), std::abs(closed), 1e-300});
    if (std::abs(closed - r.s_min) > 1e-10 * scale)
        throw ConvergenceError("optimal_squeeze routes disagree: eigenvalue " +
                               std::to_string(r.s_min) + " vs closed form " +
                               std::to_string(closed));
    return r;
}

/// Limiting squeezing floor far from the mechanical resonance (but inside its
/// thermal-plus-back-action linewidth): S_0 = (n_th + 1/2) / (n_ba + n_th + 1/2).
[[nodiscard]] inline double s_limit(double n_ba_like, double n_th) {
    if (!(n_ba_like >= 0.0) || !(n_th >= 0.0))
        throw std::invalid_argument("occupancies must be non-negative");
    return (n_th + 0.5) / (n_ba_like + n_th + 0.5);
}

/// Near-resonance Lorentzian profile of the optimal squeezing,
///   S_m(delta_off) = S_0 + [n_ba / (n_ba + n_th + 1/2)] / (1 + (2 delta_off / gamma_m)^2),
/// where delta_off = omega_m - omega. Valid while
/// |delta_off| / gamma_m << n_ba + n_th + 1/2; outside that window the exact
/// spectrum returns to the vacuum level instead of the S_0 floor.
[[nodiscard]] inline double lorentzian_sm(double delta_off, double n_ba, double n_th,
                                          double gamma_m) {
    if (!(gamma_m > 0.0)) throw std::invalid_argument("gamma_m must be positive");
    const double ns = n_ba + n_th + 0.5;
    const double x = 2.0 * delta_off / gamma_m;
    return s_limit(n_ba, n_th) + (n_ba / ns) / (1.0 + x * x);
}

/// Back-action cooperativity: the number of noise quanta the light drives
/// into the oscillator, normalized like a thermal occupancy. Dispersive
/// coupling gives the frequency-flat G_w^2 / (gamma_m gamma); dissipative
/// coupling is diluted by |beta(omega)|^2 = (2 omega / gamma)^2; mixed adds both.
[[nodiscard]] inline double cooperativity(const CavityParams& p, const SteadyState& s,
                                          CouplingKind kind, double omega = 0.0) {
    p.validate();
    double n = 0.0;
    if (kind == CouplingKind::dispersive || kind == CouplingKind::mixed)
        n += s.G_omega * s.G_omega / (p.gamma_m * p.gamma);
    if (kind == CouplingKind::dissipative || kind == CouplingKind::mixed) {
        const double dilution = 2.0 * omega / p.gamma;
        n += s.G_gamma * s.G_gamma / (p.gamma_m * p.gamma) * dilution * dilution;
    }
    return n;
}

/// Cooperativity measured from the general solver rather than the closed
/// form: the optical-to-thermal drive power ratio of the mechanical response,
/// (|H_QX|^2 + |H_QY|^2) / |H_QQ|^2, where H_Q* are the Q-row entries of the
/// intracavity response. For the pure couplings on resonance this reproduces
/// the closed-form cooperativity up to O(omega/gamma)^2 cavity corrections.
[[nodiscard]] inline double extracted_cooperativity(double omega, CouplingKind kind,
                                                    const CavityParams& p,
                                                    const SteadyState& s) {
    p.validate();
    const Matrix43c v = intracavity_response(omega, kind, p, s);
    const double thermal = std::norm(v(2, 2));
    if (thermal <= 0.0)
        throw NumericalError("mechanical response to its own bath vanished; cannot normalize");
    return (std::norm(v(2, 0)) + std::norm(v(2, 1))) / thermal;
}

/// How much weaker the vacuum-noise drive on the mechanics is for dissipative
/// coupling than for dispersive coupling of equal strength, measured from the
/// general solver at the same G. Equals |beta(omega)| = 2 |omega| / gamma
/// identically on resonance (the cavity response factor cancels in the ratio).
[[nodiscard]] inline double backaction_reduction_factor(double omega, const CavityParams& p,
                                                        const SteadyState& s) {
    p.validate();
    const double g = (s.G_gamma != 0.0) ? std::abs(s.G_gamma) : std::abs(s.G_omega);
    if (g == 0.0)
        throw std::invalid_argument(
            "backaction_reduction_factor needs a nonzero coupling to compare");
    SteadyState diss, disp;
    diss.a0 = disp.a0 = s.a0;
    diss.G_gamma = g;
    disp.G_omega = g;
    const Matrix43c vd = intracavity_response(omega, CouplingKind::dissipative, p, diss);
    const Matrix43c vp = intracavity_response(omega, CouplingKind::dispersive, p, disp);
    const double drive_diss = std::hypot(std::abs(vd(2, 0)), std::abs(vd(2, 1)));
    const double drive_disp = std::hypot(std::abs(vp(2, 0)), std::abs(vp(2, 1)));
    if (drive_disp == 0.0)
        throw NumericalError("dispersive reference drive vanished; ratio undefined");
    return drive_diss / drive_disp;
}

/// Squeezing spectrum over a frequency grid (frequencies in the same unit as
/// the parameters). `validated` is false when the run used mixed coupling or
/// nonzero detuning, where the solver is exploratory.
struct SqueezeSpectrum {
    std::vector<double> grid;                 ///< probed frequencies
    std::vector<double> s_min;                ///< optimal squeezing per frequency
    std::vector<double> theta_opt;            ///< attaining homodyne angle, [0, pi)
    std::vector<double> n_ba_like;            ///< cooperativity entering the floor formula
    std::vector<double> s_limit_value;        ///< S_0 floor from n_ba_like
    std::vector<double> thetas;               ///< requested fixed angles
    std::vector<std::vector<double>> s_zz;    ///< s_zz[k][i]: spectrum at thetas[k], grid[i]
    CouplingKind kind = CouplingKind::dispersive;
    bool validated = true;
};

/// Default frequency grid for spectra: a symmetric, logarithmically dense
/// cluster of 501 points within 50 gamma_m of the mechanical resonance
/// (resolving the gamma_m-wide squeezing feature) on top of a coarse linear
/// background over [omega_m / 2, 2 omega_m].
[[nodiscard]] inline std::vector<double> default_spectrum_grid(const CavityParams& p) {
    std::vector<double> g;
    const double span = 50.0 * p.gamma_m;
    const double inner = 1e-3 * p.gamma_m;  // innermost offset resolved on each side
    const int side = 250;
    g.reserve(501 + 101);
    for (int i = 0; i < side; ++i) {
        const double off = inner * std::pow(span / inner, static_cast<double>(i) / (side - 1));
        g.push_back(p.omega_m - off);
        g.push_back(p.omega_m + off);
    }
    g.push_back(p.omega_m);
    for (int i = 0; i <= 100; ++i)
        g.push_back(p.omega_m * (0.5 + 1.5 * i / 100.0));
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

/// Sweep the general solver over a frequency grid, minimizing over the
/// homodyne angle at every point and tabulating S_ZZ at the requested fixed
/// angles. Pure functions of frequency; points are independent.
[[nodiscard]] inline SqueezeSpectrum spectrum_sweep(const CavityParams& p, const SteadyState& s,
                                                    CouplingKind kind,
                                                    const std::vector<double>& grid,
                                                    const std::vector<double>& thetas = {0.0,
                                                                                         M_PI / 2.0}) {
    p.validate();
    if (grid.empty()) throw std::invalid_argument("spectrum grid is empty");
    SqueezeSpectrum out;
    out.kind = kind;
    out.validated = (kind != CouplingKind::mixed) && (p.delta == 0.0);
    out.grid = grid;
    out.thetas = thetas;
    out.s_zz.assign(thetas.size(), {});
    const Eigen::Matrix3cd n = input_correlator(p.n_th);
    for (double w : grid) {
        const NoiseTransfer plus = transfer_general(w, kind, p, s);
        const NoiseTransfer minus = transfer_general(-w, kind, p, s);
        const OptimalSqueeze opt = optimal_squeeze(plus, minus, n);
        out.s_min.push_back(opt.s_min);
        out.theta_opt.push_back(opt.theta_opt);
        const double nba = cooperativity(p, s, kind, w);
        out.n_ba_like.push_back(nba);
        out.s_limit_value.push_back(s_limit(nba, p.n_th));
        for (std::size_t k = 0; k < thetas.size(); ++k)
            out.s_zz[k].push_back(szz(thetas[k], plus, minus, n));
    }
    return out;
}

}  // namespace optomech
