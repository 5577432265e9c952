#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "optomech/drift.hpp"
#include "optomech/errors.hpp"
#include "optomech/params.hpp"

namespace optomech {

using Matrix23c = Eigen::Matrix<complexd, 2, 3>;
using Matrix43c = Eigen::Matrix<complexd, 4, 3>;

/// Linear map from the input noise quadratures (X_in, Y_in, Q_in) at one
/// frequency to the outgoing optical quadratures (X_out, Y_out).
struct NoiseTransfer {
    double omega = 0.0;
    Matrix23c t = Matrix23c::Zero();
};

/// Second-order correlators of the input noises, <u_a(omega) u_b(omega')>
/// stripped of the delta(omega + omega') factor. The optical block is the
/// vacuum: unit diagonal with the +/- i cross terms of a pure state (its
/// eigenvalues are 0 and 2); the mechanical drive carries n_th + 1/2 quanta.
[[nodiscard]] inline Eigen::Matrix3cd input_correlator(double n_th) {
    if (!(n_th >= 0.0)) throw std::invalid_argument("n_th cannot be negative");
    Eigen::Matrix3cd n = Eigen::Matrix3cd::Zero();
    n(0, 0) = 1.0;
    n(1, 1) = 1.0;
    n(0, 1) = complexd(0.0, 1.0);   // <X_in(omega) Y_in(omega')> = +i delta
    n(1, 0) = complexd(0.0, -1.0);  // <Y_in(omega) X_in(omega')> = -i delta
    n(2, 2) = n_th + 0.5;
    return n;
}

/// Relative sideband response of the dissipative channel, 2 i omega / gamma.
/// Its magnitude is the factor by which the dissipative coupling is diluted
/// at frequencies well inside the cavity bandwidth.
[[nodiscard]] inline complexd dissipative_response_factor(double omega, double gamma) {
    return complexd(0.0, 2.0 * omega / gamma);
}

namespace detail {
inline void require_on_resonance(const CavityParams& p, const char* who) {
    if (p.delta != 0.0)
        throw std::invalid_argument(std::string(who) +
                                    " is a resonance-only closed form; delta must be 0");
}
}  // namespace detail

/// Purely dispersive coupling in the broadband-cavity limit (gamma >> omega).
/// The amplitude quadrature reflects unchanged; the phase quadrature picks up
/// the mechanical signal and the back-action-correlated amplitude noise:
///   X_out = X_in
///   Y_out = Y_in + (4 G_w^2 / gamma) chi X_in + (4 G_w / sqrt(gamma)) sqrt(gamma_m) chi Q_in
[[nodiscard]] inline NoiseTransfer transfer_dispersive_badcavity(double omega,
                                                                 const CavityParams& p,
                                                                 const SteadyState& s) {
    p.validate();
    detail::require_on_resonance(p, "transfer_dispersive_badcavity");
    const complexd chi = susceptibility(omega, p);
    const double g = s.G_omega;
    NoiseTransfer nt;
    nt.omega = omega;
    nt.t(0, 0) = 1.0;
    nt.t(1, 0) = 4.0 * g * g / p.gamma * chi;
    nt.t(1, 1) = 1.0;
    nt.t(1, 2) = 4.0 * g / std::sqrt(p.gamma) * std::sqrt(p.gamma_m) * chi;
    return nt;
}

/// Purely dissipative coupling in the broadband-cavity limit. The roles of
/// the quadratures are exchanged relative to the dispersive case and every
/// coupling is diluted by the sideband factor beta(omega) = 2 i omega / gamma:
///   Y_out = Y_in
///   X_out = X_in + (4 G_g beta / sqrt(gamma)) chi [ sqrt(gamma_m) Q_in + (G_g beta / sqrt(gamma)) Y_in ]
[[nodiscard]] inline NoiseTransfer transfer_dissipative_badcavity(double omega,
                                                                  const CavityParams& p,
                                                                  const SteadyState& s) {
    p.validate();
    detail::require_on_resonance(p, "transfer_dissipative_badcavity");
    const complexd chi = susceptibility(omega, p);
    const complexd beta = dissipative_response_factor(omega, p.gamma);
    const double g = s.G_gamma;
    const complexd feed = 4.0 * g * beta / std::sqrt(p.gamma);  // common Q->X_out factor
    NoiseTransfer nt;
    nt.omega = omega;
    nt.t(1, 1) = 1.0;
    nt.t(0, 0) = 1.0;
    nt.t(0, 1) = feed * (g * beta / std::sqrt(p.gamma)) * chi;
    nt.t(0, 2) = feed * std::sqrt(p.gamma_m) * chi;
    return nt;
}

/// Noise feed matrix B of v_dot = A v + B u_in over inputs (X_in, Y_in, Q_in).
/// The optical quadratures receive sqrt(gamma)/2 of their own input, the
/// mechanics sqrt(gamma_m) Q_in, and the dissipative coupling additionally
/// feeds the input field directly into the mechanical force (-G_g/sqrt(gamma)
/// on Y_in) -- the interference term responsible for the back-action dilution.
[[nodiscard]] inline Eigen::Matrix<double, 4, 3> noise_input_matrix(const CavityParams& p,
                                                                    const SteadyState& s,
                                                                    CouplingKind kind) {
    Eigen::Matrix<double, 4, 3> b = Eigen::Matrix<double, 4, 3>::Zero();
    b(0, 0) = std::sqrt(p.gamma) / 2.0;
    b(1, 1) = std::sqrt(p.gamma) / 2.0;
    b(3, 2) = std::sqrt(p.gamma_m);
    if (kind == CouplingKind::dissipative || kind == CouplingKind::mixed)
        b(3, 1) += -s.G_gamma / std::sqrt(p.gamma);
    return b;
}

/// Steady-amplitude response of the full first-order system at one frequency:
/// the 4x3 map from (X_in, Y_in, Q_in) to the internal vector (X, Y, Q, P),
/// i.e. the solution of (-i omega I - A) v = B u_in. Throws
/// SingularSystemError if the system matrix is not invertible (possible only
/// for gamma_m = 0 exactly on the mechanical resonance).
[[nodiscard]] inline Matrix43c intracavity_response(double omega, CouplingKind kind,
                                                    const CavityParams& p,
                                                    const SteadyState& s) {
    const DriftMatrix d = drift_matrix(p, s, kind);
    Eigen::Matrix4cd m = -d.a.cast<complexd>();
    m.diagonal().array() += complexd(0.0, -omega);
    Eigen::FullPivLU<Eigen::Matrix4cd> lu(m);
    if (!lu.isInvertible())
        throw SingularSystemError("frequency-domain system matrix is singular at omega = " +
                                  std::to_string(omega));
    const Eigen::Matrix<double, 4, 3> b = noise_input_matrix(p, s, kind);
    return lu.solve(b.cast<complexd>());
}

/// Full input-output transfer without the broadband-cavity truncation:
/// exact in omega/gamma at any detuning. The outgoing field follows from the
/// boundary relations X_in + X_out = 2 sqrt(gamma) X - (4 G_g / sqrt(gamma)) Q
/// (the Q term only for dissipative coupling) and Y_in + Y_out = 2 sqrt(gamma) Y.
///
/// Accepted but unvalidated territory: delta != 0 or mixed coupling. There
/// the solver still describes the stated equations, but no closed form
/// benchmarks it; spectra drivers mark such output accordingly.
[[nodiscard]] inline NoiseTransfer transfer_general(double omega, CouplingKind kind,
                                                    const CavityParams& p,
                                                    const SteadyState& s) {
    p.validate();
    const Matrix43c v = intracavity_response(omega, kind, p, s);
    Eigen::Matrix<complexd, 2, 4> c = Eigen::Matrix<complexd, 2, 4>::Zero();
    const double root_gamma = std::sqrt(p.gamma);
    c(0, 0) = 2.0 * root_gamma;
    c(1, 1) = 2.0 * root_gamma;
    if (kind == CouplingKind::dissipative || kind == CouplingKind::mixed)
        c(0, 2) = -4.0 * s.G_gamma / root_gamma;
    NoiseTransfer nt;
    nt.omega = omega;
    nt.t = c * v;
    nt.t(0, 0) -= 1.0;
    nt.t(1, 1) -= 1.0;
    return nt;
}

}  // namespace optomech
