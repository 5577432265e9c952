#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>

#include "optomech/params.hpp"

namespace optomech {

/// Linearized drift of the quadrature vector (X, Y, Q, P): v_dot = A v.
///
/// Optical block: decay at gamma/2 with detuning rotation. Mechanical pair in
/// the standard underdamped-oscillator form, damping and back-action force on
/// P only (Q_dot = omega_m P), which reproduces the susceptibility
/// chi(omega) exactly in the frequency domain.
///
/// Dispersive coupling feeds Q into Y and X into P; dissipative coupling
/// feeds Q into X and Y into P. The dissipative block is the printed
/// linear-in-detuning form; the mixed kind simply adds the two coupling
/// patterns and is exploratory (no analytic benchmark covers it).
struct DriftMatrix {
    Eigen::Matrix4d a;
    CouplingKind kind = CouplingKind::dispersive;
};

[[nodiscard]] inline DriftMatrix drift_matrix(const CavityParams& p, const SteadyState& s,
                                              CouplingKind kind) {
    p.validate();
    DriftMatrix d;
    d.kind = kind;
    Eigen::Matrix4d& a = d.a;
    a.setZero();
    a(0, 0) = -p.gamma / 2.0;
    a(0, 1) = -p.delta;
    a(1, 0) = p.delta;
    a(1, 1) = -p.gamma / 2.0;
    a(2, 3) = p.omega_m;
    a(3, 2) = -p.omega_m;
    a(3, 3) = -p.gamma_m;
    if (kind == CouplingKind::dispersive || kind == CouplingKind::mixed) {
        a(1, 2) += s.G_omega;
        a(3, 0) += s.G_omega;
    }
    if (kind == CouplingKind::dissipative || kind == CouplingKind::mixed) {
        a(0, 2) += s.G_gamma;
        a(3, 1) += s.G_gamma;
    }
    return d;
}

/// Coefficients of det(sI - A) in ascending powers: c[0] + c[1] s + ... + c[4] s^4,
/// with c[4] == 1. Computed by the Faddeev-LeVerrier recursion, which needs
/// only matrix products and traces and is exact up to rounding.
[[nodiscard]] inline std::array<double, 5> characteristic_polynomial(const DriftMatrix& d) {
    const Eigen::Matrix4d& a = d.a;
    std::array<double, 5> c{};
    c[4] = 1.0;
    Eigen::Matrix4d m = a;
    c[3] = -m.trace();
    m = a * (m + c[3] * Eigen::Matrix4d::Identity());
    c[2] = -m.trace() / 2.0;
    m = a * (m + c[2] * Eigen::Matrix4d::Identity());
    c[1] = -m.trace() / 3.0;
    m = a * (m + c[1] * Eigen::Matrix4d::Identity());
    c[0] = -m.trace() / 4.0;
    return c;
}

}  // namespace optomech
