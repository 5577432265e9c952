#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "optomech/drift.hpp"
#include "optomech/errors.hpp"

namespace optomech {

namespace detail {

/// Horner evaluation of the monic quartic z^4 + a3 z^3 + a2 z^2 + a1 z + a0
/// together with its derivative.
inline void horner_quartic(const std::array<double, 4>& a, std::complex<double> z,
                           std::complex<double>& p, std::complex<double>& dp) {
    p = z + a[3];
    dp = 1.0;
    // degree 2 term
    dp = dp * z + p;
    p = p * z + a[2];
    // degree 1 term
    dp = dp * z + p;
    p = p * z + a[1];
    // degree 0 term
    dp = dp * z + p;
    p = p * z + a[0];
}

}  // namespace detail

/// All four roots of c[0] + c[1] z + ... + c[4] z^4, computed from the
/// eigenvalues of the companion matrix and then polished by a few Newton
/// steps. Each root is validated against a backward-error bound; a root that
/// fails it raises ConvergenceError rather than returning silently wrong
/// values. This route deliberately shares no code with the Routh table so the
/// two can audit each other.
[[nodiscard]] inline std::array<std::complex<double>, 4>
quartic_roots(const std::array<double, 5>& c) {
    for (double v : c)
        if (!std::isfinite(v)) throw std::invalid_argument("polynomial coefficients must be finite");
    if (c[4] == 0.0) throw std::invalid_argument("leading coefficient must be nonzero (quartic expected)");

    const std::array<double, 4> a = {c[0] / c[4], c[1] / c[4], c[2] / c[4], c[3] / c[4]};

    Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
    companion(1, 0) = 1.0;
    companion(2, 1) = 1.0;
    companion(3, 2) = 1.0;
    companion(0, 3) = -a[0];
    companion(1, 3) = -a[1];
    companion(2, 3) = -a[2];
    companion(3, 3) = -a[3];

    Eigen::EigenSolver<Eigen::Matrix4d> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("companion-matrix eigenvalue iteration failed");

    std::array<std::complex<double>, 4> roots;
    for (int i = 0; i < 4; ++i) {
        std::complex<double> z = solver.eigenvalues()(i);
        std::complex<double> p, dp;
        detail::horner_quartic(a, z, p, dp);
        // Guarded Newton polish: recover the accuracy lost in the QR sweep,
        // but only accept steps that reduce the residual. At a (near-)multiple
        // root the derivative vanishes and an unguarded step would walk away
        // from an already-converged eigenvalue.
        for (int it = 0; it < 3; ++it) {
            const double dp_abs = std::abs(dp);
            if (dp_abs < 1e-300) break;
            const std::complex<double> step = p / dp;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            const std::complex<double> z_next = z - step;
            std::complex<double> p_next, dp_next;
            detail::horner_quartic(a, z_next, p_next, dp_next);
            if (!(std::abs(p_next) < std::abs(p))) break;
            z = z_next;
            p = p_next;
            dp = dp_next;
        }
        // Backward-error acceptance: |p(z)| small relative to the largest
        // term magnitude |a_k| |z|^k that was summed to produce it.
        const double zabs = std::abs(z);
        double scale = std::pow(std::max(zabs, 1.0), 4.0);
        double zpow = 1.0;
        for (int k = 0; k <= 3; ++k) {
            scale = std::max(scale, std::abs(a[k]) * zpow);
            zpow *= std::max(zabs, 1e-300);
        }
        if (std::abs(p) > 1e-8 * scale)
            throw ConvergenceError("quartic root failed the backward-error check");
        roots[i] = z;
    }
    return roots;
}

/// Largest real part among the roots of the given quartic.
[[nodiscard]] inline double max_re_root(const std::array<double, 5>& c) {
    const auto roots = quartic_roots(c);
    double m = roots[0].real();
    for (int i = 1; i < 4; ++i) m = std::max(m, roots[i].real());
    return m;
}

/// Spectral-abscissa route to stability: the largest real part of the
/// eigenvalues of the drift matrix, obtained through its characteristic
/// polynomial and the companion-matrix solver. Negative means every
/// fluctuation mode decays.
[[nodiscard]] inline double eigen_oracle(const DriftMatrix& d) {
    return max_re_root(characteristic_polynomial(d));
}

}  // namespace optomech
