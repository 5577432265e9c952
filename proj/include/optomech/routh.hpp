#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace optomech {

/// Outcome of the Routh-Hurwitz table for a real quartic.
///
/// `stable` is the strict verdict: every root in the open left half plane.
/// `marginal` is set when a first-column pivot vanished (within a
/// cancellation-aware tolerance). By the epsilon-perturbation rule such a
/// polynomial is at best on the stability boundary -- axis roots or a
/// root configuration symmetric about the origin -- so `stable` is then
/// always false and the verdict should not be trusted as a strict sign.
struct RouthResult {
    bool stable = false;
    bool marginal = false;
    std::array<double, 5> first_column{};  ///< [lead, a3, b1, c1, a0] of the monic table
};

/// Build the Routh table of c[0] + c[1] s + ... + c[4] s^4 and read off
/// stability from the signs of its first column. Only the table is used here;
/// the companion root solver (eigen_oracle) is the independent cross-check.
[[nodiscard]] inline RouthResult routh_analyze(const std::array<double, 5>& c) {
    for (double v : c)
        if (!std::isfinite(v)) throw std::invalid_argument("polynomial coefficients must be finite");
    if (c[4] == 0.0) throw std::invalid_argument("leading coefficient must be nonzero (quartic expected)");

    // Monic form; dividing by c[4] (any sign) preserves the roots.
    const double a3 = c[3] / c[4];
    const double a2 = c[2] / c[4];
    const double a1 = c[1] / c[4];
    const double a0 = c[0] / c[4];

    const double coeff_scale =
        std::max({1.0, std::abs(a3), std::abs(a2), std::abs(a1), std::abs(a0)});
    constexpr double rel = 1e-12;

    RouthResult r;
    r.first_column = {1.0, a3, 0.0, 0.0, a0};

    if (std::abs(a3) <= rel * coeff_scale) {  // degenerate pivot in row s^3
        r.marginal = true;
        return r;
    }
    // Row s^2: b1 = (a3 a2 - a1) / a3, b2 = a0. The difference can cancel
    // catastrophically near the stability boundary, hence the explicit scale.
    const double b1 = (a3 * a2 - a1) / a3;
    const double b1_scale = (std::abs(a3 * a2) + std::abs(a1)) / std::abs(a3);
    r.first_column[2] = b1;
    if (std::abs(b1) <= rel * std::max(b1_scale, coeff_scale)) {
        r.marginal = true;
        return r;
    }
    // Row s^1: c1 = (b1 a1 - a3 b2) / b1. A vanishing c1 is an entire zero
    // row for a quartic: the auxiliary polynomial b1 s^2 + a0 has roots in
    // mirror symmetry (pure imaginary pair when b1 a0 > 0).
    const double c1 = (b1 * a1 - a3 * a0) / b1;
    const double c1_scale = (std::abs(b1 * a1) + std::abs(a3 * a0)) / std::abs(b1);
    r.first_column[3] = c1;
    if (std::abs(c1) <= rel * std::max(c1_scale, coeff_scale)) {
        r.marginal = true;
        return r;
    }
    // Row s^0 is a0 again; a vanishing a0 is a root at the origin.
    if (std::abs(a0) <= rel * coeff_scale) {
        r.marginal = true;
        return r;
    }
    r.stable = (a3 > 0.0) && (b1 > 0.0) && (c1 > 0.0) && (a0 > 0.0);
    return r;
}

/// Strict Hurwitz verdict: true iff all roots have negative real parts.
/// Boundary (marginal) cases report false.
[[nodiscard]] inline bool routh_hurwitz(const std::array<double, 5>& c) {
    return routh_analyze(c).stable;
}

}  // namespace optomech
