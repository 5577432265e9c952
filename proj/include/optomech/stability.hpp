#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "optomech/drift.hpp"
#include "optomech/params.hpp"
#include "optomech/roots.hpp"
#include "optomech/routh.hpp"

namespace optomech {

/// Stability of one drift matrix judged by two independent routes:
/// the Routh-Hurwitz table of the characteristic polynomial, and the
/// spectral abscissa from the companion-matrix root solver.
struct StabilityReport {
    std::array<double, 5> char_poly{};  ///< ascending coefficients, monic in s^4
    bool rh_stable = false;             ///< strict Routh-Hurwitz verdict
    bool rh_marginal = false;           ///< degenerate pivot in the Routh table
    double max_re_eig = 0.0;            ///< largest real part of the drift eigenvalues
    bool eig_marginal = false;          ///< |max_re_eig| within the marginal band
    bool methods_agree = false;         ///< verdicts consistent away from the boundary
};

/// Default half-width of the band around zero within which the spectral
/// abscissa is treated as marginal rather than as a strict sign.
[[nodiscard]] inline double default_marginal_tol(const CavityParams& p) {
    return 1e-9 * p.omega_m;
}

/// Run both stability routes on a drift matrix. `marginal_tol` classifies
/// near-zero spectral abscissae as boundary cases; at such points (or when
/// the Routh table itself degenerates) the two routes are not required to
/// agree and `methods_agree` is set true by exclusion.
[[nodiscard]] inline StabilityReport analyze_stability(const DriftMatrix& d,
                                                       double marginal_tol) {
    if (!(marginal_tol >= 0.0)) throw std::invalid_argument("marginal_tol must be >= 0");
    StabilityReport r;
    r.char_poly = characteristic_polynomial(d);
    const RouthResult routh = routh_analyze(r.char_poly);
    r.rh_stable = routh.stable;
    r.rh_marginal = routh.marginal;
    r.max_re_eig = eigen_oracle(d);
    r.eig_marginal = std::abs(r.max_re_eig) <= marginal_tol;
    r.methods_agree =
        r.eig_marginal || r.rh_marginal || (r.rh_stable == (r.max_re_eig < 0.0));
    return r;
}

/// Critical detuning at which a weakly damped mechanical mode is driven
/// unstable by the radiation-pressure feedback, in the small-detuning
/// expansion of the stability boundary. Returns the signed detuning:
/// positive for the frequency-pull (dispersive) coupling, negative for the
/// damping-modulation (dissipative) one, reflecting on which side of
/// resonance each coupling destabilizes. An uncoupled system (G = 0) has no
/// such boundary and yields nullopt: stable for all small detunings.
[[nodiscard]] inline std::optional<double> threshold_small_detuning(const CavityParams& p,
                                                                    const SteadyState& s,
                                                                    CouplingKind kind) {
    p.validate();
    double g_eff = 0.0;
    switch (kind) {
        case CouplingKind::dispersive: g_eff = s.G_omega; break;
        case CouplingKind::dissipative: g_eff = s.G_gamma; break;
        case CouplingKind::mixed:
            throw std::invalid_argument(
                "small-detuning threshold is defined per coupling kind, not for mixed");
    }
    if (g_eff == 0.0) return std::nullopt;

    const double q = p.gamma_m / p.omega_m;
    const double r = p.omega_m / p.gamma;
    const double ratio = p.gamma / g_eff;  // sign cancels in the square
    const double magnitude = p.omega_m * ratio * ratio * (p.gamma / p.omega_m) * q *
                             (1.0 + 4.0 * q * r * r * r + 16.0 * r * r * r * r);
    return (kind == CouplingKind::dispersive) ? magnitude : -magnitude;
}

/// One grid point of a detuning sweep.
struct SweepPoint {
    double delta = 0.0;
    bool rh_stable = false;
    bool rh_marginal = false;
    double max_re_eig = 0.0;
    bool eig_marginal = false;
    bool methods_agree = false;
};

/// A contiguous detuning interval on which the drift is unstable. Endpoints
/// interior to the sweep range are refined by bisection on the spectral
/// abscissa; endpoints clipped by the range carry the corresponding
/// at-edge flag and are not boundary crossings.
struct UnstableInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_at_edge = false;
    bool hi_at_edge = false;
};

/// Result of sweeping the detuning across a range at fixed coupling.
struct DetuningSweep {
    std::vector<SweepPoint> points;
    std::vector<UnstableInterval> intervals;
    bool all_methods_agree = true;
};

namespace detail {

/// Spectral abscissa as a function of detuning, with every other parameter
/// (including the effective couplings, which are treated as independently
/// fixed) held constant.
[[nodiscard]] inline double sweep_abscissa(double delta, const CavityParams& p,
                                           const SteadyState& s, CouplingKind kind) {
    CavityParams q = p;
    q.delta = delta;
    return eigen_oracle(drift_matrix(q, s, kind));
}

/// Bisect a sign change of the spectral abscissa to a relative width of
/// 1e-3 in detuning. `f_lo` is the abscissa at `lo`.
[[nodiscard]] inline double bisect_crossing(double lo, double hi, double f_lo,
                                            const CavityParams& p, const SteadyState& s,
                                            CouplingKind kind) {
    const double abs_floor = 1e-12 * p.omega_m;  // terminate near delta = 0
    for (int it = 0; it < 200; ++it) {
        const double width = hi - lo;
        if (width <= 1e-3 * std::max({std::abs(lo), std::abs(hi), abs_floor})) break;
        const double mid = 0.5 * (lo + hi);
        const double f_mid = sweep_abscissa(mid, p, s, kind);
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Sweep the detuning over [delta_min, delta_max] on a uniform grid with the
/// effective couplings held fixed, classify each point by both stability
/// routes, and extract the unstable intervals with bisected boundaries.
[[nodiscard]] inline DetuningSweep sweep_detuning(const CavityParams& p, const SteadyState& s,
                                                  CouplingKind kind, double delta_min,
                                                  double delta_max, int n_points = 2001) {
    p.validate();
    if (!(delta_min < delta_max))
        throw std::invalid_argument("sweep range must satisfy delta_min < delta_max");
    if (n_points < 2) throw std::invalid_argument("sweep needs at least 2 points");

    const double marginal_tol = default_marginal_tol(p);
    DetuningSweep sweep;
    sweep.points.reserve(static_cast<std::size_t>(n_points));

    CavityParams q = p;
    for (int i = 0; i < n_points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n_points - 1);
        q.delta = delta_min + t * (delta_max - delta_min);
        const StabilityReport rep = analyze_stability(drift_matrix(q, s, kind), marginal_tol);
        SweepPoint pt;
        pt.delta = q.delta;
        pt.rh_stable = rep.rh_stable;
        pt.rh_marginal = rep.rh_marginal;
        pt.max_re_eig = rep.max_re_eig;
        pt.eig_marginal = rep.eig_marginal;
        pt.methods_agree = rep.methods_agree;
        sweep.points.push_back(pt);
        if (!pt.methods_agree) sweep.all_methods_agree = false;
    }

    // Unstable runs by the sign of the spectral abscissa; marginal points are
    // grouped with the stable side so a grazing boundary does not fragment.
    const auto unstable_at = [&](int i) {
        const SweepPoint& pt = sweep.points[static_cast<std::size_t>(i)];
        return !pt.eig_marginal && pt.max_re_eig > 0.0;
    };
    int i = 0;
    while (i < n_points) {
        if (!unstable_at(i)) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < n_points && unstable_at(j + 1)) ++j;

        UnstableInterval iv;
        iv.lo_at_edge = (i == 0);
        iv.hi_at_edge = (j == n_points - 1);
        if (iv.lo_at_edge) {
            iv.lo = sweep.points.front().delta;
        } else {
            const SweepPoint& a = sweep.points[static_cast<std::size_t>(i - 1)];
            const SweepPoint& b = sweep.points[static_cast<std::size_t>(i)];
            iv.lo = detail::bisect_crossing(a.delta, b.delta, a.max_re_eig, p, s, kind);
        }
        if (iv.hi_at_edge) {
            iv.hi = sweep.points.back().delta;
        } else {
            const SweepPoint& a = sweep.points[static_cast<std::size_t>(j)];
            const SweepPoint& b = sweep.points[static_cast<std::size_t>(j + 1)];
            iv.hi = detail::bisect_crossing(a.delta, b.delta, a.max_re_eig, p, s, kind);
        }
        sweep.intervals.push_back(iv);
        i = j + 1;
    }
    return sweep;
}

}  // namespace optomech
