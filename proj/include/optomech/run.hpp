#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "optomech/config.hpp"
#include "optomech/csv.hpp"
#include "optomech/errors.hpp"
#include "optomech/params.hpp"
#include "optomech/spectrum.hpp"
#include "optomech/stability.hpp"
#include "optomech/svg.hpp"

namespace optomech {

/// What one invocation produced: the files written and the human-readable
/// summary line(s) for stdout.
struct RunResult {
    std::vector<std::string> files;
    std::string message;
};

namespace detail {

/// Materialize a GridSpec into sample values (linear or logarithmic).
[[nodiscard]] inline std::vector<double> build_grid(const GridSpec& g) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(g.points));
    for (int i = 0; i < g.points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(g.points - 1);
        v.push_back(g.log_scale ? g.min * std::pow(g.max / g.min, t)
                                : g.min + t * (g.max - g.min));
    }
    return v;
}

inline void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw ConfigError(ConfigErrc::io, 0,
                          "cannot create output directory '" + dir + "': " + ec.message());
}

[[nodiscard]] inline RunResult run_spectrum(const RunConfig& cfg, const CavityParams& p,
                                            const SteadyState& s) {
    // Grid values are frequencies in units of the mechanical frequency; the
    // normalized parameter set has omega_m = 1, so they are used directly.
    const std::vector<double> grid =
        cfg.grid ? detail::build_grid(*cfg.grid) : default_spectrum_grid(p);
    const SqueezeSpectrum sp = spectrum_sweep(p, s, cfg.coupling, grid);

    CsvTable t;
    t.preamble = serialize_config(cfg);
    if (!sp.validated)
        t.preamble += "note: exploratory run (mixed coupling or nonzero detuning)\n";
    t.columns = {"omega_over_omega_m", "s_min",     "theta_opt", "s_zz_theta0",
                 "s_zz_theta90",       "n_ba_like", "s_limit"};
    t.data = {sp.grid,    sp.s_min,    sp.theta_opt, sp.s_zz.at(0),
              sp.s_zz.at(1), sp.n_ba_like, sp.s_limit_value};

    ensure_out_dir(cfg.out_dir);
    RunResult r;
    const std::string csv_path =
        (std::filesystem::path(cfg.out_dir) / "spectrum.csv").string();
    csv_write(csv_path, t);
    r.files.push_back(csv_path);

    if (cfg.emit_svg) {
        SvgPlot plot;
        plot.title = "Optimal squeezing spectrum (" + std::string(to_string(cfg.coupling)) + ")";
        plot.x_label = "omega / omega_m";
        plot.y_label = "s_min";
        plot.series.push_back({"s_min", sp.grid, sp.s_min, "#1f6fb2"});
        plot.series.push_back({"s_limit", sp.grid, sp.s_limit_value, "#b23a1f"});
        const std::string svg_path =
            (std::filesystem::path(cfg.out_dir) / "spectrum.svg").string();
        svg_write(svg_path, plot);
        r.files.push_back(svg_path);
    }
    r.message = "spectrum: " + std::to_string(sp.grid.size()) + " frequencies -> " + csv_path;
    return r;
}

[[nodiscard]] inline RunResult run_stability(const RunConfig& cfg, const CavityParams& p,
                                             const SteadyState& s) {
    // Default detuning window: +-0.1 omega_m around resonance, which brackets
    // the small-detuning instabilities of both coupling kinds.
    GridSpec g = cfg.grid.value_or(GridSpec{-0.1, 0.1, 2001, false});
    const DetuningSweep sweep =
        sweep_detuning(p, s, cfg.coupling, g.min, g.max, g.points);

    CsvTable t;
    t.preamble = serialize_config(cfg);
    t.columns = {"delta_over_omega_m", "rh_stable", "max_re_eig_over_omega_m"};
    t.data.assign(3, {});
    for (const SweepPoint& pt : sweep.points) {
        t.data[0].push_back(pt.delta);
        t.data[1].push_back(pt.rh_stable ? 1.0 : 0.0);
        t.data[2].push_back(pt.max_re_eig);
    }

    ensure_out_dir(cfg.out_dir);
    RunResult r;
    const std::string csv_path =
        (std::filesystem::path(cfg.out_dir) / "stability.csv").string();
    csv_write(csv_path, t);
    r.files.push_back(csv_path);

    CsvTable iv;
    iv.preamble = serialize_config(cfg);
    iv.columns = {"lo_over_omega_m", "hi_over_omega_m", "lo_at_edge", "hi_at_edge"};
    iv.data.assign(4, {});
    for (const UnstableInterval& u : sweep.intervals) {
        iv.data[0].push_back(u.lo);
        iv.data[1].push_back(u.hi);
        iv.data[2].push_back(u.lo_at_edge ? 1.0 : 0.0);
        iv.data[3].push_back(u.hi_at_edge ? 1.0 : 0.0);
    }
    const std::string iv_path =
        (std::filesystem::path(cfg.out_dir) / "stability_intervals.csv").string();
    csv_write(iv_path, iv);
    r.files.push_back(iv_path);

    if (cfg.emit_svg) {
        SvgPlot plot;
        plot.title = "Detuning stability sweep (" + std::string(to_string(cfg.coupling)) + ")";
        plot.x_label = "delta / omega_m";
        plot.y_label = "max Re eigenvalue / omega_m";
        plot.series.push_back({"max_re_eig", t.data[0], t.data[2], "#1f6fb2"});
        const std::string svg_path =
            (std::filesystem::path(cfg.out_dir) / "stability.svg").string();
        svg_write(svg_path, plot);
        r.files.push_back(svg_path);
    }
    r.message = "stability: " + std::to_string(sweep.points.size()) + " detunings, " +
                std::to_string(sweep.intervals.size()) + " unstable interval(s) -> " + csv_path;
    if (!sweep.all_methods_agree)
        r.message += "\nwarning: stability routes disagreed at one or more swept points";
    return r;
}

[[nodiscard]] inline RunResult run_threshold(const RunConfig& cfg, const CavityParams& p,
                                             const SteadyState& s) {
    RunResult r;
    const auto thr = threshold_small_detuning(p, s, cfg.coupling);
    if (thr) {
        r.message = "delta_crit_over_omega_m = " + csv_cell(*thr / p.omega_m);
    } else {
        r.message = "stable for all small detunings (no coupling)";
    }
    return r;
}

}  // namespace detail

/// Execute one validated RunConfig: normalize units so the mechanical
/// frequency is 1, solve the classical steady state, dispatch on the task,
/// and write any output files. Errors surface as ConfigError (bad input or
/// I/O) or NumericalError (solver failure); the CLI maps these to exit codes.
[[nodiscard]] inline RunResult run(const RunConfig& cfg) {
    const CavityParams p = cfg.params.normalized();
    SteadyState s;
    try {
        s = steady_state(p);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(ConfigErrc::invalid_value, 0, e.what());
    }
    switch (cfg.task) {
        case TaskType::spectrum: return detail::run_spectrum(cfg, p, s);
        case TaskType::stability: return detail::run_stability(cfg, p, s);
        case TaskType::threshold: return detail::run_threshold(cfg, p, s);
    }
    throw ConfigError(ConfigErrc::bad_task, 0, "unreachable task type");
}

}  // namespace optomech
