#pragma once

#include <array>
#include <charconv>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "optomech/errors.hpp"
#include "optomech/params.hpp"

namespace optomech {

/// What a single invocation computes.
enum class TaskType { spectrum, stability, threshold };

[[nodiscard]] inline const char* to_string(TaskType t) {
    switch (t) {
        case TaskType::spectrum: return "spectrum";
        case TaskType::stability: return "stability";
        case TaskType::threshold: return "threshold";
    }
    return "?";
}

/// Sweep-axis specification: frequency grid for spectra (in units of the
/// mechanical frequency), detuning grid for stability sweeps.
struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int points = 2;
    bool log_scale = false;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Fully resolved description of one run: physical parameters, the task to
/// perform, which coupling enters the dynamics, the sweep grid (or the task
/// default when absent), and output disposition.
struct RunConfig {
    CavityParams params;
    TaskType task = TaskType::spectrum;
    CouplingKind coupling = CouplingKind::dispersive;
    std::optional<GridSpec> grid;
    std::string out_dir = "out";
    bool emit_svg = false;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

namespace detail {

[[nodiscard]] inline std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

[[nodiscard]] inline double parse_double(std::string_view v, int line, const std::string& key) {
    double out = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError(ConfigErrc::bad_number, line,
                          "malformed number for key '" + key + "': '" + std::string(v) + "'");
    return out;
}

[[nodiscard]] inline int parse_int(std::string_view v, int line, const std::string& key) {
    int out = 0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError(ConfigErrc::bad_number, line,
                          "malformed integer for key '" + key + "': '" + std::string(v) + "'");
    return out;
}

[[nodiscard]] inline bool parse_bool(std::string_view v, int line, const std::string& key) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError(ConfigErrc::invalid_value, line,
                      "key '" + key + "' expects true or false, got '" + std::string(v) + "'");
}

[[nodiscard]] inline std::string format_double(double v) {
    std::array<char, 64> buf{};
    // 17 significant digits: enough for exact double round-trips.
    const int n = std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return std::string(buf.data(), static_cast<std::size_t>(n > 0 ? n : 0));
}

}  // namespace detail

/// Parse the key = value configuration format:
///
///   [params]          # physical parameters, frequencies in chosen units
///   gamma = 1000      # required, > 0
///   gamma_m = 0.001   # required, > 0
///   omega_m = 1       # default 1 (the unit of frequency)
///   delta / g_omega / g_gamma / drive_amplitude / n_th / temperature
///
///   [task]
///   type = spectrum | stability | threshold     # required
///   coupling = dispersive | dissipative | mixed # required
///
///   [grid]            # optional; task default used when absent
///   min, max, points, scale = linear | log
///
///   [output]
///   dir = out
///   svg = true | false
///
/// '#' starts a comment. Unknown keys and sections, duplicates, malformed
/// numbers, and invariant violations are rejected with the offending line
/// number and a distinct error code. When both n_th and temperature are
/// given, the direct n_th wins.
[[nodiscard]] inline RunConfig parse_config(std::string_view text) {
    enum class Section { none, params, task, grid, output };
    Section section = Section::none;

    // key -> (value, line), grouped by section; duplicates rejected on sight.
    std::map<std::string, std::pair<std::string, int>> seen[5];

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(ConfigErrc::invalid_value, line_no,
                                  "malformed section header '" + std::string(line) + "'");
            const std::string_view name = detail::trim(line.substr(1, line.size() - 2));
            if (name == "params") section = Section::params;
            else if (name == "task") section = Section::task;
            else if (name == "grid") section = Section::grid;
            else if (name == "output") section = Section::output;
            else
                throw ConfigError(ConfigErrc::unknown_key, line_no,
                                  "unknown section [" + std::string(name) + "]");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(ConfigErrc::invalid_value, line_no,
                              "expected 'key = value', got '" + std::string(line) + "'");
        const std::string key{detail::trim(line.substr(0, eq))};
        const std::string value{detail::trim(line.substr(eq + 1))};
        if (key.empty())
            throw ConfigError(ConfigErrc::invalid_value, line_no, "empty key");
        if (section == Section::none)
            throw ConfigError(ConfigErrc::unknown_key, line_no,
                              "key '" + key + "' appears before any section header");

        static const std::map<Section, std::size_t> section_index = {
            {Section::params, 1}, {Section::task, 2}, {Section::grid, 3}, {Section::output, 4}};
        auto& table = seen[section_index.at(section)];
        if (const auto it = table.find(key); it != table.end())
            throw ConfigError(ConfigErrc::invalid_value, line_no,
                              "duplicate key '" + key + "' (first on line " +
                                  std::to_string(it->second.second) + ")");

        static const std::map<Section, std::array<const char*, 9>> allowed = {
            {Section::params,
             {"gamma", "gamma_m", "omega_m", "delta", "g_omega", "g_gamma", "drive_amplitude",
              "n_th", "temperature"}},
            {Section::task, {"type", "coupling", nullptr}},
            {Section::grid, {"min", "max", "points", "scale", nullptr}},
            {Section::output, {"dir", "svg", nullptr}},
        };
        bool known = false;
        for (const char* k : allowed.at(section)) {
            if (k == nullptr) break;
            if (key == k) {
                known = true;
                break;
            }
        }
        if (!known)
            throw ConfigError(ConfigErrc::unknown_key, line_no,
                              "unknown key '" + key + "' in section");

        table.emplace(key, std::make_pair(value, line_no));
    }

    const auto get = [&](Section s, const char* key) -> const std::pair<std::string, int>* {
        static const std::map<Section, std::size_t> section_index = {
            {Section::params, 1}, {Section::task, 2}, {Section::grid, 3}, {Section::output, 4}};
        const auto& table = seen[section_index.at(s)];
        const auto it = table.find(key);
        return it == table.end() ? nullptr : &it->second;
    };
    const auto require = [&](Section s, const char* section_name,
                             const char* key) -> const std::pair<std::string, int>& {
        const auto* v = get(s, key);
        if (v == nullptr)
            throw ConfigError(ConfigErrc::missing_key, 0,
                              std::string("missing required key '") + key + "' in [" +
                                  section_name + "]");
        return *v;
    };

    RunConfig cfg;

    // [params]
    {
        const auto& gamma = require(Section::params, "params", "gamma");
        const auto& gamma_m = require(Section::params, "params", "gamma_m");
        cfg.params.gamma = detail::parse_double(gamma.first, gamma.second, "gamma");
        cfg.params.gamma_m = detail::parse_double(gamma_m.first, gamma_m.second, "gamma_m");
        const auto opt_double = [&](const char* key, double def) {
            const auto* v = get(Section::params, key);
            return v == nullptr ? def : detail::parse_double(v->first, v->second, key);
        };
        cfg.params.omega_m = opt_double("omega_m", 1.0);
        cfg.params.delta = opt_double("delta", 0.0);
        cfg.params.g_omega = opt_double("g_omega", 0.0);
        cfg.params.g_gamma = opt_double("g_gamma", 0.0);
        cfg.params.drive_amplitude = opt_double("drive_amplitude", 0.0);
        if (const auto* v = get(Section::params, "n_th")) {
            cfg.params.n_th = detail::parse_double(v->first, v->second, "n_th");
        } else if (const auto* v2 = get(Section::params, "temperature")) {
            const double temperature = detail::parse_double(v2->first, v2->second, "temperature");
            try {
                cfg.params.n_th = thermal_occupancy(temperature, cfg.params.omega_m);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(ConfigErrc::invalid_value, v2->second, e.what());
            }
        }
        try {
            cfg.params.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(ConfigErrc::invalid_value, 0, e.what());
        }
    }

    // [task]
    {
        const auto& type = require(Section::task, "task", "type");
        if (type.first == "spectrum") cfg.task = TaskType::spectrum;
        else if (type.first == "stability") cfg.task = TaskType::stability;
        else if (type.first == "threshold") cfg.task = TaskType::threshold;
        else
            throw ConfigError(ConfigErrc::bad_task, type.second,
                              "unknown task type '" + type.first +
                                  "' (expected spectrum, stability, or threshold)");
        const auto& coupling = require(Section::task, "task", "coupling");
        if (coupling.first == "dispersive") cfg.coupling = CouplingKind::dispersive;
        else if (coupling.first == "dissipative") cfg.coupling = CouplingKind::dissipative;
        else if (coupling.first == "mixed") cfg.coupling = CouplingKind::mixed;
        else
            throw ConfigError(ConfigErrc::invalid_value, coupling.second,
                              "unknown coupling '" + coupling.first +
                                  "' (expected dispersive, dissipative, or mixed)");
    }

    // [grid] -- all of min/max/points required once the section is used.
    if (get(Section::grid, "min") || get(Section::grid, "max") || get(Section::grid, "points") ||
        get(Section::grid, "scale")) {
        GridSpec g;
        const auto& gmin = require(Section::grid, "grid", "min");
        const auto& gmax = require(Section::grid, "grid", "max");
        const auto& gpts = require(Section::grid, "grid", "points");
        g.min = detail::parse_double(gmin.first, gmin.second, "min");
        g.max = detail::parse_double(gmax.first, gmax.second, "max");
        g.points = detail::parse_int(gpts.first, gpts.second, "points");
        if (const auto* v = get(Section::grid, "scale")) {
            if (v->first == "linear") g.log_scale = false;
            else if (v->first == "log") g.log_scale = true;
            else
                throw ConfigError(ConfigErrc::invalid_value, v->second,
                                  "scale must be linear or log, got '" + v->first + "'");
        }
        if (!(g.min < g.max))
            throw ConfigError(ConfigErrc::invalid_value, gmin.second,
                              "grid requires min < max");
        if (g.points < 2)
            throw ConfigError(ConfigErrc::invalid_value, gpts.second,
                              "grid requires points >= 2");
        if (g.log_scale && !(g.min > 0.0))
            throw ConfigError(ConfigErrc::invalid_value, gmin.second,
                              "log-scale grid requires min > 0");
        cfg.grid = g;
    }

    // [output]
    if (const auto* v = get(Section::output, "dir")) cfg.out_dir = v->first;
    if (const auto* v = get(Section::output, "svg"))
        cfg.emit_svg = detail::parse_bool(v->first, v->second, "svg");

    return cfg;
}

/// Canonical textual form of a resolved RunConfig. Doubles are written with
/// 17 significant digits so that parse_config(serialize_config(c)) == c for
/// every valid c.
[[nodiscard]] inline std::string serialize_config(const RunConfig& cfg) {
    std::string out;
    out += "[params]\n";
    out += "gamma = " + detail::format_double(cfg.params.gamma) + "\n";
    out += "gamma_m = " + detail::format_double(cfg.params.gamma_m) + "\n";
    out += "omega_m = " + detail::format_double(cfg.params.omega_m) + "\n";
    out += "delta = " + detail::format_double(cfg.params.delta) + "\n";
    out += "g_omega = " + detail::format_double(cfg.params.g_omega) + "\n";
    out += "g_gamma = " + detail::format_double(cfg.params.g_gamma) + "\n";
    out += "drive_amplitude = " + detail::format_double(cfg.params.drive_amplitude) + "\n";
    out += "n_th = " + detail::format_double(cfg.params.n_th) + "\n";
    out += "[task]\n";
    out += std::string("type = ") + to_string(cfg.task) + "\n";
    out += std::string("coupling = ") + to_string(cfg.coupling) + "\n";
    if (cfg.grid) {
        out += "[grid]\n";
        out += "min = " + detail::format_double(cfg.grid->min) + "\n";
        out += "max = " + detail::format_double(cfg.grid->max) + "\n";
        out += "points = " + std::to_string(cfg.grid->points) + "\n";
        out += std::string("scale = ") + (cfg.grid->log_scale ? "log" : "linear") + "\n";
    }
    out += "[output]\n";
    out += "dir = " + cfg.out_dir + "\n";
    out += std::string("svg = ") + (cfg.emit_svg ? "true" : "false") + "\n";
    return out;
}

}  // namespace optomech
