// Command-line front end: reads a run configuration, executes the requested
// task (squeezing spectrum, detuning-stability sweep, or analytic instability
// threshold), and writes CSV tables plus optional SVG plots.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "optomech/optomech.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir;  // overrides the config's [output] dir when given
    bool svg = false;     // forces SVG emission on
};

int execute(const CliOptions& opt, optomech::TaskType expected) {
    using namespace optomech;
    try {
        std::ifstream f(opt.config_path, std::ios::binary);
        if (!f) {
            std::cerr << "config error: cannot read '" << opt.config_path << "'\n";
            return 1;
        }
        std::ostringstream text;
        text << f.rdbuf();

        RunConfig cfg = parse_config(text.str());
        if (cfg.task != expected) {
            std::cerr << "config error: config requests task '" << to_string(cfg.task)
                      << "' but the '" << to_string(expected) << "' subcommand was invoked\n";
            return 1;
        }
        if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
        if (opt.svg) cfg.emit_svg = true;

        const RunResult result = run(cfg);
        if (!result.message.empty()) std::cout << result.message << "\n";
        for (const std::string& file : result.files) std::cout << "wrote " << file << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Frequency-domain simulator of a one-sided optomechanical cavity with "
        "dispersive and dissipative coupling: homodyne squeezing spectra, "
        "optimal quadrature angles, and detuning-stability diagrams."};
    app.require_subcommand(1);

    CliOptions opt;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "path to the run configuration file")
            ->required();
        sub->add_option("--out", opt.out_dir, "output directory (overrides [output] dir)");
        sub->add_flag("--svg", opt.svg, "also write SVG plots");
    };
    CLI::App* spectrum =
        app.add_subcommand("spectrum", "squeezing spectrum over a frequency grid");
    CLI::App* stability =
        app.add_subcommand("stability", "stability verdicts over a detuning sweep");
    CLI::App* threshold =
        app.add_subcommand("threshold", "small-detuning instability threshold");
    add_common(spectrum);
    add_common(stability);
    add_common(threshold);

    CLI11_PARSE(app, argc, argv);

    if (spectrum->parsed()) return execute(opt, optomech::TaskType::spectrum);
    if (stability->parsed()) return execute(opt, optomech::TaskType::stability);
    return execute(opt, optomech::TaskType::threshold);
}
