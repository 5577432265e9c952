#pragma once

#include <stdexcept>
#include <string>

namespace optomech {

/// Thrown when a numerical routine cannot produce a trustworthy answer.
/// Callers map this to a dedicated process exit code so that scripted runs
/// can distinguish "bad input" from "computation broke down".
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// The frequency-domain system matrix was singular (or numerically so).
class SingularSystemError : public NumericalError {
public:
    explicit SingularSystemError(const std::string& what) : NumericalError(what) {}
};

/// An iterative solve (root polishing, endpoint bisection, cross-check between
/// two computation routes) failed to reach its tolerance.
class ConvergenceError : public NumericalError {
public:
    explicit ConvergenceError(const std::string& what) : NumericalError(what) {}
};

/// Machine-readable reason a config file was rejected.
enum class ConfigErrc {
    missing_key   = 1,  ///< a required key was never supplied
    unknown_key   = 2,  ///< key (or section) not recognized
    bad_number    = 3,  ///< value failed to parse as a number
    invalid_value = 4,  ///< parsed fine but physically/structurally invalid
    bad_task      = 5,  ///< task/coupling selector not one of the known words
    io            = 6,  ///< file could not be read
};

[[nodiscard]] inline const char* to_string(ConfigErrc c) {
    switch (c) {
        case ConfigErrc::missing_key:   return "missing_key";
        case ConfigErrc::unknown_key:   return "unknown_key";
        case ConfigErrc::bad_number:    return "bad_number";
        case ConfigErrc::invalid_value: return "invalid_value";
        case ConfigErrc::bad_task:      return "bad_task";
        case ConfigErrc::io:            return "io";
    }
    return "unknown";
}

/// Rejection of a run configuration. Carries the error class and, where it
/// makes sense, the 1-based line number of the offending input line (0 when
/// no single line is to blame, e.g. a missing key).
class ConfigError : public std::runtime_error {
public:
    ConfigError(ConfigErrc code, int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          code_(code),
          line_(line) {}

    [[nodiscard]] ConfigErrc code() const noexcept { return code_; }
    [[nodiscard]] int line() const noexcept { return line_; }

private:
    ConfigErrc code_;
    int line_;
};

}  // namespace optomech
