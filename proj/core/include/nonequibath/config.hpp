#ifndef NONEQUIBATH_CONFIG_HPP
#define NONEQUIBATH_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "nonequibath/field.hpp"
#include "nonequibath/levels.hpp"

namespace nonequibath {

struct NumericsConfig {
    std::optional<double> dt;       ///< default 0.05 / max|L_ii|
    std::optional<double> t_final;  ///< default 50 / smallest positive rate
    double tol = 1e-12;             ///< report + regime-classifier tolerance
};

struct SweepConfig {
    std::string param;  ///< "beta0" or "beta@<omega>"
    double from = 0.0;
    double to = 0.0;
    int steps = 0;
};

/// Which field parameter a sweep varies.
struct SweepParam {
    enum class Kind { beta0, beta_at };
    Kind kind;
    double omega = 0.0;  ///< beta_at only
};

/// Parses "beta0" or "beta@<omega>"; throws ConfigError otherwise.
SweepParam parse_sweep_param(const std::string& param);

/// One fully parsed run configuration: a valid system/field pair plus
/// numerics and command-specific options.
struct RunConfig {
    LevelSystem system;
    FieldSpec field;
    NumericsConfig numerics;
    std::optional<SweepConfig> sweep;
    std::optional<Eigen::VectorXd> initial;  ///< evolve start state; default uniform
};

/// Parses the JSON text of a config file. Errors carry the source name and
/// either a line number (syntax) or the offending key path (semantics).
RunConfig parse_config(const std::string& text, std::string_view source = "<config>");

/// Reads and parses a config file.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace nonequibath

#endif
