#ifndef NONEQUIBATH_COMMANDS_HPP
#define NONEQUIBATH_COMMANDS_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "nonequibath/config.hpp"

namespace nonequibath {

/// The four CLI commands. Each writes its CSV payload to `data` and a short
/// human summary to `log`. Identical configs produce identical data bytes:
/// numbers are printed in full precision and nothing run-dependent (time,
/// host, paths) enters the payload.

/// Stationary state, per-line detailed-balance residuals, the applicable
/// Einstein quotients, and (for 3 levels) the closed-form cross-check.
void cmd_stationary(const RunConfig& config, std::ostream& data, std::ostream& log);

/// Fixed-step trajectory of the master equation as CSV.
void cmd_evolve(const RunConfig& config, std::ostream& data, std::ostream& log);

/// Per-line photon fluxes at the stationary state plus totals and, for
/// 3-level systems, the emission/absorption regime.
void cmd_flux(const RunConfig& config, std::ostream& data, std::ostream& log);

/// Stationary observables swept over one field beta parameter. Points are
/// independent and evaluated concurrently; rows come out in sweep order.
void cmd_sweep(const RunConfig& config, std::ostream& data, std::ostream& log);

/// Loads the config, dispatches to the command, and maps errors to exit
/// codes: 0 ok, 2 config error, 3 model error (degenerate frequencies,
/// reducible generator), 4 numerics error. Data goes to out_path if given,
/// to stdout otherwise.
int run_command(std::string_view command, const std::filesystem::path& config_path,
                const std::optional<std::filesystem::path>& out_path, std::ostream& log);

}  // namespace nonequibath

#endif
