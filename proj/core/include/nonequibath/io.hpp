#ifndef NONEQUIBATH_IO_HPP
#define NONEQUIBATH_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "nonequibath/flux.hpp"
#include "nonequibath/kinetics.hpp"

namespace nonequibath {

/// Shortest-faithful decimal form of a double (17 significant digits);
/// identical inputs give identical bytes.
std::string format_double(double value);

/// Trajectory table: header `t,rho_0,...,rho_{n-1}` and one row per sample.
/// Negative roundoff in the states is clamped at this point, never earlier.
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& trajectory);

/// Flux table: header `omega,flux`, rows sorted by omega ascending, then
/// the totals as `#`-prefixed comment lines.
void write_flux_csv(std::ostream& out, const LineFlux& fluxes);

}  // namespace nonequibath

#endif
