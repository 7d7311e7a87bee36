#include "nonequibath/io.hpp"

#include <cstdio>
#include <ostream>

namespace nonequibath {

std::string format_double(double value) {
    if (value == 0.0) return "0";  // avoid the "-0" spelling
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& trajectory) {
    if (trajectory.empty()) return;
    const Eigen::Index n = trajectory.front().state.size();
    out << 't';
    for (Eigen::Index i = 0; i < n; ++i) out << ",rho_" << i;
    out << '\n';
    for (const TrajectorySample& sample : trajectory) {
        out << format_double(sample.time);
        const Eigen::VectorXd rho = sample.state.clamped();
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_double(rho(i));
        out << '\n';
    }
}

void write_flux_csv(std::ostream& out, const LineFlux& fluxes) {
    out << "omega,flux\n";
    for (const LineFluxEntry& e : fluxes.entries)
        out << format_double(e.line.omega) << ',' << format_double(e.flux) << '\n';
    out << "# total_photon_rate," << format_double(total_photon_rate(fluxes)) << '\n';
    out << "# energy_rate," << format_double(energy_rate(fluxes)) << '\n';
}

}  // namespace nonequibath
