#include "nonequibath/flux.hpp"

#include <cmath>
#include <numbers>

#include "nonequibath/errors.hpp"

namespace nonequibath {

double LineFlux::at(double omega) const {
    for (const LineFluxEntry& e : entries)
        if (omega_equal(e.line.omega, omega)) return e.flux;
    throw DomainError("no flux entry at the requested omega");
}

LineFlux line_fluxes(const LevelSystem& system, const FieldSpec& field, const StateVector& rho) {
    if (rho.size() != static_cast<Eigen::Index>(system.size()))
        throw DomainError("state size does not match the system");
    LineFlux out;
    for (const BohrLine& line : system.bohr_lines()) {
        const FieldEntry& e = field.at(line.omega);
        const double phi =
            2.0 * std::numbers::pi * e.intensity * line.dipole *
            ((e.occupation + 1.0) * rho[static_cast<Eigen::Index>(line.upper)] -
             e.occupation * rho[static_cast<Eigen::Index>(line.lower)]);
        out.entries.push_back({line, phi});
    }
    return out;
}

double total_photon_rate(const LineFlux& fluxes) {
    double sum = 0.0;
    for (const LineFluxEntry& e : fluxes.entries) sum += e.flux;
    return sum;
}

double energy_rate(const LineFlux& fluxes, const std::function<double(double)>& weight) {
    double sum = 0.0;
    for (const LineFluxEntry& e : fluxes.entries) sum += weight(e.line.omega) * e.flux;
    return sum;
}

double energy_rate(const LineFlux& fluxes) {
    return energy_rate(fluxes, [](double omega) { return omega; });
}

std::array<double, 3> stationary_flux_3level_closed(const ThreeLevelParams& p) {
    p.validate();
    for (double x : {p.d12, p.d13, p.d23, p.intensity1, p.intensity2, p.intensity3})
        if (!(x > 0.0))
            throw DisconnectedSystem(
                "closed-form stationary fluxes need all couplings and intensities positive");

    const double s = p.beta1 - p.beta2 + p.beta3;
    const double k = 2.0 * std::numbers::pi * p.d12 * p.d13 * p.d23 * p.intensity1 *
                     p.intensity2 * p.intensity3 * std::expm1(s) /
                     (std::expm1(p.beta1) * -std::expm1(-p.beta2) * std::expm1(p.beta3));

    const std::array<double, 3> rho = stationary_3level(p);
    const double z = rho[0] + rho[1] + rho[2];
    return {k / z, -k / z, k / z};
}

}  // namespace nonequibath
