#ifndef NONEQUIBATH_FLUX_HPP
#define NONEQUIBATH_FLUX_HPP

#include <array>
#include <functional>
#include <vector>

#include "nonequibath/closedform.hpp"
#include "nonequibath/field.hpp"
#include "nonequibath/kinetics.hpp"
#include "nonequibath/levels.hpp"

namespace nonequibath {

/// Net photon rate of one Bohr line. Positive flux = photons emitted into
/// the field, negative = absorbed from it.
struct LineFluxEntry {
    BohrLine line;
    double flux;
};

/// Photon rates per Bohr frequency, keyed by the coupled lines of the
/// system, sorted by omega ascending.
struct LineFlux {
    std::vector<LineFluxEntry> entries;

    /// Flux at omega (matched through omega_equal); throws DomainError if
    /// the frequency is not a line of the system.
    double at(double omega) const;
};

/// Photon emission rate per line at the state rho:
///
///   Phi(omega) = 2 pi I(omega) d ((N(omega) + 1) rho[upper] - N(omega) rho[lower])
///
/// which coincides with the line's detailed-balance residual.
LineFlux line_fluxes(const LevelSystem& system, const FieldSpec& field, const StateVector& rho);

/// Sum of all line fluxes: net photons per unit time pumped into the field.
double total_photon_rate(const LineFlux& fluxes);

/// Weighted sum over lines, sum_omega weight(omega) * Phi(omega). With the
/// default weight w(omega) = omega this is the field energy gain rate; it
/// vanishes at stationary states (energy conservation).
double energy_rate(const LineFlux& fluxes, const std::function<double(double)>& weight);
double energy_rate(const LineFlux& fluxes);

/// Closed-form stationary fluxes (Phi(omega1), Phi(omega2), Phi(omega3)) of
/// the fully coupled three-level atom. The three lines carry one cyclic
/// current K/Z in the pattern (+1, -1, +1):
///
///   K = 2 pi d12 d13 d23 I1 I2 I3 (e^s - 1)
///       / ((e^beta1 - 1)(1 - e^-beta2)(e^beta3 - 1)),   s = beta1 - beta2 + beta3,
///
/// normalized by the same Z as the closed-form stationary state. Requires
/// all couplings and intensities positive (throws DisconnectedSystem).
std::array<double, 3> stationary_flux_3level_closed(const ThreeLevelParams& p);

}  // namespace nonequibath

#endif
