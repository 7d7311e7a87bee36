#ifndef NONEQUIBATH_CLOSEDFORM_HPP
#define NONEQUIBATH_CLOSEDFORM_HPP

#include <array>
#include <string_view>

#include "nonequibath/field.hpp"
#include "nonequibath/levels.hpp"

namespace nonequibath {

/// Parameters of a three-level atom radiating into a structured field,
/// in the conventional transition labelling
///
///   omega1 = e2 - e1,  omega3 = e3 - e2,  omega2 = omega1 + omega3,
///
/// with squared dipole elements d12, d13, d23 for the level pairs and the
/// field intensity/local inverse temperature sampled at each omega.
struct ThreeLevelParams {
    double omega1, omega2, omega3;
    double d12, d13, d23;
    double intensity1, intensity2, intensity3;  ///< I(omega1..3)
    double beta1, beta2, beta3;                 ///< beta(omega1..3), > 0

    /// Extracts the parameters from a 3-level system paired with a field.
    /// Pairs with zero coupling whose frequency the field does not list get
    /// inert placeholders (intensity 0); coupled pairs must be covered and
    /// must have nonzero occupation, since beta is undefined at vacuum.
    static ThreeLevelParams from(const LevelSystem& system, const FieldSpec& field);

    /// Throws DomainError unless the frequencies close (omega2 = omega1 +
    /// omega3 within 1e-12 relative), couplings and intensities are
    /// non-negative and the betas positive.
    void validate() const;
};

/// Unnormalized stationary populations (rho1, rho2, rho3) of the
/// three-level master equation, each component a sum of products of two
/// factors I(omega)/(1 - e^-beta) or I(omega)/(e^beta - 1). Normalize by
/// the component sum to compare with a probability vector.
///
/// Requires at least two level pairs with nonzero coupling and intensity
/// (throws DisconnectedSystem otherwise).
std::array<double, 3> stationary_3level(const ThreeLevelParams& p);

/// Predicted stationary population quotient rho_lower/rho_upper = (N+1)/N
/// of a two-level atom; the Einstein emission/absorption relation.
double einstein_relation_2level(double occupation);

/// Predicted rho2/rho1 = e^(beta3 - beta2) of a three-level atom whose
/// direct 1-2 transition is forbidden: the product of the 1-3 emission
/// quotient and the 2-3 absorption quotient ("double Einstein").
double double_einstein_quotient(double beta2, double beta3);

/// True iff the stationary state inverts the populations of levels 1 and 2
/// (rho2 > rho1) when the direct 1-2 transition is forbidden: requires the
/// local temperature function to decrease with energy, beta3 > beta2.
bool inversion_condition(double beta3, double beta2);

/// Net radiative behaviour of the stationary three-level atom.
enum class Regime { emission, absorption, equilibrium };

std::string_view to_string(Regime regime) noexcept;

/// Classifies the regime through the sign of s = beta1 + beta3 - beta2,
/// which also fixes the sign of the total stationary photon rate. Inputs
/// built from a linear beta(omega) land within roundoff of s = 0; the
/// tolerance band (default 1e-12) absorbs that.
Regime classify_regime(double beta1, double beta2, double beta3, double tol = 1e-12);

}  // namespace nonequibath

#endif
