#include "nonequibath/closedform.hpp"

#include <cmath>

#include "nonequibath/errors.hpp"

namespace nonequibath {

namespace {

// The two per-frequency factors of the stationary closed forms:
// emission-weighted I/(1 - e^-beta) = I (N+1), absorption-weighted
// I/(e^beta - 1) = I N.
double emission_factor(double intensity, double beta) {
    return intensity / -std::expm1(-beta);
}

double absorption_factor(double intensity, double beta) {
    return intensity / std::expm1(beta);
}

struct LinePresence {
    double intensity;
    double beta;
};

LinePresence extract_line(const FieldSpec& field, double omega, double dip) {
    if (dip > 0.0) {
        const FieldEntry& e = field.at(omega);
        return {e.intensity, local_beta(e.occupation)};
    }
    // Uncoupled pair: the factors it enters are multiplied by zero, so an
    // inert placeholder is fine when the field does not list the frequency.
    if (const FieldEntry* e = field.find(omega); e && e->occupation > 0.0)
        return {e->intensity, local_beta(e->occupation)};
    return {0.0, 1.0};
}

}  // namespace

ThreeLevelParams ThreeLevelParams::from(const LevelSystem& system, const FieldSpec& field) {
    if (system.size() != 3)
        throw DomainError("three-level parameters require a system with exactly 3 levels");

    ThreeLevelParams p{};
    p.omega1 = system.energy(1) - system.energy(0);
    p.omega3 = system.energy(2) - system.energy(1);
    p.omega2 = p.omega1 + p.omega3;
    p.d12 = system.dipole(0, 1);
    p.d13 = system.dipole(0, 2);
    p.d23 = system.dipole(1, 2);

    const LinePresence l1 = extract_line(field, p.omega1, p.d12);
    const LinePresence l2 = extract_line(field, p.omega2, p.d13);
    const LinePresence l3 = extract_line(field, p.omega3, p.d23);
    p.intensity1 = l1.intensity;
    p.intensity2 = l2.intensity;
    p.intensity3 = l3.intensity;
    p.beta1 = l1.beta;
    p.beta2 = l2.beta;
    p.beta3 = l3.beta;

    p.validate();
    return p;
}

void ThreeLevelParams::validate() const {
    if (!(omega1 > 0.0) || !(omega3 > 0.0) || !(omega2 > 0.0))
        throw DomainError("three-level frequencies must be positive");
    if (std::fabs(omega2 - omega1 - omega3) > 1e-12 * omega2)
        throw DomainError("three-level frequencies must close: omega2 = omega1 + omega3");
    for (double d : {d12, d13, d23})
        if (!std::isfinite(d) || d < 0.0)
            throw DomainError("three-level couplings must be non-negative");
    for (double i : {intensity1, intensity2, intensity3})
        if (!std::isfinite(i) || i < 0.0)
            throw DomainError("three-level intensities must be non-negative");
    for (double b : {beta1, beta2, beta3})
        if (!std::isfinite(b) || !(b > 0.0))
            throw DomainError("three-level betas must be positive");
}

std::array<double, 3> stationary_3level(const ThreeLevelParams& p) {
    p.validate();

    const int active = (p.d12 * p.intensity1 > 0.0) + (p.d13 * p.intensity2 > 0.0) +
                       (p.d23 * p.intensity3 > 0.0);
    if (active < 2)
        throw DisconnectedSystem(
            "stationary state needs at least two transitions with nonzero coupling and "
            "intensity");

    const double em1 = emission_factor(p.intensity1, p.beta1);
    const double em2 = emission_factor(p.intensity2, p.beta2);
    const double em3 = emission_factor(p.intensity3, p.beta3);
    const double ab1 = absorption_factor(p.intensity1, p.beta1);
    const double ab2 = absorption_factor(p.intensity2, p.beta2);
    const double ab3 = absorption_factor(p.intensity3, p.beta3);

    const double rho1 = p.d12 * p.d13 * em1 * em2 + p.d12 * p.d23 * em1 * em3 +
                        p.d13 * p.d23 * em2 * ab3;
    const double rho2 = p.d12 * p.d13 * ab1 * em2 + p.d12 * p.d23 * ab1 * em3 +
                        p.d13 * p.d23 * ab2 * em3;
    const double rho3 = p.d12 * p.d13 * em1 * ab2 + p.d12 * p.d23 * ab1 * ab3 +
                        p.d13 * p.d23 * ab2 * ab3;
    return {rho1, rho2, rho3};
}

double einstein_relation_2level(double occupation) { return einstein_quotient(occupation); }

double double_einstein_quotient(double beta2, double beta3) {
    if (!(beta2 > 0.0)) throw NonPositiveBeta(beta2);
    if (!(beta3 > 0.0)) throw NonPositiveBeta(beta3);
    return std::exp(beta3 - beta2);
}

bool inversion_condition(double beta3, double beta2) {
    if (!(beta3 > 0.0)) throw NonPositiveBeta(beta3);
    if (!(beta2 > 0.0)) throw NonPositiveBeta(beta2);
    return beta3 > beta2;
}

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::emission: return "emission";
        case Regime::absorption: return "absorption";
        case Regime::equilibrium: return "equilibrium";
    }
    return "equilibrium";
}

Regime classify_regime(double beta1, double beta2, double beta3, double tol) {
    for (double b : {beta1, beta2, beta3})
        if (!(b > 0.0)) throw NonPositiveBeta(b);
    if (!(tol >= 0.0)) throw DomainError("regime tolerance must be non-negative");
    const double s = beta1 + beta3 - beta2;
    if (s > tol) return Regime::emission;
    if (s < -tol) return Regime::absorption;
    return Regime::equilibrium;
}

}  // namespace nonequibath
