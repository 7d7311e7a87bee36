#ifndef NONEQUIBATH_FIELD_HPP
#define NONEQUIBATH_FIELD_HPP

#include <optional>
#include <vector>

#include "nonequibath/levels.hpp"

namespace nonequibath {

/// Planck occupation N = 1/(e^beta - 1). Requires beta > 0; large beta
/// underflows to 0 (vacuum).
double occupation(double beta);

/// Local inverse temperature beta = ln(1 + 1/N). Requires N > 0; inverse
/// of occupation() to relative 1e-12 on (0, inf).
double local_beta(double occupation);

/// Downward (emission) half-rate coefficient pi * I * (N + 1).
double susceptivity_minus(double intensity, double occupation);

/// Upward (absorption) half-rate coefficient pi * I * N; zero at vacuum.
double susceptivity_plus(double intensity, double occupation);

/// Einstein emission/absorption quotient (N + 1)/N = e^beta.
double einstein_quotient(double occupation);

/// Tolerant comparison of Bohr frequencies: true when a and b agree to a
/// relative 1e-9. Frequencies computed as energy differences and those
/// listed in a field table match through this predicate.
bool omega_equal(double a, double b) noexcept;

/// Spectral data of the radiation field at one Bohr frequency.
struct FieldEntry {
    double omega;       ///< Bohr frequency, > 0
    double intensity;   ///< coupling-weighted mode density I(omega), >= 0
    double occupation;  ///< mean photon number N(omega), >= 0
};

/// Field entry specified through a local inverse temperature.
struct BetaEntry {
    double omega;
    double intensity;
    double beta;  ///< > 0; converted to N = 1/(e^beta - 1)
};

/// Field entry for the Gibbs construction, which supplies beta itself.
struct IntensityEntry {
    double omega;
    double intensity;
};

/// The state of the radiation field sampled at a finite set of Bohr
/// frequencies: per frequency a spectral intensity I(omega) and an
/// occupation N(omega). Immutable after construction.
///
/// Occupation is the canonical variable; N = 0 (vacuum) is representable
/// while beta = infinity is not.
class FieldSpec {
public:
    enum class Mode { table_n, table_beta, gibbs };

    /// Direct (omega, I, N) table.
    static FieldSpec from_occupations(std::vector<FieldEntry> entries);

    /// (omega, I, beta) table with N = 1/(e^beta - 1).
    static FieldSpec from_betas(const std::vector<BetaEntry>& entries);

    /// Equilibrium family beta(omega) = beta0 * omega with per-line
    /// intensities.
    static FieldSpec from_gibbs(double beta0, const std::vector<IntensityEntry>& entries);

    /// Entry at omega (matched through omega_equal). Throws
    /// MissingFieldEntry if absent.
    const FieldEntry& at(double omega) const;

    /// Entry at omega, or nullptr.
    const FieldEntry* find(double omega) const noexcept;

    /// beta(omega) = ln(1 + 1/N(omega)); throws NonPositiveOccupation at
    /// vacuum entries.
    double local_beta_at(double omega) const;

    /// Checks that every coupled Bohr line of the system has an entry.
    /// Extra entries are allowed. Throws MissingFieldEntry.
    void require_covers(const LevelSystem& system) const;

    /// Copy with the entry at omega replaced by occupation 1/(e^beta - 1).
    /// The result is a plain occupation table regardless of this mode.
    FieldSpec with_beta_at(double omega, double beta) const;

    /// Copy with a new Gibbs inverse temperature. Only valid in gibbs mode.
    FieldSpec with_beta0(double beta0) const;

    const std::vector<FieldEntry>& entries() const noexcept { return entries_; }
    Mode mode() const noexcept { return mode_; }
    std::optional<double> gibbs_beta0() const noexcept;

private:
    FieldSpec(std::vector<FieldEntry> entries, Mode mode, double beta0);

    std::vector<FieldEntry> entries_;  // sorted by omega
    Mode mode_;
    double beta0_;  // meaningful in gibbs mode only
};

}  // namespace nonequibath

#endif
