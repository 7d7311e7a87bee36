#ifndef NONEQUIBATH_LEVELS_HPP
#define NONEQUIBATH_LEVELS_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace nonequibath {

/// One allowed transition between a pair of levels.
struct BohrLine {
    std::size_t lower;  ///< index of the lower level
    std::size_t upper;  ///< index of the upper level
    double omega;       ///< energy difference, always > 0
    double dipole;      ///< squared dipole matrix element, always > 0
};

/// An n-level atom: energies plus the squared dipole matrix elements
/// |<i|D|j>|^2 coupling each pair of levels. Immutable after construction.
///
/// Energies may be handed in unsorted; the constructor sorts them and
/// permutes the dipole matrix consistently. Equal energies are rejected.
class LevelSystem {
public:
    /// Throws DomainError unless dipole_strengths is a symmetric n x n
    /// matrix of non-negative reals with zero diagonal, n >= 2, and the
    /// energies are pairwise distinct.
    LevelSystem(std::vector<double> energies, Eigen::MatrixXd dipole_strengths);

    std::size_t size() const noexcept { return energies_.size(); }
    double energy(std::size_t i) const { return energies_.at(i); }
    const std::vector<double>& energies() const noexcept { return energies_; }
    double dipole(std::size_t i, std::size_t j) const;
    const Eigen::MatrixXd& dipole_strengths() const noexcept { return dipole_; }

    /// All transitions with nonzero coupling, sorted by omega ascending.
    /// Pairs with zero dipole strength carry no rate and are omitted.
    std::vector<BohrLine> bohr_lines() const;

    /// 1e-9 times the largest Bohr frequency (0 if there are no lines).
    double default_generic_tolerance() const;

    /// Checks that all coupled Bohr frequencies are pairwise separated by
    /// more than tol. The per-line rate equations assume this; callers must
    /// not build a generator for a system that fails here.
    /// Throws DegenerateBohrFrequency on the first offending pair.
    void validate_generic(double tol) const;
    void validate_generic() const;

private:
    std::vector<double> energies_;
    Eigen::MatrixXd dipole_;
};

}  // namespace nonequibath

#endif
