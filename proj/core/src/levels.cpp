#include "nonequibath/levels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nonequibath/errors.hpp"

namespace nonequibath {

LevelSystem::LevelSystem(std::vector<double> energies, Eigen::MatrixXd dipole_strengths)
    : energies_(std::move(energies)), dipole_(std::move(dipole_strengths)) {
    const auto n = energies_.size();
    if (n < 2) throw DomainError("level system needs at least 2 levels");
    for (double e : energies_)
        if (!std::isfinite(e)) throw DomainError("level energies must be finite");
    if (dipole_.rows() != static_cast<Eigen::Index>(n) ||
        dipole_.cols() != static_cast<Eigen::Index>(n))
        throw DomainError("dipole strength matrix must be n x n");

    if (!std::is_sorted(energies_.begin(), energies_.end())) {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::sort(perm.begin(), perm.end(),
                  [this](std::size_t a, std::size_t b) { return energies_[a] < energies_[b]; });
        std::vector<double> sorted(n);
        Eigen::MatrixXd permuted(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            sorted[i] = energies_[perm[i]];
            for (std::size_t j = 0; j < n; ++j)
                permuted(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    dipole_(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j]));
        }
        energies_ = std::move(sorted);
        dipole_ = std::move(permuted);
    }

    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(energies_[i] < energies_[i + 1]))
            throw DomainError("level energies must be pairwise distinct");

    for (Eigen::Index i = 0; i < dipole_.rows(); ++i) {
        if (dipole_(i, i) != 0.0)
            throw DomainError("dipole strength matrix must have zero diagonal");
        for (Eigen::Index j = 0; j < dipole_.cols(); ++j) {
            const double d = dipole_(i, j);
            if (!std::isfinite(d) || d < 0.0)
                throw DomainError("dipole strengths must be finite and non-negative");
            if (d != dipole_(j, i))
                throw DomainError("dipole strength matrix must be symmetric");
        }
    }
}

double LevelSystem::dipole(std::size_t i, std::size_t j) const {
    if (i >= size() || j >= size()) throw DomainError("level index out of range");
    return dipole_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

std::vector<BohrLine> LevelSystem::bohr_lines() const {
    std::vector<BohrLine> lines;
    const auto n = size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = dipole_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (d > 0.0) lines.push_back({i, j, energies_[j] - energies_[i], d});
        }
    std::sort(lines.begin(), lines.end(), [](const BohrLine& a, const BohrLine& b) {
        if (a.omega != b.omega) return a.omega < b.omega;
        if (a.lower != b.lower) return a.lower < b.lower;
        return a.upper < b.upper;
    });
    return lines;
}

double LevelSystem::default_generic_tolerance() const {
    const auto lines = bohr_lines();
    if (lines.empty()) return 0.0;
    return 1e-9 * lines.back().omega;
}

void LevelSystem::validate_generic(double tol) const {
    if (!(tol > 0.0)) throw DomainError("genericity tolerance must be positive");
    const auto lines = bohr_lines();
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const BohrLine& a = lines[k - 1];
        const BohrLine& b = lines[k];
        if (!(b.omega - a.omega > tol))
            throw DegenerateBohrFrequency(a.lower, a.upper, a.omega, b.lower, b.upper, b.omega);
    }
}

void LevelSystem::validate_generic() const {
    const double tol = default_generic_tolerance();
    if (tol > 0.0) validate_generic(tol);
}

}  // namespace nonequibath
