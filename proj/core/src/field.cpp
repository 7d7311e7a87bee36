#include "nonequibath/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nonequibath/errors.hpp"

namespace nonequibath {

double occupation(double beta) {
    if (!(beta > 0.0)) throw NonPositiveBeta(beta);
    return 1.0 / std::expm1(beta);
}

double local_beta(double occupation) {
    if (!(occupation > 0.0)) throw NonPositiveOccupation(occupation);
    return std::log1p(1.0 / occupation);
}

double susceptivity_minus(double intensity, double occupation) {
    if (!(intensity >= 0.0)) throw DomainError("susceptivity requires intensity >= 0");
    if (!(occupation >= 0.0)) throw DomainError("susceptivity requires occupation >= 0");
    return std::numbers::pi * intensity * (occupation + 1.0);
}

double susceptivity_plus(double intensity, double occupation) {
    if (!(intensity >= 0.0)) throw DomainError("susceptivity requires intensity >= 0");
    if (!(occupation >= 0.0)) throw DomainError("susceptivity requires occupation >= 0");
    return std::numbers::pi * intensity * occupation;
}

double einstein_quotient(double occupation) {
    if (!(occupation > 0.0)) throw ZeroOccupation(occupation);
    return (occupation + 1.0) / occupation;
}

bool omega_equal(double a, double b) noexcept {
    return std::fabs(a - b) <= 1e-9 * std::max(std::fabs(a), std::fabs(b));
}

FieldSpec::FieldSpec(std::vector<FieldEntry> entries, Mode mode, double beta0)
    : entries_(std::move(entries)), mode_(mode), beta0_(beta0) {
    for (const FieldEntry& e : entries_) {
        if (!std::isfinite(e.omega) || !(e.omega > 0.0))
            throw DomainError("field entry requires omega > 0");
        if (!std::isfinite(e.intensity) || e.intensity < 0.0)
            throw DomainError("field entry requires intensity >= 0");
        if (!std::isfinite(e.occupation) || e.occupation < 0.0)
            throw DomainError("field entry requires occupation >= 0");
    }
    std::sort(entries_.begin(), entries_.end(),
              [](const FieldEntry& a, const FieldEntry& b) { return a.omega < b.omega; });
    for (std::size_t k = 1; k < entries_.size(); ++k)
        if (omega_equal(entries_[k - 1].omega, entries_[k].omega))
            throw DomainError("field table lists the same omega twice");
}

FieldSpec FieldSpec::from_occupations(std::vector<FieldEntry> entries) {
    return FieldSpec(std::move(entries), Mode::table_n, 0.0);
}

FieldSpec FieldSpec::from_betas(const std::vector<BetaEntry>& entries) {
    std::vector<FieldEntry> out;
    out.reserve(entries.size());
    for (const BetaEntry& e : entries) out.push_back({e.omega, e.intensity, occupation(e.beta)});
    return FieldSpec(std::move(out), Mode::table_beta, 0.0);
}

FieldSpec FieldSpec::from_gibbs(double beta0, const std::vector<IntensityEntry>& entries) {
    if (!(beta0 > 0.0) || !std::isfinite(beta0)) throw NonPositiveBeta(beta0);
    std::vector<FieldEntry> out;
    out.reserve(entries.size());
    for (const IntensityEntry& e : entries)
        out.push_back({e.omega, e.intensity, occupation(beta0 * e.omega)});
    return FieldSpec(std::move(out), Mode::gibbs, beta0);
}

const FieldEntry* FieldSpec::find(double omega) const noexcept {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), omega,
                               [](const FieldEntry& e, double w) { return e.omega < w; });
    if (it != entries_.end() && omega_equal(it->omega, omega)) return &*it;
    if (it != entries_.begin() && omega_equal(std::prev(it)->omega, omega)) return &*std::prev(it);
    return nullptr;
}

const FieldEntry& FieldSpec::at(double omega) const {
    const FieldEntry* e = find(omega);
    if (!e) throw MissingFieldEntry(omega);
    return *e;
}

double FieldSpec::local_beta_at(double omega) const { return local_beta(at(omega).occupation); }

void FieldSpec::require_covers(const LevelSystem& system) const {
    for (const BohrLine& line : system.bohr_lines())
        if (!find(line.omega)) throw MissingFieldEntry(line.omega);
}

FieldSpec FieldSpec::with_beta_at(double omega, double beta) const {
    const double n = occupation(beta);
    std::vector<FieldEntry> out = entries_;
    for (FieldEntry& e : out)
        if (omega_equal(e.omega, omega)) {
            e.occupation = n;
            return FieldSpec(std::move(out), Mode::table_n, 0.0);
        }
    throw MissingFieldEntry(omega);
}

FieldSpec FieldSpec::with_beta0(double beta0) const {
    if (mode_ != Mode::gibbs) throw DomainError("with_beta0 requires a gibbs-mode field");
    std::vector<IntensityEntry> base;
    base.reserve(entries_.size());
    for (const FieldEntry& e : entries_) base.push_back({e.omega, e.intensity});
    return from_gibbs(beta0, base);
}

std::optional<double> FieldSpec::gibbs_beta0() const noexcept {
    if (mode_ != Mode::gibbs) return std::nullopt;
    return beta0_;
}

}  // namespace nonequibath
