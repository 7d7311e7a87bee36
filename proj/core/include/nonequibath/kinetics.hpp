#ifndef NONEQUIBATH_KINETICS_HPP
#define NONEQUIBATH_KINETICS_HPP

#include <vector>

#include <Eigen/Dense>

#include "nonequibath/field.hpp"
#include "nonequibath/levels.hpp"

namespace nonequibath {

/// Transition rates of one Bohr line.
///
/// down = 2 pi I(omega) (N(omega) + 1) d   (emission, upper -> lower)
/// up   = 2 pi I(omega) N(omega) d         (absorption, lower -> upper)
///
/// Their quotient is the Einstein emission/absorption quotient
/// (N + 1)/N whenever both are nonzero.
struct LineRates {
    BohrLine line;
    double down;
    double up;
};

/// Populations of the levels: a probability vector.
///
/// Entries may dip to -tol below zero (integration slack) and the sum must
/// equal 1 within tol. Values are stored untouched; clamped() produces the
/// cleaned-up form used when emitting results.
class StateVector {
public:
    explicit StateVector(Eigen::VectorXd rho, double tol = 1e-12);

    static StateVector uniform(Eigen::Index n);
    static StateVector basis(Eigen::Index n, Eigen::Index i);

    Eigen::Index size() const noexcept { return rho_.size(); }
    double operator[](Eigen::Index i) const { return rho_(i); }
    const Eigen::VectorXd& values() const noexcept { return rho_; }

    /// Negative roundoff clamped to zero and the vector renormalized.
    Eigen::VectorXd clamped() const;

private:
    Eigen::VectorXd rho_;
};

/// Rate generator L of the population master equation d rho/dt = L rho.
///
/// Off-diagonal entries are non-negative and every column sums to zero, so
/// the flow conserves total probability. Rows/columns are level indices:
/// L(lower, upper) accumulates the down rate of each line, L(upper, lower)
/// the up rate, and the diagonal compensates.
class Generator {
public:
    Eigen::Index size() const noexcept { return matrix_.rows(); }
    const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
    const std::vector<LineRates>& lines() const noexcept { return lines_; }

    /// max_i |L_ii|; bounds the stiffness of the flow.
    double max_diagonal_rate() const;

    /// Largest entry magnitude of L; the natural residual scale.
    double max_abs_rate() const;

    /// Smallest strictly positive per-line rate (0 if there is none);
    /// its inverse is the slowest relaxation timescale estimate.
    double min_positive_rate() const;

private:
    friend Generator build_generator(const LevelSystem&, const FieldSpec&);
    Generator(Eigen::MatrixXd matrix, std::vector<LineRates> lines)
        : matrix_(std::move(matrix)), lines_(std::move(lines)) {}

    Eigen::MatrixXd matrix_;
    std::vector<LineRates> lines_;
};

/// Assembles the generator for a system paired with a field state.
/// Validates genericity and field coverage first; throws
/// DegenerateBohrFrequency or MissingFieldEntry.
Generator build_generator(const LevelSystem& system, const FieldSpec& field);

struct TrajectorySample {
    double time;
    StateVector state;
};

/// Integrates d rho/dt = L rho with classical fixed-step fourth-order
/// Runge-Kutta from rho0 to t_final, sampling every step (plus a shorter
/// final step when dt does not divide t_final).
///
/// dt must satisfy dt <= 0.1 / max_i |L_ii| (throws StepTooLarge). The
/// integrator never renormalizes; trace drift stays within 1e-10 over the
/// horizons used here.
std::vector<TrajectorySample> evolve(const Generator& gen, const StateVector& rho0,
                                     double t_final, double dt);

/// The unique stationary state L rho = 0 with non-negative entries summing
/// to one, by direct linear solve: the last row of L is replaced by the
/// normalization row (scaled to the rate magnitude) and the system solved
/// by LU factorization. Deterministic; residual |L rho|_inf is checked
/// against 1e-12 * max|L|.
///
/// Throws ReducibleGenerator when the level graph of nonzero rates is
/// disconnected (the kernel is then not one-dimensional).
StateVector stationary_state(const Generator& gen);

/// Per-line detailed-balance residual at rho:
/// r = down * rho[upper] - up * rho[lower], the net downward probability
/// current of the line. All residuals vanish iff rho is in detailed
/// balance with the field.
struct LineResidual {
    BohrLine line;
    double residual;
};

std::vector<LineResidual> detailed_balance_residuals(const Generator& gen,
                                                     const StateVector& rho);

}  // namespace nonequibath

#endif
