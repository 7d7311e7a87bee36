#include "nonequibath/kinetics.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "nonequibath/errors.hpp"

namespace nonequibath {

namespace {

// Slack for states produced by the integrator, as opposed to states handed
// in by callers (which get the strict default).
constexpr double kIntegrationSlack = 1e-9;

struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
    std::vector<std::size_t> parent;
};

}  // namespace

StateVector::StateVector(Eigen::VectorXd rho, double tol) : rho_(std::move(rho)) {
    if (rho_.size() < 1) throw DomainError("state vector must not be empty");
    if (!(tol >= 0.0)) throw DomainError("state tolerance must be non-negative");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < rho_.size(); ++i) {
        const double p = rho_(i);
        if (!std::isfinite(p)) throw DomainError("state vector entries must be finite");
        if (p < -tol) throw DomainError("state vector entries must be non-negative");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > tol)
        throw DomainError("state vector must sum to 1 within tolerance");
}

StateVector StateVector::uniform(Eigen::Index n) {
    return StateVector(Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
}

StateVector StateVector::basis(Eigen::Index n, Eigen::Index i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    v(i) = 1.0;
    return StateVector(std::move(v));
}

Eigen::VectorXd StateVector::clamped() const {
    Eigen::VectorXd v = rho_.cwiseMax(0.0);
    return v / v.sum();
}

double Generator::max_diagonal_rate() const {
    return matrix_.diagonal().cwiseAbs().maxCoeff();
}

double Generator::max_abs_rate() const { return matrix_.cwiseAbs().maxCoeff(); }

double Generator::min_positive_rate() const {
    double m = 0.0;
    for (const LineRates& lr : lines_)
        for (double r : {lr.down, lr.up})
            if (r > 0.0 && (m == 0.0 || r < m)) m = r;
    return m;
}

Generator build_generator(const LevelSystem& system, const FieldSpec& field) {
    system.validate_generic();
    field.require_covers(system);

    const auto n = static_cast<Eigen::Index>(system.size());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    std::vector<LineRates> rates;

    for (const BohrLine& line : system.bohr_lines()) {
        const FieldEntry& e = field.at(line.omega);
        const double down =
            2.0 * std::numbers::pi * e.intensity * (e.occupation + 1.0) * line.dipole;
        const double up = 2.0 * std::numbers::pi * e.intensity * e.occupation * line.dipole;

        const auto lo = static_cast<Eigen::Index>(line.lower);
        const auto up_ = static_cast<Eigen::Index>(line.upper);
        L(lo, up_) += down;
        L(up_, up_) -= down;
        L(up_, lo) += up;
        L(lo, lo) -= up;
        rates.push_back({line, down, up});
    }
    return Generator(std::move(L), std::move(rates));
}

std::vector<TrajectorySample> evolve(const Generator& gen, const StateVector& rho0,
                                     double t_final, double dt) {
    if (rho0.size() != gen.size())
        throw DomainError("initial state size does not match the generator");
    if (!std::isfinite(dt) || !(dt > 0.0)) throw DomainError("evolve requires dt > 0");
    if (!std::isfinite(t_final) || t_final < 0.0)
        throw DomainError("evolve requires t_final >= 0");

    const double max_diag = gen.max_diagonal_rate();
    if (max_diag > 0.0 && dt > 0.1 / max_diag) throw StepTooLarge(dt, 0.1 / max_diag);

    const Eigen::MatrixXd& L = gen.matrix();
    auto rk4_step = [&L](const Eigen::VectorXd& v, double h) {
        const Eigen::VectorXd k1 = L * v;
        const Eigen::VectorXd k2 = L * (v + (0.5 * h) * k1);
        const Eigen::VectorXd k3 = L * (v + (0.5 * h) * k2);
        const Eigen::VectorXd k4 = L * (v + h * k3);
        return (v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).eval();
    };

    std::vector<TrajectorySample> trajectory;
    trajectory.push_back({0.0, rho0});
    if (t_final == 0.0) return trajectory;

    const auto full_steps = static_cast<long>(std::floor(t_final / dt + 1e-9));
    Eigen::VectorXd v = rho0.values();
    for (long i = 1; i <= full_steps; ++i) {
        v = rk4_step(v, dt);
        trajectory.push_back({static_cast<double>(i) * dt, StateVector(v, kIntegrationSlack)});
    }
    const double leftover = t_final - static_cast<double>(full_steps) * dt;
    if (leftover > 1e-9 * dt) {
        v = rk4_step(v, leftover);
        trajectory.push_back({t_final, StateVector(v, kIntegrationSlack)});
    }
    return trajectory;
}

StateVector stationary_state(const Generator& gen) {
    const auto n = static_cast<std::size_t>(gen.size());

    UnionFind uf(n);
    for (const LineRates& lr : gen.lines())
        if (lr.down > 0.0 || lr.up > 0.0) uf.unite(lr.line.lower, lr.line.upper);
    std::size_t components = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (uf.find(i) == i) ++components;
    if (components > 1) throw ReducibleGenerator(components);

    // Replace the last row by the normalization constraint, scaled to the
    // rate magnitude so the solve stays well-conditioned for small rates.
    const double scale = gen.max_abs_rate();
    Eigen::MatrixXd A = gen.matrix();
    A.row(gen.size() - 1).setConstant(scale);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(gen.size());
    b(gen.size() - 1) = scale;

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu = A.partialPivLu();
    Eigen::VectorXd rho = lu.solve(b);
    rho += lu.solve(b - A * rho);  // one step of iterative refinement

    if (rho.minCoeff() < -1e-9)
        throw NumericsError("stationary solve produced a negative population");
    rho = rho.cwiseMax(0.0);
    rho /= rho.sum();

    const double residual = (gen.matrix() * rho).lpNorm<Eigen::Infinity>();
    if (residual > 1e-12 * scale)
        throw NumericsError("stationary solve residual exceeds 1e-12 of the rate scale");
    return StateVector(rho, kIntegrationSlack);
}

std::vector<LineResidual> detailed_balance_residuals(const Generator& gen,
                                                     const StateVector& rho) {
    if (rho.size() != gen.size())
        throw DomainError("state size does not match the generator");
    std::vector<LineResidual> out;
    out.reserve(gen.lines().size());
    for (const LineRates& lr : gen.lines()) {
        const double r = lr.down * rho[static_cast<Eigen::Index>(lr.line.upper)] -
                         lr.up * rho[static_cast<Eigen::Index>(lr.line.lower)];
        out.push_back({lr.line, r});
    }
    return out;
}

}  // namespace nonequibath
