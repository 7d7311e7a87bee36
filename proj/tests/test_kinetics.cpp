#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nonequibath/errors.hpp"
#include "nonequibath/kinetics.hpp"

#include "helpers.hpp"

using namespace nonequibath;
using testutil::full_dipole;
using testutil::make_system;
using testutil::random_three_level;
using testutil::rel_err;
using testutil::spectral_gap;

namespace {

constexpr double kPi = std::numbers::pi;

FieldSpec unit_field_n1() {
    return FieldSpec::from_occupations({{1.0, 1.0, 1.0}});
}

Generator two_level_generator() {
    return build_generator(LevelSystem({0.0, 1.0}, full_dipole(2)), unit_field_n1());
}

}  // namespace

TEST_CASE("two-level generator matrix from unit parameters") {
    const Generator gen = two_level_generator();
    REQUIRE(gen.lines().size() == 1);
    CHECK(gen.lines()[0].down == 4.0 * kPi);
    CHECK(gen.lines()[0].up == 2.0 * kPi);
    CHECK(gen.matrix()(0, 0) == -2.0 * kPi);
    CHECK(gen.matrix()(0, 1) == 4.0 * kPi);
    CHECK(gen.matrix()(1, 0) == 2.0 * kPi);
    CHECK(gen.matrix()(1, 1) == -4.0 * kPi);
}

TEST_CASE("generator columns sum to zero") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const auto [system, field] = random_three_level(rng);
        const Generator gen = build_generator(system, field);
        const double scale = gen.max_abs_rate();
        for (Eigen::Index j = 0; j < gen.size(); ++j)
            CHECK(std::fabs(gen.matrix().col(j).sum()) <= 1e-13 * scale);
    }
}

TEST_CASE("zero coupling leaves levels unlinked") {
    const auto system = make_system({0.0, 1.0, 3.0}, {{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
    const FieldSpec field =
        FieldSpec::from_occupations({{2.0, 1.0, 0.5}, {3.0, 1.0, 0.5}});
    const Generator gen = build_generator(system, field);
    CHECK(gen.matrix()(0, 1) == 0.0);
    CHECK(gen.matrix()(1, 0) == 0.0);
    CHECK(gen.lines().size() == 2);
}

TEST_CASE("per-line rate quotient is the Einstein quotient") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto [system, field] = random_three_level(rng);
        const Generator gen = build_generator(system, field);
        for (const LineRates& lr : gen.lines()) {
            if (lr.up == 0.0) continue;
            const double n = field.at(lr.line.omega).occupation;
            CHECK(rel_err(lr.down / lr.up, einstein_quotient(n)) < 1e-14);
        }
    }
}

TEST_CASE("build_generator propagates model errors") {
    const LevelSystem degenerate({0.0, 1.0, 2.0}, full_dipole(3));
    const FieldSpec field = FieldSpec::from_occupations(
        {{1.0, 1.0, 0.5}, {2.0, 1.0, 0.5}});
    CHECK_THROWS_AS(build_generator(degenerate, field), DegenerateBohrFrequency);

    const LevelSystem system({0.0, 1.0, 3.0}, full_dipole(3));
    CHECK_THROWS_AS(build_generator(system, field), MissingFieldEntry);
}

TEST_CASE("state vector validation") {
    CHECK_NOTHROW(StateVector(Eigen::Vector3d(0.2, 0.3, 0.5)));
    CHECK_THROWS_AS(StateVector(Eigen::Vector3d(0.2, 0.3, 0.4)), DomainError);
    CHECK_THROWS_AS(StateVector(Eigen::Vector3d(-0.2, 0.7, 0.5)), DomainError);
    const StateVector uniform = StateVector::uniform(4);
    CHECK(uniform[2] == 0.25);
    const StateVector basis = StateVector::basis(3, 1);
    CHECK(basis[1] == 1.0);
    CHECK(basis[0] == 0.0);
}

TEST_CASE("evolve with t_final = 0 returns the initial point") {
    const Generator gen = two_level_generator();
    const auto trajectory = evolve(gen, StateVector::basis(2, 0), 0.0, 0.001);
    REQUIRE(trajectory.size() == 1);
    CHECK(trajectory[0].time == 0.0);
    CHECK(trajectory[0].state[0] == 1.0);
}

TEST_CASE("evolve relaxes the two-level atom to the Einstein ratio") {
    const Generator gen = two_level_generator();
    const double dt = 0.05 / gen.max_diagonal_rate();
    const auto trajectory = evolve(gen, StateVector::basis(2, 0), 8.0, dt);
    const StateVector& final = trajectory.back().state;
    CHECK(rel_err(final[0], 2.0 / 3.0) < 1e-8);
    CHECK(rel_err(final[1], 1.0 / 3.0) < 1e-8);
    // trace preserved along the whole trajectory
    for (const auto& sample : trajectory)
        CHECK(std::fabs(sample.state.values().sum() - 1.0) <= 1e-10);
}

TEST_CASE("evolve matches the kernel solve on random three-level systems") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        const auto [system, field] = random_three_level(rng);
        const Generator gen = build_generator(system, field);
        const StateVector target = stationary_state(gen);

        const double gap = spectral_gap(gen.matrix());
        const double t_final = 50.0 / gap;
        const double dt = 0.05 / gen.max_diagonal_rate();
        const auto trajectory = evolve(gen, StateVector::basis(3, 2), t_final, dt);
        const StateVector& final = trajectory.back().state;
        for (Eigen::Index i = 0; i < 3; ++i)
            CHECK(std::fabs(final[i] - target[i]) < 1e-8);
    }
}

TEST_CASE("distance to the stationary state decreases monotonically") {
    std::mt19937 rng(31);
    const auto [system, field] = random_three_level(rng);
    const Generator gen = build_generator(system, field);
    const StateVector target = stationary_state(gen);
    const double dt = 0.05 / gen.max_diagonal_rate();
    const auto trajectory = evolve(gen, StateVector::basis(3, 0), 20.0 / spectral_gap(gen.matrix()), dt);
    double previous = std::numeric_limits<double>::infinity();
    for (const auto& sample : trajectory) {
        const double distance = (sample.state.values() - target.values()).lpNorm<1>();
        CHECK(distance <= previous + 1e-9);
        previous = distance;
    }
}

TEST_CASE("evolve enforces the stability guard") {
    const Generator gen = two_level_generator();
    const double limit = 0.1 / gen.max_diagonal_rate();
    CHECK_THROWS_AS(evolve(gen, StateVector::uniform(2), 1.0, 2.0 * limit), StepTooLarge);
    CHECK_NOTHROW(evolve(gen, StateVector::uniform(2), 10.0 * limit, 0.99 * limit));
    CHECK_THROWS_AS(evolve(gen, StateVector::uniform(2), 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(evolve(gen, StateVector::uniform(2), -1.0, 0.01), DomainError);
}

TEST_CASE("stationary state of the two-level atom") {
    const StateVector rho = stationary_state(two_level_generator());
    CHECK(rel_err(rho[0], 2.0 / 3.0) < 1e-14);
    CHECK(rel_err(rho[1], 1.0 / 3.0) < 1e-14);
}

TEST_CASE("gibbs field relaxes to the Boltzmann distribution") {
    const std::vector<double> energies = {0.0, 1.0, 3.0};
    const LevelSystem system(energies, full_dipole(3));
    const double beta0 = 1.0;
    const FieldSpec field =
        FieldSpec::from_gibbs(beta0, {{1.0, 1.0}, {2.0, 1.0}, {3.0, 1.0}});
    const StateVector rho = stationary_state(build_generator(system, field));
    double z = 0.0;
    for (double e : energies) z += std::exp(-beta0 * e);
    for (Eigen::Index i = 0; i < 3; ++i)
        CHECK(rel_err(rho[i], std::exp(-beta0 * energies[static_cast<std::size_t>(i)]) / z) <
              1e-12);
}

TEST_CASE("kernel residual stays below 1e-12 of the rate scale") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        const auto [system, field] = random_three_level(rng);
        const Generator gen = build_generator(system, field);
        const StateVector rho = stationary_state(gen);
        const double residual = (gen.matrix() * rho.values()).lpNorm<Eigen::Infinity>();
        CHECK(residual <= 1e-12 * gen.max_abs_rate());
    }
}

TEST_CASE("stationary state rejects disconnected level graphs") {
    // two uncoupled two-level blocks
    const auto system = make_system({0.0, 1.0, 4.0, 6.5},
                                    {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    const FieldSpec field =
        FieldSpec::from_occupations({{1.0, 1.0, 0.5}, {2.5, 1.0, 0.5}});
    CHECK_THROWS_AS(stationary_state(build_generator(system, field)), ReducibleGenerator);

    // a single line with zero intensity carries no rate either
    const LevelSystem pair({0.0, 1.0}, full_dipole(2));
    const FieldSpec dark = FieldSpec::from_occupations({{1.0, 0.0, 1.0}});
    CHECK_THROWS_AS(stationary_state(build_generator(pair, dark)), ReducibleGenerator);
}

TEST_CASE("stationary state is invariant under intensity rescaling") {
    std::mt19937 rng(41);
    const auto [system, field] = random_three_level(rng);
    const Generator gen = build_generator(system, field);
    const StateVector rho = stationary_state(gen);

    const double c = 37.5;
    std::vector<FieldEntry> scaled = field.entries();
    for (FieldEntry& e : scaled) e.intensity *= c;
    const Generator scaled_gen =
        build_generator(system, FieldSpec::from_occupations(std::move(scaled)));
    const StateVector scaled_rho = stationary_state(scaled_gen);
    for (Eigen::Index i = 0; i < 3; ++i)
        CHECK(std::fabs(scaled_rho[i] - rho[i]) < 1e-12);

    // the relaxation rate scales linearly with the common factor
    CHECK(rel_err(spectral_gap(scaled_gen.matrix()), c * spectral_gap(gen.matrix())) < 1e-12);
}

TEST_CASE("detailed balance residuals") {
    SUBCASE("gibbs stationary state balances every line") {
        const LevelSystem system({0.0, 1.0, 3.0}, full_dipole(3));
        const FieldSpec field =
            FieldSpec::from_gibbs(0.9, {{1.0, 2.0}, {2.0, 0.5}, {3.0, 1.5}});
        const Generator gen = build_generator(system, field);
        const auto residuals = detailed_balance_residuals(gen, stationary_state(gen));
        double rate_scale = 0.0;
        for (const LineRates& lr : gen.lines())
            rate_scale = std::max({rate_scale, lr.down, lr.up});
        for (const LineResidual& r : residuals)
            CHECK(std::fabs(r.residual) <= 1e-12 * rate_scale);
    }

    SUBCASE("nonlinear beta leaves residuals nonzero") {
        const LevelSystem system({0.0, 1.0, 3.0}, full_dipole(3));
        const FieldSpec field = FieldSpec::from_betas(
            {{1.0, 1.0, 2.0}, {2.0, 1.0, 3.0}, {3.0, 1.0, 2.5}});
        const Generator gen = build_generator(system, field);
        const auto residuals = detailed_balance_residuals(gen, stationary_state(gen));
        double max_abs = 0.0;
        for (const LineResidual& r : residuals) max_abs = std::max(max_abs, std::fabs(r.residual));
        CHECK(max_abs > 0.1);  // the cyclic current is order 0.2 here
    }

    SUBCASE("uniform state on the unit two-level atom") {
        const Generator gen = two_level_generator();
        const auto residuals = detailed_balance_residuals(gen, StateVector::uniform(2));
        REQUIRE(residuals.size() == 1);
        CHECK(residuals[0].residual == kPi);  // 4 pi / 2 - 2 pi / 2
    }
}

TEST_CASE("energy flow balances across lines at stationarity") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const auto [system, field] = random_three_level(rng);
        const Generator gen = build_generator(system, field);
        const auto residuals = detailed_balance_residuals(gen, stationary_state(gen));
        double sum = 0.0, scale = 0.0;
        for (const LineResidual& r : residuals) {
            sum += r.line.omega * r.residual;
            scale += std::fabs(r.line.omega * r.residual);
        }
        CHECK(std::fabs(sum) <= 1e-12 * std::max(scale, 1e-300));
    }
}
