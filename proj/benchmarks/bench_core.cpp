#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "nonequibath/closedform.hpp"
#include "nonequibath/flux.hpp"
#include "nonequibath/kinetics.hpp"

using namespace nonequibath;

namespace {

// Fully coupled n-level atom with spread-out energies and a mildly
// nonequilibrium beta table; deterministic for a given n.
struct Instance {
    LevelSystem system;
    FieldSpec field;
};

Instance make_instance(int n) {
    std::mt19937 rng(static_cast<unsigned>(1000 + n));
    std::uniform_real_distribution<double> gap(0.5, 1.5);
    std::uniform_real_distribution<double> beta(0.5, 3.0);

    std::vector<double> energies = {0.0};
    for (int i = 1; i < n; ++i) energies.push_back(energies.back() + gap(rng));
    Eigen::MatrixXd d = Eigen::MatrixXd::Ones(n, n);
    d.diagonal().setZero();
    LevelSystem system(energies, std::move(d));

    std::vector<BetaEntry> entries;
    for (const BohrLine& line : system.bohr_lines())
        entries.push_back({line.omega, 1.0, beta(rng)});
    return {std::move(system), FieldSpec::from_betas(entries)};
}

void BM_BuildGenerator(benchmark::State& state) {
    const Instance inst = make_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Generator gen = build_generator(inst.system, inst.field);
        benchmark::DoNotOptimize(gen.matrix().data());
    }
}
BENCHMARK(BM_BuildGenerator)->DenseRange(2, 10, 2);

void BM_StationaryState(benchmark::State& state) {
    const Instance inst = make_instance(static_cast<int>(state.range(0)));
    const Generator gen = build_generator(inst.system, inst.field);
    for (auto _ : state) {
        StateVector rho = stationary_state(gen);
        benchmark::DoNotOptimize(rho.values().data());
    }
}
BENCHMARK(BM_StationaryState)->DenseRange(2, 10, 2);

void BM_Evolve(benchmark::State& state) {
    const Instance inst = make_instance(3);
    const Generator gen = build_generator(inst.system, inst.field);
    const double dt = 0.05 / gen.max_diagonal_rate();
    const double t_final = 1000.0 * dt;
    for (auto _ : state) {
        auto trajectory = evolve(gen, StateVector::uniform(3), t_final, dt);
        benchmark::DoNotOptimize(trajectory.data());
    }
}
BENCHMARK(BM_Evolve);

void BM_LineFluxes(benchmark::State& state) {
    const Instance inst = make_instance(static_cast<int>(state.range(0)));
    const Generator gen = build_generator(inst.system, inst.field);
    const StateVector rho = stationary_state(gen);
    for (auto _ : state) {
        LineFlux fluxes = line_fluxes(inst.system, inst.field, rho);
        benchmark::DoNotOptimize(fluxes.entries.data());
    }
}
BENCHMARK(BM_LineFluxes)->DenseRange(2, 10, 2);

void BM_Closedform3Level(benchmark::State& state) {
    const Instance inst = make_instance(3);
    const ThreeLevelParams p = ThreeLevelParams::from(inst.system, inst.field);
    for (auto _ : state) {
        auto rho = stationary_3level(p);
        benchmark::DoNotOptimize(rho.data());
    }
}
BENCHMARK(BM_Closedform3Level);

}  // namespace

BENCHMARK_MAIN();
