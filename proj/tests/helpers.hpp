#ifndef NONEQUIBATH_TESTS_HELPERS_HPP
#define NONEQUIBATH_TESTS_HELPERS_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <Eigen/Eigenvalues>

#include "nonequibath/field.hpp"
#include "nonequibath/kinetics.hpp"
#include "nonequibath/levels.hpp"

namespace testutil {

inline double rel_err(double actual, double expected) {
    return std::fabs(actual - expected) / std::max(std::fabs(expected), 1e-300);
}

inline Eigen::MatrixXd full_dipole(std::size_t n, double value = 1.0) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n, value);
    d.diagonal().setZero();
    return d;
}

inline nonequibath::LevelSystem make_system(std::vector<double> energies,
                                            std::vector<std::vector<double>> dipole) {
    const auto n = energies.size();
    Eigen::MatrixXd d(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = dipole[i][j];
    return nonequibath::LevelSystem(std::move(energies), std::move(d));
}

struct ThreeLevelInstance {
    nonequibath::LevelSystem system;
    nonequibath::FieldSpec field;
};

/// Generic random 3-level atom in a random non-equilibrium field:
/// omega1 = u1, omega3 = u2 (kept apart for genericity), omega2 = u1 + u2,
/// d in [0.1, 1], I in [0.1, 10], beta in [0.1, 5].
inline ThreeLevelInstance random_three_level(std::mt19937& rng, bool forbid_12 = false) {
    std::uniform_real_distribution<double> gap(0.5, 2.0);
    std::uniform_real_distribution<double> dip(0.1, 1.0);
    std::uniform_real_distribution<double> intensity(0.1, 10.0);
    std::uniform_real_distribution<double> beta(0.1, 5.0);

    double u1 = gap(rng), u2 = gap(rng);
    while (std::fabs(u1 - u2) < 1e-3) u2 = gap(rng);

    Eigen::MatrixXd d(3, 3);
    d.setZero();
    d(0, 1) = d(1, 0) = forbid_12 ? 0.0 : dip(rng);
    d(0, 2) = d(2, 0) = dip(rng);
    d(1, 2) = d(2, 1) = dip(rng);
    nonequibath::LevelSystem system({0.0, u1, u1 + u2}, std::move(d));

    std::vector<nonequibath::BetaEntry> entries;
    for (const nonequibath::BohrLine& line : system.bohr_lines())
        entries.push_back({line.omega, intensity(rng), beta(rng)});
    // cover the 0-1 frequency even when uncoupled, so regime inputs exist
    if (forbid_12) entries.push_back({u1, intensity(rng), beta(rng)});
    return {std::move(system), nonequibath::FieldSpec::from_betas(entries)};
}

/// Smallest decay rate of the nonzero spectrum, computed from the full
/// eigendecomposition. Test-only oracle; independent of the solver path.
inline double spectral_gap(const Eigen::MatrixXd& generator) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(generator);
    const auto lambdas = es.eigenvalues();
    double scale = 0.0;
    for (Eigen::Index i = 0; i < lambdas.size(); ++i)
        scale = std::max(scale, std::abs(lambdas(i)));
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < lambdas.size(); ++i)
        if (std::abs(lambdas(i)) > 1e-9 * scale)
            gap = std::min(gap, std::fabs(lambdas(i).real()));
    return gap;
}

struct CliResult {
    int exit_code;
    std::string output;
};

/// Runs the installed CLI binary; captures stdout (stderr dropped unless
/// merge_stderr).
inline CliResult run_cli(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = std::string(NONEQUIBATH_CLI_PATH) + " " + args +
                            (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), std::move(out)};
}

inline std::string fixture_path(const std::string& name) {
    return std::string(NONEQUIBATH_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string write_temp_file(const std::string& stem, const std::string& contents) {
    const std::string path = "/tmp/nonequibath_test_" + stem + "_" + std::to_string(getpid());
    std::ofstream out(path, std::ios::binary);
    out << contents;
    return path;
}

}  // namespace testutil

#endif
