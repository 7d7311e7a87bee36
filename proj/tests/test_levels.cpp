#include <doctest.h>

#include <algorithm>
#include <random>

#include "nonequibath/errors.hpp"
#include "nonequibath/levels.hpp"

#include "helpers.hpp"

using namespace nonequibath;
using testutil::full_dipole;
using testutil::make_system;

TEST_CASE("bohr_lines enumerates coupled pairs sorted by omega") {
    const LevelSystem system({0.0, 1.0, 3.0}, full_dipole(3));
    const auto lines = system.bohr_lines();
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].omega == 1.0);
    CHECK(lines[0].lower == 0);
    CHECK(lines[0].upper == 1);
    CHECK(lines[1].omega == 2.0);
    CHECK(lines[1].lower == 1);
    CHECK(lines[1].upper == 2);
    CHECK(lines[2].omega == 3.0);
    CHECK(lines[2].lower == 0);
    CHECK(lines[2].upper == 2);
    for (const auto& line : lines) CHECK(line.dipole == 1.0);
}

TEST_CASE("bohr_lines keeps the dipole strength of a single line") {
    const LevelSystem system({0.0, 1.0}, full_dipole(2, 0.5));
    const auto lines = system.bohr_lines();
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].omega == 1.0);
    CHECK(lines[0].dipole == 0.5);
}

TEST_CASE("bohr_lines drops zero-dipole pairs") {
    const auto system = make_system({0.0, 1.0, 3.0}, {{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
    const auto lines = system.bohr_lines();
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].omega == 2.0);
    CHECK(lines[1].omega == 3.0);
}

TEST_CASE("unsorted energies are sorted with the dipole matrix permuted") {
    // same system as (0,1,3) with pair strengths d01=0.2, d02=0.3, d12=0.4,
    // handed in with levels shuffled as (3,0,1)
    const auto shuffled = make_system({3.0, 0.0, 1.0},
                                      {{0.0, 0.3, 0.4}, {0.3, 0.0, 0.2}, {0.4, 0.2, 0.0}});
    CHECK(shuffled.energies() == std::vector<double>{0.0, 1.0, 3.0});
    CHECK(shuffled.dipole(0, 1) == 0.2);
    CHECK(shuffled.dipole(0, 2) == 0.3);
    CHECK(shuffled.dipole(1, 2) == 0.4);

    const auto sorted = make_system({0.0, 1.0, 3.0},
                                    {{0.0, 0.2, 0.3}, {0.2, 0.0, 0.4}, {0.3, 0.4, 0.0}});
    const auto a = shuffled.bohr_lines();
    const auto b = sorted.bohr_lines();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].omega == b[i].omega);
        CHECK(a[i].dipole == b[i].dipole);
    }
}

TEST_CASE("construction rejects malformed systems") {
    CHECK_THROWS_AS(LevelSystem({0.0}, full_dipole(1)), DomainError);
    CHECK_THROWS_AS(LevelSystem({0.0, 0.0}, full_dipole(2)), DomainError);
    CHECK_THROWS_AS(LevelSystem({0.0, 1.0}, full_dipole(3)), DomainError);
    CHECK_THROWS_AS(make_system({0.0, 1.0}, {{0, 1}, {2, 0}}), DomainError);   // asymmetric
    CHECK_THROWS_AS(make_system({0.0, 1.0}, {{0, -1}, {-1, 0}}), DomainError); // negative
    CHECK_THROWS_AS(make_system({0.0, 1.0}, {{1, 1}, {1, 0}}), DomainError);   // diagonal
}

TEST_CASE("validate_generic accepts distinct frequencies") {
    const LevelSystem system({0.0, 1.0, 3.0}, full_dipole(3));
    CHECK_NOTHROW(system.validate_generic());
}

TEST_CASE("validate_generic rejects repeated coupled frequencies") {
    const LevelSystem system({0.0, 1.0, 2.0}, full_dipole(3));
    CHECK_THROWS_AS(system.validate_generic(), DegenerateBohrFrequency);
    try {
        system.validate_generic();
    } catch (const DegenerateBohrFrequency& e) {
        CHECK(e.omega_a == 1.0);
        CHECK(e.omega_b == 1.0);
    }
}

TEST_CASE("validate_generic ignores uncoupled degenerate pairs") {
    const auto system = make_system({0.0, 1.0, 2.0}, {{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
    CHECK_NOTHROW(system.validate_generic());
}

TEST_CASE("bohr_lines is covariant under level relabelling") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> energy(0.0, 10.0);
    std::uniform_real_distribution<double> dip(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng() % 4;
        std::vector<double> energies;
        for (std::size_t i = 0; i < n; ++i) energies.push_back(energy(rng));
        std::sort(energies.begin(), energies.end());
        bool distinct = true;
        for (std::size_t i = 0; i + 1 < n; ++i) distinct &= energies[i] < energies[i + 1];
        if (!distinct) continue;

        Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = dip(rng);

        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> shuffled_e(n);
        Eigen::MatrixXd shuffled_d(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            shuffled_e[i] = energies[perm[i]];
            for (std::size_t j = 0; j < n; ++j)
                shuffled_d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    d(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j]));
        }

        const LevelSystem original(energies, d);
        const LevelSystem relabelled(shuffled_e, shuffled_d);
        const auto a = original.bohr_lines();
        const auto b = relabelled.bohr_lines();
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].omega == b[i].omega);
            CHECK(a[i].dipole == b[i].dipole);
        }
    }
}

TEST_CASE("line omegas are exact energy differences") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> energy(-5.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> energies = {energy(rng), energy(rng), energy(rng), energy(rng)};
        std::sort(energies.begin(), energies.end());
        bool ok = true;
        for (std::size_t i = 0; i + 1 < energies.size(); ++i)
            ok &= energies[i] < energies[i + 1];
        if (!ok) continue;
        const LevelSystem system(energies, full_dipole(4));
        for (const BohrLine& line : system.bohr_lines())
            CHECK(line.omega == energies[line.upper] - energies[line.lower]);
    }
}
