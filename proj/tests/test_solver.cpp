#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lltrace/errors.hpp"
#include "lltrace/solver.hpp"

using namespace lltrace;

namespace {

constexpr double kPiT = std::numbers::pi;

// Relative rapidity of the N = 2 ground state at L = 2 pi:
// pi = 2 pi kappa + 2 atan(2 kappa / g), bisected on (0, 1/2).
double ground_kappa(double g) {
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (2.0 * kPiT * mid + 2.0 * std::atan(2.0 * mid / g) - kPiT < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("single particle") {
    const auto s = solve_state(ModelParams(1, 10.0), QuantumNumbers({6}, 0));
    CHECK(s.energy == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(s.rapidities[0] == doctest::Approx(3.0));
    const auto t = solve_state(ModelParams(1, 10.0, 3.0), QuantumNumbers({-4}, 0));
    CHECK(t.rapidities[0] == doctest::Approx(-2.0 * 2.0 * kPiT / 3.0));
  }

  TEST_CASE("Tonks limit") {
    const auto s = solve_state(ModelParams(2, 1e8), QuantumNumbers({-1, 1}, 1));
    CHECK(std::fabs(s.rapidities[0] + 0.5) < 1e-6);
    CHECK(std::fabs(s.rapidities[1] - 0.5) < 1e-6);
    CHECK(std::fabs(s.energy - 0.5) < 1e-6);
  }

  TEST_CASE("N = 2 ground state against the scalar oracle") {
    const double kappa = ground_kappa(10.0);
    CHECK(kappa == doctest::Approx(0.47015664890486947).epsilon(1e-14));
    const auto s = solve_state(ModelParams(2, 10.0), QuantumNumbers({-1, 1}, 1));
    CHECK(s.energy == doctest::Approx(2.0 * kappa * kappa).epsilon(1e-13));
    CHECK(s.momentum == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(s.residual_norm <= 1e-12);
    CHECK(s.gaudin_det == doctest::Approx(jacobian_det(ModelParams(2, 10.0), s.shape, s.rapidities)));
  }

  TEST_CASE("modified equations with multiplicities") {
    const ModelParams p(5, 2.0);
    const PartitionShape shape({3, 2});
    const auto s = solve_state(p, shape, QuantumNumbers({-2, 4}, 0));
    const auto r = bethe_residual(p, shape, s.quantum_numbers, s.rapidities);
    CHECK(std::fabs(r[0]) <= 1e-12);
    CHECK(std::fabs(r[1]) <= 1e-12);
    // Summing a_j times each equation cancels the phase terms.
    CHECK(3.0 * s.rapidities[0] + 2.0 * s.rapidities[1] == doctest::Approx(3.0 * -1.0 + 2.0 * 2.0));
  }

  TEST_CASE("small coupling goes through continuation") {
    SolverSettings direct;
    for (const auto& d : {std::vector<int>{-5, -1, 3, 9}, std::vector<int>{-13, -11, 1, 21}}) {
      const auto s = solve_state(ModelParams(4, 0.01), QuantumNumbers(d, 1), direct);
      CHECK(s.residual_norm <= 1e-12);
      CHECK(s.energy >= free_boson_energy(ModelParams(4, 0.01), s.quantum_numbers) - 1e-9);
      CHECK(s.energy <= tonks_energy(ModelParams(4, 0.01), s.quantum_numbers) + 1e-9);
    }
    SolverSettings stepped;
    stepped.continuation_steps = 10;
    const auto a = solve_state(ModelParams(3, 0.05), QuantumNumbers({-2, 0, 6}, 0), stepped);
    const auto b = solve_state(ModelParams(3, 0.05), QuantumNumbers({-2, 0, 6}, 0));
    CHECK(a.energy == doctest::Approx(b.energy).epsilon(1e-12));
  }

  TEST_CASE("invalid input") {
    CHECK_THROWS_AS(solve_state(ModelParams(2, 1.0), QuantumNumbers({1}, 1)), InvalidQuantumNumbers);
    CHECK_THROWS_AS(solve_state(ModelParams(2, 1.0), QuantumNumbers({0, 2}, 0)), InvalidQuantumNumbers);
    CHECK_THROWS_AS(solve_state(ModelParams(3, 1.0), PartitionShape({1, 1}), QuantumNumbers({0, 2}, 0)),
                    ContractViolation);
    SolverSettings bad;
    bad.max_iterations = 0;
    CHECK_THROWS_AS(bad.validate(), ContractViolation);
  }

  TEST_CASE("iteration cap reports the residual trace") {
    SolverSettings s;
    s.max_iterations = 1;
    s.continuation_steps = 1;
    try {
      solve_state(ModelParams(4, 0.01), QuantumNumbers({-13, -11, 1, 21}, 1), s);
      FAIL("expected NonConvergence");
    } catch (const NonConvergence& e) {
      CHECK(!e.residual_trace().empty());
    }
  }

  TEST_CASE("momentum identity on random states") {
    std::mt19937 rng(12345);
    for (int t = 0; t < 60; ++t) {
      const int n = 1 + static_cast<int>(rng() % 4);
      const double g = std::vector<double>{0.1, 1.0, 10.0, 100.0}[rng() % 4];
      const ModelParams p(n, g);
      std::vector<int> d;
      int v = -12 - p.parity_offset();
      for (int j = 0; j < n; ++j) {
        v += 2 * (1 + static_cast<int>(rng() % 4));
        d.push_back(v);
      }
      const auto s = solve_state(p, QuantumNumbers(d, p.parity_offset()));
      double qsum = 0.0;
      for (int x : d) qsum += 0.5 * x;
      CHECK(std::fabs(s.momentum - qsum) <= 1e-10);
    }
  }

  TEST_CASE("spectrum of one particle") {
    const auto t = enumerate_spectrum(ModelParams(1, 1.0), 10.0);
    std::vector<double> e;
    for (const auto& s : t.levels) e.push_back(s.energy);
    const std::vector<double> expected{0, 1, 1, 4, 4, 9, 9};
    REQUIRE(e.size() == expected.size());
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(e[i] == doctest::Approx(expected[i]));
    CHECK(staircase(t, 0.5) == 1);
    CHECK(staircase(t, 4.0) == 5);
    CHECK(staircase(t, 10.0) == 7);
    CHECK_THROWS_AS(staircase(t, 10.5), OutOfRange);
    const auto distinct = distinct_energies(t);
    CHECK(distinct.size() == 4);
  }

  TEST_CASE("Tonks spectrum of two particles") {
    const auto t = enumerate_spectrum(ModelParams(2, 1e8), 5.0);
    std::vector<double> e;
    for (const auto& s : t.levels) e.push_back(s.energy);
    // Half-integer pairs I_1 < I_2 with I_1^2 + I_2^2 <= 5, counted directly.
    std::vector<double> lattice;
    for (int a = -7; a <= 7; a += 2)
      for (int b = a + 2; b <= 7; b += 2)
        if (0.25 * (a * a + b * b) <= 5.0) lattice.push_back(0.25 * (a * a + b * b));
    std::sort(lattice.begin(), lattice.end());
    REQUIRE(lattice.size() == 6);  // 1/2, 5/2 four times, 9/2
    REQUIRE(e.size() == lattice.size());
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(std::fabs(e[i] - lattice[i]) < 1e-6);
  }

  TEST_CASE("spectrum is complete against a brute-force box") {
    for (double g : {0.3, 10.0}) {
      const ModelParams p(3, g);
      const double e_max = 20.0;
      const auto t = enumerate_spectrum(p, e_max);
      // Every state has |I_j| <= sqrt(E) + N in this range; solve the whole box.
      std::vector<double> brute;
      for (int a = -16; a <= 16; a += 2)
        for (int b = a + 2; b <= 16; b += 2)
          for (int c = b + 2; c <= 16; c += 2) {
            const auto s = solve_state(p, QuantumNumbers({a, b, c}, 0));
            if (s.energy <= e_max) brute.push_back(s.energy);
          }
      std::sort(brute.begin(), brute.end());
      REQUIRE(brute.size() == t.levels.size());
      for (std::size_t i = 0; i < brute.size(); ++i) CHECK(t.levels[i].energy == doctest::Approx(brute[i]).epsilon(1e-12));
    }
  }

  TEST_CASE("spectrum is ordered and independent of the worker count") {
    SolverSettings one, four;
    one.workers = 1;
    four.workers = 4;
    const auto a = enumerate_spectrum(ModelParams(3, 1.0), 30.0, one);
    const auto b = enumerate_spectrum(ModelParams(3, 1.0), 30.0, four);
    REQUIRE(a.levels.size() == b.levels.size());
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
      CHECK(a.levels[i].energy == b.levels[i].energy);
      CHECK(a.levels[i].quantum_numbers == b.levels[i].quantum_numbers);
      if (i) CHECK(a.levels[i - 1].energy <= a.levels[i].energy);
    }
  }

  TEST_CASE("energy bounds") {
    const ModelParams p(3, 1.0);
    const QuantumNumbers qn({-2, 2, 4}, 0);
    CHECK(free_boson_energy(p, qn) == doctest::Approx(2.0));  // n = (0, 1, 1)
    CHECK(tonks_energy(p, qn) == doctest::Approx(6.0));
  }
}
