#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lltrace/errors.hpp"
#include "lltrace/quadrature.hpp"
#include "lltrace/solver.hpp"
#include "lltrace/weyl.hpp"

using namespace lltrace;

namespace {

constexpr double kPiT = std::numbers::pi;

// Half-integer pairs I_1 < I_2 with I_1^2 + I_2^2 <= e (N = 2 Tonks levels at L = 2 pi).
long long tonks_pairs(double e) {
  long long count = 0;
  const int r = static_cast<int>(std::ceil(2.0 * std::sqrt(e))) + 1;
  for (int a = -r; a <= r; ++a) {
    if (a % 2 == 0) continue;
    for (int b = a + 2; b <= r; b += 2)
      if (0.25 * (a * a + b * b) <= e) ++count;
  }
  return count;
}

}  // namespace

TEST_SUITE("weyl") {
  TEST_CASE("Gauss-Legendre rules") {
    const auto& r = gauss_legendre(5);
    REQUIRE(r.nodes.size() == 5);
    double w = 0.0, x4 = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      w += r.weights[i];
      x4 += r.weights[i] * std::pow(r.nodes[i], 8);
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(x4 == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
    CHECK(&gauss_legendre(5) == &r);
  }

  TEST_CASE("adaptive Gauss-Kronrod") {
    const double v = adaptive_gauss_kronrod([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 4.0, 1e-10);
    CHECK(v == doctest::Approx(4.0).epsilon(1e-9));
    const double osc = adaptive_gauss_kronrod([](double x) { return std::cos(40.0 * x); }, 0.0, 3.0, 1e-12);
    CHECK(osc == doctest::Approx(std::sin(120.0) / 40.0).epsilon(1e-10));
  }

  TEST_CASE("single particle density") {
    const ModelParams p(1, 3.0);
    CHECK(weyl_density_partition(p, PartitionShape({1}), 4.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(weyl_density_total(p, 9.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(weyl_density_partition(ModelParams(1, 1.0, 5.0), PartitionShape({1}), 4.0) ==
          doctest::Approx(5.0 / (2.0 * kPiT * 2.0)));
    CHECK(weyl_count(p, 9.0) == doctest::Approx(6.0).epsilon(1e-9));
  }

  TEST_CASE("two particles, Tonks limit") {
    const ModelParams p(2, 1e10);
    CHECK(weyl_density_partition(p, PartitionShape({2}), 2.0) == doctest::Approx(0.5).epsilon(1e-12));
    // Jacobian 1 on a circle: half the circumference over 2 sqrt(e) times 2 pi sqrt(e).
    for (double e : {0.3, 2.0, 17.0})
      CHECK(std::fabs(weyl_density_partition(p, PartitionShape({1, 1}), e) - kPiT) < 1e-8);
    CHECK(weyl_density_total(p, 2.0) == doctest::Approx(kPiT / 2.0 - 0.25).epsilon(1e-9));
    for (double e : {3.0, 30.0})
      CHECK(weyl_count(p, e) == doctest::Approx(kPiT * e / 2.0 - std::sqrt(2.0 * e) / 2.0).epsilon(1e-8));
  }

  TEST_CASE("Tonks count follows the lattice") {
    const ModelParams p(2, 1e10);
    for (double e : {200.0, 800.0}) {
      const double w = weyl_count(p, e);
      const double exact = static_cast<double>(tonks_pairs(e));
      // Circle-problem error is O(e^{1/3}); the leading term must match.
      CHECK(std::fabs(w - exact) < 3.0 * std::cbrt(e));
    }
  }

  TEST_CASE("three particles converge under node refinement") {
    const ModelParams p(3, 10.0);
    QuadratureSpec coarse, fine;
    coarse.nodes_per_angle = 48;
    fine.nodes_per_angle = 96;
    const double a = weyl_density_total(p, 50.0, coarse);
    const double b = weyl_density_total(p, 50.0, fine);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
    CHECK(b > 0.0);
  }

  TEST_CASE("two particles at g = 10 against the staircase") {
    // Pointwise the staircase swings by a few levels around the Weyl count
    // (six levels sit in [29.9, 30]); its running mean must follow it.
    const ModelParams p(2, 10.0);
    const auto t = enumerate_spectrum(p, 40.0);
    double mean = 0.0;
    int samples = 0;
    for (double e = 10.0; e <= 40.0; e += 0.1, ++samples) mean += staircase(t, e) - weyl_count(p, e);
    mean /= samples;
    CHECK(std::fabs(mean) < 0.5);
    CHECK(std::fabs(weyl_count(p, 30.0) - staircase(t, 30.0)) < 3.0);
  }

  TEST_CASE("invalid input") {
    const ModelParams p(2, 1.0);
    CHECK_THROWS_AS(weyl_density_partition(p, PartitionShape({1, 1}), 0.0), NonPositiveEnergy);
    CHECK_THROWS_AS(weyl_density_total(p, -1.0), NonPositiveEnergy);
    QuadratureSpec q;
    q.nodes_per_angle = 4;
    CHECK_THROWS_AS(q.validate(), ContractViolation);
  }
}
