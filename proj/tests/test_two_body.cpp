#include <doctest.h>

#include <cmath>

#include "lltrace/errors.hpp"
#include "lltrace/solver.hpp"
#include "lltrace/two_body.hpp"

using namespace lltrace;

TEST_SUITE("two_body") {
  TEST_CASE("secular root limits") {
    CHECK(relative_secular_root(1, ModelParams(2, 1e12)) == doctest::Approx(0.5).epsilon(1e-9));
    // Free-boson side: 2 pi kappa ~ g / kappa, so kappa ~ sqrt(g / 2 pi) -> 0.
    CHECK(relative_secular_root(1, ModelParams(2, 1e-9)) == doctest::Approx(std::sqrt(1e-9 / (2.0 * M_PI))).epsilon(1e-3));
    CHECK(relative_secular_root(1, ModelParams(2, 10.0)) == doctest::Approx(0.47015664890486947).epsilon(1e-14));
    CHECK_THROWS_AS(relative_secular_root(0, ModelParams(2, 1.0)), ContractViolation);
  }

  TEST_CASE("secular root is monotone in n and g") {
    for (double g : {0.1, 1.0, 10.0}) {
      double prev = 0.0;
      for (int n = 1; n <= 20; ++n) {
        const double k = relative_secular_root(n, ModelParams(2, g));
        CHECK(k > prev);
        CHECK(relative_secular_root(n, ModelParams(2, 2.0 * g)) > k);
        prev = k;
      }
    }
  }

  TEST_CASE("level lists") {
    const auto tonks = two_body_levels(ModelParams(2, 1e8), 3.0);
    REQUIRE(!tonks.empty());
    CHECK(tonks[0].total_momentum_number == 0);
    CHECK(tonks[0].relative_number == 1);
    CHECK(tonks[0].energy == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(two_body_levels(ModelParams(2, 10.0), 0.1).empty());
    for (const auto& lv : two_body_levels(ModelParams(2, 3.0), 40.0)) CHECK(std::abs(lv.total_momentum_number + lv.relative_number) % 2 == 1);
    CHECK_THROWS_AS(two_body_levels(ModelParams(3, 1.0), 5.0), WrongParticleNumber);
  }

  TEST_CASE("Bethe states carry the secular quantum numbers") {
    const ModelParams p(2, 4.0);
    for (const auto& lv : two_body_levels(p, 25.0)) {
      const int i1 = lv.total_momentum_number - lv.relative_number;  // doubled
      const int i2 = lv.total_momentum_number + lv.relative_number;
      const auto s = solve_state(p, QuantumNumbers({i1, i2}, 1));
      CHECK(s.momentum == doctest::Approx(lv.total_momentum_number).epsilon(1e-12));
      CHECK(0.5 * (s.rapidities[1] - s.rapidities[0]) == doctest::Approx(lv.relative_root).epsilon(1e-12));
      CHECK(s.energy == doctest::Approx(lv.energy).epsilon(1e-12));
    }
  }

  TEST_CASE("comparison with the vector solver") {
    for (auto [g, e] : {std::pair{10.0, 30.0}, std::pair{100.0, 50.0}, std::pair{0.1, 10.0}}) {
      const auto r = compare_with_bethe(ModelParams(2, g), e);
      CHECK(r.passed);
      CHECK(r.bethe_levels == r.secular_levels);
      CHECK(r.max_deviation <= 1e-9);
    }
    CHECK_THROWS_AS(compare_with_bethe(ModelParams(1, 1.0), 5.0), WrongParticleNumber);
  }
}
