#include "lltrace/two_body.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "lltrace/errors.hpp"
#include "lltrace/solver.hpp"

namespace lltrace {

double relative_secular_root(int n, const ModelParams& params) {
  if (n < 1) throw ContractViolation(fmt::format("relative quantum number must be >= 1, got {}", n));
  const double l = params.ring_length();
  const double g = params.coupling();
  const auto f = [&](double kappa) { return l * kappa + 2.0 * std::atan(2.0 * kappa / g) - kPi * n; };

  double lo = 0.0;
  double hi = kPi * n / l;
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<TwoBodyLevel> two_body_levels(const ModelParams& params, double e_max) {
  if (params.n_particles() != 2) {
    throw WrongParticleNumber(fmt::format("two-body levels need N = 2, got N = {}", params.n_particles()));
  }
  const double c = kTwoPi / params.ring_length();
  std::vector<TwoBodyLevel> out;
  for (int n = 1;; ++n) {
    const double kappa = relative_secular_root(n, params);
    const double relative = 2.0 * kappa * kappa;
    if (relative > e_max) break;  // kappa increases with n
    const auto s_max = static_cast<int>(std::floor(std::sqrt(2.0 * (e_max - relative)) / c)) + 1;
    for (int s = -s_max; s <= s_max; ++s) {
      if (std::abs(s + n) % 2 != 1) continue;
      const double p = c * s;
      const double e = 0.5 * p * p + relative;
      if (e <= e_max) out.push_back({s, n, kappa, e});
    }
  }
  std::sort(out.begin(), out.end(), [](const TwoBodyLevel& a, const TwoBodyLevel& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    if (a.total_momentum_number != b.total_momentum_number) return a.total_momentum_number < b.total_momentum_number;
    return a.relative_number < b.relative_number;
  });
  return out;
}

TwoBodyComparison compare_with_bethe(const ModelParams& params, double e_max, double tolerance, unsigned workers) {
  const auto secular = two_body_levels(params, e_max);
  SolverSettings settings;
  settings.workers = workers;
  const auto table = enumerate_spectrum(params, e_max, settings);

  TwoBodyComparison report;
  report.bethe_levels = table.levels.size();
  report.secular_levels = secular.size();
  report.tolerance = tolerance;
  const std::size_t n = std::min(secular.size(), table.levels.size());
  for (std::size_t i = 0; i < n; ++i) {
    report.max_deviation = std::max(report.max_deviation, std::fabs(secular[i].energy - table.levels[i].energy));
  }
  report.passed = secular.size() == table.levels.size() && report.max_deviation <= tolerance;
  return report;
}

}  // namespace lltrace
