#pragma once

// Independent N = 2 spectrum. Adding and subtracting the two Bethe equations
// separates the centre of mass, P = k_1 + k_2 = 2 pi s / L with s = I_1 + I_2,
// from the relative rapidity kappa = (k_2 - k_1) / 2, which solves
//
//   f(kappa) = L kappa + 2 atan(2 kappa / g) - pi n = 0,   n = I_2 - I_1 >= 1.
//
// This is the quantization condition of the even sector of a periodic square
// billiard whose diagonal carries a Robin condition with parameter g / 2.
// E = P^2 / 2 + 2 kappa^2; the half-integer rule for N = 2 requires s + n odd.

#include <vector>

#include "lltrace/model.hpp"

namespace lltrace {

struct TwoBodyLevel {
  int total_momentum_number = 0;  // s = I_1 + I_2
  int relative_number = 1;        // n = I_2 - I_1
  double relative_root = 0.0;     // kappa
  double energy = 0.0;
};

/// Root of f on (0, pi n / L) by bisection to machine resolution; f(0) = -pi n
/// and f(pi n / L) = 2 atan(2 pi n / (L g)) > 0 bracket it.
double relative_secular_root(int n, const ModelParams& params);

/// All levels with E <= e_max, ascending in energy then (s, n). Throws
/// WrongParticleNumber unless params describe two particles.
std::vector<TwoBodyLevel> two_body_levels(const ModelParams& params, double e_max);

struct TwoBodyComparison {
  std::size_t bethe_levels = 0;
  std::size_t secular_levels = 0;
  double max_deviation = 0.0;
  double tolerance = 1e-9;
  bool passed = false;
};

/// Matches enumerate_spectrum and two_body_levels by sorted order. PASS iff
/// both lists have equal length and every pair agrees within `tolerance`.
TwoBodyComparison compare_with_bethe(const ModelParams& params, double e_max, double tolerance = 1e-9,
                                     unsigned workers = 0);

}  // namespace lltrace
