#pragma once

#include <functional>
#include <vector>

namespace lltrace {

struct GaussLegendreRule {
  std::vector<double> nodes;  // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (cached, thread-safe).
const GaussLegendreRule& gauss_legendre(int n);

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b]: bisects the panel with the
/// largest |K15 - G7| until the summed estimate drops below abs_tolerance.
/// Panels are summed in position order. Throws NonConvergence past max_panels.
double adaptive_gauss_kronrod(const std::function<double(double)>& f, double a, double b, double abs_tolerance,
                              int max_panels = 4000);

}  // namespace lltrace
