#pragma once

#include "lltrace/model.hpp"

namespace lltrace {

/// Tensor-product Gauss-Legendre rule on the d-1 hyperspherical angles.
struct QuadratureSpec {
  int nodes_per_angle = 64;

  void validate() const;
};

/// Smooth density of one partition term,
///   integral d^d k |det dI/dk| delta(e - sum_j a_j k_j^2),
/// evaluated on the sphere |u| = sqrt(e) with u_j = sqrt(a_j) k_j:
///   e^{(d-2)/2} / 2 * (prod a_j)^{-1/2} * integral_{S^{d-1}} dOmega det G(k(sqrt(e) omega)).
/// Throws NonPositiveEnergy for e <= 0.
double weyl_density_partition(const ModelParams& params, const PartitionShape& shape, double e,
                              const QuadratureSpec& quad = {});

/// sum_a C_a * weyl_density_partition(a, e) over all partitions of N.
double weyl_density_total(const ModelParams& params, double e, const QuadratureSpec& quad = {});

/// integral_0^e weyl_density_total, by globally adaptive Gauss-Kronrod (7/15)
/// in s = sqrt(e') to absolute tolerance 1e-8.
double weyl_count(const ModelParams& params, double e, const QuadratureSpec& quad = {});

}  // namespace lltrace
