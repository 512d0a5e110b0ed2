#include "lltrace/weyl.hpp"

#include <array>
#include <cmath>

#include <fmt/format.h>

#include "lltrace/errors.hpp"
#include "lltrace/partitions.hpp"
#include "lltrace/quadrature.hpp"
#include "lltrace/summation.hpp"

namespace lltrace {

namespace {

// One hyperspherical angle: nodes, weights including the sin^p measure, and
// the cos/sin of each node.
struct AngleRule {
  std::vector<double> weight;
  std::vector<double> cosine;
  std::vector<double> sine;
};

AngleRule polar_rule(const GaussLegendreRule& gl, int sine_power) {
  AngleRule r;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double theta = 0.5 * kPi * (gl.nodes[i] + 1.0);
    r.cosine.push_back(std::cos(theta));
    r.sine.push_back(std::sin(theta));
    r.weight.push_back(0.5 * kPi * gl.weights[i] * std::pow(r.sine.back(), sine_power));
  }
  return r;
}

AngleRule azimuth_rule(const GaussLegendreRule& gl) {
  AngleRule r;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double phi = kPi * (gl.nodes[i] + 1.0);
    r.cosine.push_back(std::cos(phi));
    r.sine.push_back(std::sin(phi));
    r.weight.push_back(kPi * gl.weights[i]);
  }
  return r;
}

// integral over S^{d-1} of det G(k), k_j = radius * omega_j / sqrt(a_j).
double sphere_integral(const ModelParams& params, const PartitionShape& shape, double radius, int nodes) {
  const int d = shape.dimension();
  const auto blocks = shape.blocks();
  std::array<double, kMaxDimension> scale{};
  for (int j = 0; j < d; ++j) scale[j] = radius / std::sqrt(static_cast<double>(blocks[j]));

  std::array<double, kMaxDimension> k{};
  const auto det_at = [&](std::span<const double> omega) {
    for (int j = 0; j < d; ++j) k[j] = scale[j] * omega[j];
    return gaudin_determinant(params.ring_length(), params.coupling(), blocks, std::span<const double>(k.data(), d));
  };

  if (d == 1) {
    const double plus = 1.0;
    const double minus = -1.0;
    return det_at({&plus, 1}) + det_at({&minus, 1});
  }

  const GaussLegendreRule& gl = gauss_legendre(nodes);
  // angles[0..d-3] polar with sin^{d-2-j}, angles[d-2] azimuthal.
  std::vector<AngleRule> angles;
  for (int j = 0; j < d - 2; ++j) angles.push_back(polar_rule(gl, d - 2 - j));
  angles.push_back(azimuth_rule(gl));

  const int dims = d - 1;
  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  std::array<double, kMaxDimension> omega{};
  CompensatedSum total;
  const int n = static_cast<int>(gl.nodes.size());
  while (true) {
    double w = 1.0;
    double sine_product = 1.0;
    for (int j = 0; j < dims; ++j) {
      const AngleRule& a = angles[j];
      const int i = idx[j];
      w *= a.weight[i];
      omega[j] = sine_product * a.cosine[i];
      if (j == dims - 1) omega[j + 1] = sine_product * a.sine[i];
      sine_product *= a.sine[i];
    }
    total += w * det_at(std::span<const double>(omega.data(), d));

    int pos = dims - 1;
    while (pos >= 0 && idx[pos] == n - 1) idx[pos--] = 0;
    if (pos < 0) break;
    ++idx[pos];
  }
  return total.value();
}

}  // namespace

void QuadratureSpec::validate() const {
  if (nodes_per_angle < 8) throw ContractViolation("nodes_per_angle must be >= 8");
}

double weyl_density_partition(const ModelParams& params, const PartitionShape& shape, double e,
                              const QuadratureSpec& quad) {
  quad.validate();
  if (!(e > 0.0)) throw NonPositiveEnergy(fmt::format("smooth density needs e > 0, got {}", e));
  if (shape.total() != params.n_particles()) {
    throw ContractViolation(fmt::format("partition {} does not sum to N = {}", shape.to_string(), params.n_particles()));
  }
  const int d = shape.dimension();
  double block_product = 1.0;
  for (int b : shape.blocks()) block_product *= b;
  const double radial = 0.5 * std::pow(e, 0.5 * (d - 2)) / std::sqrt(block_product);
  return radial * sphere_integral(params, shape, std::sqrt(e), quad.nodes_per_angle);
}

double weyl_density_total(const ModelParams& params, double e, const QuadratureSpec& quad) {
  CompensatedSum total;
  for (const auto& shape : enumerate_partitions(params.n_particles()).shapes) {
    total += shape.coefficient_value() * weyl_density_partition(params, shape, e, quad);
  }
  return total.value();
}

double weyl_count(const ModelParams& params, double e, const QuadratureSpec& quad) {
  if (!(e > 0.0)) throw NonPositiveEnergy(fmt::format("counting function needs e > 0, got {}", e));
  const auto integrand = [&](double s) { return 2.0 * s * weyl_density_total(params, s * s, quad); };
  return adaptive_gauss_kronrod(integrand, 0.0, std::sqrt(e), 1e-8);
}

}  // namespace lltrace
