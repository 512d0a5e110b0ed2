#include "lltrace/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "lltrace/errors.hpp"
#include "lltrace/partitions.hpp"

namespace lltrace {

namespace {

void require_dimension(std::size_t got, int expected, const char* what) {
  if (got != static_cast<std::size_t>(expected)) {
    throw ContractViolation(fmt::format("{}: length {} does not match partition dimension {}", what, got, expected));
  }
}

}  // namespace

ModelParams::ModelParams(int n_particles, double coupling, double ring_length)
    : n_(n_particles), g_(coupling), l_(ring_length) {
  if (n_ < 1 || n_ > kMaxDimension) {
    throw ContractViolation(fmt::format("particle number must lie in [1, {}], got {}", kMaxDimension, n_));
  }
  if (!(g_ > 0.0) || !std::isfinite(g_)) {
    throw ContractViolation(fmt::format("coupling must be positive and finite (repulsive regime), got {}", g_));
  }
  if (!(l_ > 0.0) || !std::isfinite(l_)) {
    throw ContractViolation(fmt::format("ring length must be positive, got {}", l_));
  }
}

QuantumNumbers::QuantumNumbers(std::vector<int> doubled, int parity_offset)
    : doubled_(std::move(doubled)), parity_(parity_offset) {
  if (parity_ != 0 && parity_ != 1) {
    throw InvalidQuantumNumbers(fmt::format("parity offset must be 0 or 1, got {}", parity_));
  }
  if (doubled_.empty()) throw InvalidQuantumNumbers("empty quantum-number tuple");
  for (std::size_t j = 0; j < doubled_.size(); ++j) {
    if (((doubled_[j] % 2) + 2) % 2 != parity_) {
      throw InvalidQuantumNumbers(fmt::format("2I = {} has the wrong parity (expected {} mod 2)", doubled_[j], parity_));
    }
    if (j > 0 && doubled_[j] <= doubled_[j - 1]) {
      throw InvalidQuantumNumbers(fmt::format("quantum numbers must be distinct and strictly increasing: {}",
                                              fmt::join(doubled_, ",")));
    }
  }
}

QuantumNumbers QuantumNumbers::reflected() const {
  std::vector<int> out(doubled_.rbegin(), doubled_.rend());
  for (int& v : out) v = -v;
  return {std::move(out), parity_};
}

long long QuantumNumbers::doubled_square_sum() const noexcept {
  long long s = 0;
  for (int v : doubled_) s += static_cast<long long>(v) * v;
  return s;
}

std::string QuantumNumbers::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < doubled_.size(); ++j) {
    if (j) out += ' ';
    out += (doubled_[j] % 2 == 0) ? fmt::format("{}", doubled_[j] / 2) : fmt::format("{}/2", doubled_[j]);
  }
  return out;
}

PartitionShape::PartitionShape(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty() || blocks_.size() > static_cast<std::size_t>(kMaxDimension)) {
    throw ContractViolation(fmt::format("partition must have 1..{} blocks", kMaxDimension));
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i] < 1 || (i > 0 && blocks_[i] > blocks_[i - 1])) {
      throw ContractViolation(fmt::format("partition blocks must be positive and non-increasing: {}",
                                          fmt::join(blocks_, ",")));
    }
    total_ += blocks_[i];
    ++counts_[blocks_[i]];
  }
  coefficient_ = ordered_sum_coefficient(blocks_);
  coefficient_value_ = static_cast<double>(coefficient_);
}

PartitionShape PartitionShape::singletons(int n) {
  if (n < 1) throw ContractViolation("singletons partition needs n >= 1");
  return PartitionShape(std::vector<int>(static_cast<std::size_t>(n), 1));
}

std::string PartitionShape::to_string() const { return fmt::format("({})", fmt::join(blocks_, ",")); }

std::vector<double> bethe_residual(const ModelParams& params, const PartitionShape& shape,
                                   const QuantumNumbers& quantum_numbers, std::span<const double> rapidities) {
  const int d = shape.dimension();
  require_dimension(quantum_numbers.size(), d, "bethe_residual quantum numbers");
  require_dimension(rapidities.size(), d, "bethe_residual rapidities");
  const double g = params.coupling();
  const double l = params.ring_length();

  std::vector<double> r(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    double scattering = 0.0;
    for (int i = 0; i < d; ++i) {
      if (i != j) scattering += shape.block(i) * std::atan((rapidities[j] - rapidities[i]) / g);
    }
    r[j] = l * rapidities[j] + 2.0 * scattering - kPi * quantum_numbers.doubled()[j];
  }
  return r;
}

void fill_gaudin_matrix(double ring_length, double coupling, std::span<const int> blocks,
                        std::span<const double> rapidities, SmallMatrix& out) {
  const auto d = static_cast<Eigen::Index>(blocks.size());
  out.resize(d, d);
  const double scale = 1.0 / kTwoPi;
  for (Eigen::Index j = 0; j < d; ++j) {
    double diagonal = ring_length;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (i == j) continue;
      const double w = 2.0 * blocks[i] * contact_kernel(rapidities[j] - rapidities[i], coupling);
      out(j, i) = -scale * w;
      diagonal += w;
    }
    out(j, j) = scale * diagonal;
  }
}

double gaudin_determinant(double ring_length, double coupling, std::span<const int> blocks,
                          std::span<const double> rapidities) {
  // Rows are strictly diagonally dominant, so elimination without pivoting is
  // stable and every pivot stays >= L/2pi.
  const std::size_t d = blocks.size();
  std::array<double, kMaxDimension * kMaxDimension> a{};
  const double scale = 1.0 / kTwoPi;
  for (std::size_t j = 0; j < d; ++j) {
    double diagonal = ring_length;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == j) continue;
      const double w = 2.0 * blocks[i] * contact_kernel(rapidities[j] - rapidities[i], coupling);
      a[j * d + i] = -scale * w;
      diagonal += w;
    }
    a[j * d + j] = scale * diagonal;
  }
  double det = 1.0;
  for (std::size_t p = 0; p < d; ++p) {
    const double pivot = a[p * d + p];
    det *= pivot;
    for (std::size_t r = p + 1; r < d; ++r) {
      const double f = a[r * d + p] / pivot;
      if (f == 0.0) continue;
      for (std::size_t c = p + 1; c < d; ++c) a[r * d + c] -= f * a[p * d + c];
    }
  }
  return det;
}

SmallMatrix gaudin_matrix(const ModelParams& params, const PartitionShape& shape, std::span<const double> rapidities) {
  require_dimension(rapidities.size(), shape.dimension(), "gaudin_matrix rapidities");
  SmallMatrix g;
  fill_gaudin_matrix(params.ring_length(), params.coupling(), shape.blocks(), rapidities, g);
  return g;
}

double jacobian_det(const ModelParams& params, const PartitionShape& shape, std::span<const double> rapidities) {
  require_dimension(rapidities.size(), shape.dimension(), "jacobian_det rapidities");
  return gaudin_determinant(params.ring_length(), params.coupling(), shape.blocks(), rapidities);
}

double energy(const PartitionShape& shape, std::span<const double> rapidities) {
  require_dimension(rapidities.size(), shape.dimension(), "energy rapidities");
  double e = 0.0;
  for (int j = 0; j < shape.dimension(); ++j) e += shape.block(j) * rapidities[j] * rapidities[j];
  return e;
}

double momentum(const PartitionShape& shape, std::span<const double> rapidities) {
  require_dimension(rapidities.size(), shape.dimension(), "momentum rapidities");
  double p = 0.0;
  for (int j = 0; j < shape.dimension(); ++j) p += shape.block(j) * rapidities[j];
  return p;
}

}  // namespace lltrace
