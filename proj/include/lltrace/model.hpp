#pragma once

// Domain types of the Lieb-Liniger ring and the (multiplicity-modified)
// Bethe equations
//
//   2 pi I_j = L k_j + 2 sum_i a_i atan((k_j - k_i) / g),   j = 1..d,
//
// where a = (a_1..a_d) is an integer partition of N. The physical equations
// are the case a = (1, ..., 1).

#include <compare>
#include <cstddef>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace lltrace {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Largest partition dimension any routine accepts (N <= 16).
inline constexpr int kMaxDimension = 16;

using SmallMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDimension, kMaxDimension>;
using SmallVector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDimension, 1>;

/// N particles on a ring of length L with repulsive contact coupling g.
class ModelParams {
 public:
  /// Throws ContractViolation unless n >= 1, coupling > 0 and ring_length > 0.
  ModelParams(int n_particles, double coupling, double ring_length = kTwoPi);

  int n_particles() const noexcept { return n_; }
  double coupling() const noexcept { return g_; }
  double ring_length() const noexcept { return l_; }

  /// delta = (N + 1) mod 2: quantum numbers are integers for odd N and
  /// half-integers for even N.
  int parity_offset() const noexcept { return (n_ + 1) % 2; }

  ModelParams with_coupling(double coupling) const { return {n_, coupling, l_}; }

  bool operator==(const ModelParams&) const = default;

 private:
  int n_;
  double g_;
  double l_;
};

/// Strictly increasing Bethe quantum numbers, stored exactly as 2 I_j.
class QuantumNumbers {
 public:
  /// Throws InvalidQuantumNumbers on repeats, decreasing entries, or entries
  /// whose parity disagrees with `parity_offset`.
  QuantumNumbers(std::vector<int> doubled, int parity_offset);

  std::span<const int> doubled() const noexcept { return doubled_; }
  int parity_offset() const noexcept { return parity_; }
  std::size_t size() const noexcept { return doubled_.size(); }
  double operator[](std::size_t j) const noexcept { return 0.5 * doubled_[j]; }

  /// The parity image -I in reversed order (again strictly increasing).
  QuantumNumbers reflected() const;

  /// Sum of (2 I_j)^2; labels the free-fermion energy shell.
  long long doubled_square_sum() const noexcept;

  std::string to_string() const;

  auto operator<=>(const QuantumNumbers& other) const noexcept { return doubled_ <=> other.doubled_; }
  bool operator==(const QuantumNumbers& other) const noexcept { return doubled_ == other.doubled_; }

 private:
  std::vector<int> doubled_;
  int parity_;
};

/// An integer partition a of N in non-increasing block order, with the
/// multiplicity counts s_m and the ordered-sum coefficient
/// C_a = (-1)^(N-d) / prod_m (m^{s_m} s_m!).
class PartitionShape {
 public:
  /// Throws ContractViolation unless blocks are positive, non-increasing and
  /// there are at most kMaxDimension of them.
  explicit PartitionShape(std::vector<int> blocks);

  /// The all-ones partition (1, ..., 1) of n: the physical Bethe equations.
  static PartitionShape singletons(int n);

  std::span<const int> blocks() const noexcept { return blocks_; }
  int block(std::size_t i) const noexcept { return blocks_[i]; }
  int dimension() const noexcept { return static_cast<int>(blocks_.size()); }
  int total() const noexcept { return total_; }
  const std::map<int, int>& multiplicity_counts() const noexcept { return counts_; }
  const Rational& coefficient() const noexcept { return coefficient_; }
  double coefficient_value() const noexcept { return coefficient_value_; }
  bool all_ones() const noexcept { return total_ == dimension(); }

  std::string to_string() const;

  bool operator==(const PartitionShape& other) const noexcept { return blocks_ == other.blocks_; }

 private:
  std::vector<int> blocks_;
  int total_ = 0;
  std::map<int, int> counts_;
  Rational coefficient_;
  double coefficient_value_ = 0.0;
};

/// A solved eigenstate of the (modified) Bethe equations.
struct BetheState {
  PartitionShape shape;
  QuantumNumbers quantum_numbers;
  std::vector<double> rapidities;
  double energy = 0.0;
  double momentum = 0.0;
  double gaudin_det = 0.0;
  double residual_norm = 0.0;  // sup-norm of bethe_residual at the solution
  int iterations = 0;
};

/// Contact kernel g / (g^2 + x^2), the derivative of atan(x / g).
inline double contact_kernel(double x, double g) noexcept { return g / (g * g + x * x); }

/// r_j = L k_j + 2 sum_i a_i atan((k_j - k_i)/g) - 2 pi I_j.
std::vector<double> bethe_residual(const ModelParams& params, const PartitionShape& shape,
                                   const QuantumNumbers& quantum_numbers, std::span<const double> rapidities);

/// Gaudin matrix dI_j/dk_i:
///   (1/2pi) [ delta_ji (L + sum_{l != j} 2 a_l K(k_j - k_l)) - (1 - delta_ji) 2 a_i K(k_j - k_i) ].
/// Each row has diagonal excess exactly L/2pi over its off-diagonal mass.
SmallMatrix gaudin_matrix(const ModelParams& params, const PartitionShape& shape, std::span<const double> rapidities);

/// det of gaudin_matrix; bounded below by (L/2pi)^d.
double jacobian_det(const ModelParams& params, const PartitionShape& shape, std::span<const double> rapidities);

/// Raw-block variants used by the quadrature and trace kernels.
void fill_gaudin_matrix(double ring_length, double coupling, std::span<const int> blocks,
                        std::span<const double> rapidities, SmallMatrix& out);
double gaudin_determinant(double ring_length, double coupling, std::span<const int> blocks,
                          std::span<const double> rapidities);

/// E = sum_j a_j k_j^2.
double energy(const PartitionShape& shape, std::span<const double> rapidities);
/// P = sum_j a_j k_j.
double momentum(const PartitionShape& shape, std::span<const double> rapidities);

}  // namespace lltrace
