#pragma once

// Decomposition of an ordered sum over I_1 < ... < I_n into unrestricted sums:
//
//   sum_{I_1<...<I_n} f  =  sum_{a in partitions(n)} C_a  sum_{I_1..I_n} sigma_a f,
//
// valid for f symmetric under permutations of its arguments. sigma_a ties the
// first a_1 indices together, the next a_2 together, and so on.

#include <functional>
#include <span>
#include <vector>

#include "lltrace/model.hpp"

namespace lltrace {

inline constexpr int kMaxPartitionOrder = 16;

struct PartitionSet {
  int n = 0;
  std::vector<PartitionShape> shapes;  // reverse-lexicographic: (n), (n-1,1), ..., (1,...,1)
};

/// C_a = (-1)^(N-d) / prod_m (m^{s_m} s_m!) for the partition with the given blocks.
Rational ordered_sum_coefficient(std::span<const int> blocks);

/// All partitions of n, 1 <= n <= 16. Throws OutOfRange otherwise.
PartitionSet enumerate_partitions(int n);

/// Checks binom(r, n) == sum_a C_a r^{d(a)} exactly (the decomposition applied
/// to f = 1 over r index values). Requires 1 <= n <= 10, 1 <= r <= 30.
bool binomial_identity_check(int n, int r);

using SymmetricSummand = std::function<Rational(std::span<const int>)>;

struct DecompositionSums {
  Rational ordered;     // sum over i_1 < ... < i_n
  Rational decomposed;  // sum_a C_a sum_{unrestricted, sigma_a} f
};

/// Both sides of the ordered-sum decomposition over indices {1..range_size}.
/// Requires 1 <= n <= 6 and 1 <= range_size <= 12; the caller supplies a
/// symmetric summand and compares the two sums.
DecompositionSums ordered_sum_decomposition_check(int n, int range_size, const SymmetricSummand& summand);

}  // namespace lltrace
