#include "lltrace/partitions.hpp"

#include <fmt/format.h>

#include "lltrace/errors.hpp"

namespace lltrace {

namespace {

using boost::multiprecision::cpp_int;

cpp_int factorial(int n) {
  cpp_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

cpp_int binomial(int r, int n) {
  if (n < 0 || n > r) return 0;
  cpp_int b = 1;
  for (int i = 1; i <= n; ++i) {
    b *= r - n + i;
    b /= i;
  }
  return b;
}

void generate(int remaining, int largest, std::vector<int>& prefix, std::vector<PartitionShape>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int part = std::min(remaining, largest); part >= 1; --part) {
    prefix.push_back(part);
    generate(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

// Odometer over {1..range}^d, with ascending last index fastest.
template <class Visit>
void for_each_tuple(int d, int range, Visit&& visit) {
  std::vector<int> idx(static_cast<std::size_t>(d), 1);
  while (true) {
    visit(idx);
    int pos = d - 1;
    while (pos >= 0 && idx[pos] == range) idx[pos--] = 1;
    if (pos < 0) return;
    ++idx[pos];
  }
}

template <class Visit>
void for_each_increasing(int n, int range, Visit&& visit) {
  if (n > range) return;
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) idx[j] = j + 1;
  while (true) {
    visit(idx);
    int pos = n - 1;
    while (pos >= 0 && idx[pos] == range - (n - 1 - pos)) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (int j = pos + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Rational ordered_sum_coefficient(std::span<const int> blocks) {
  int total = 0;
  std::map<int, int> counts;
  for (int b : blocks) {
    total += b;
    ++counts[b];
  }
  cpp_int denominator = 1;
  for (const auto& [m, s] : counts) denominator *= boost::multiprecision::pow(cpp_int(m), static_cast<unsigned>(s)) * factorial(s);
  const int d = static_cast<int>(blocks.size());
  const int sign = ((total - d) % 2 == 0) ? 1 : -1;
  return Rational(cpp_int(sign), denominator);
}

PartitionSet enumerate_partitions(int n) {
  if (n < 1 || n > kMaxPartitionOrder) {
    throw OutOfRange(fmt::format("partition order must lie in [1, {}], got {}", kMaxPartitionOrder, n));
  }
  PartitionSet set{n, {}};
  std::vector<int> prefix;
  generate(n, n, prefix, set.shapes);
  return set;
}

bool binomial_identity_check(int n, int r) {
  if (n < 1 || n > 10 || r < 1 || r > 30) {
    throw ContractViolation(fmt::format("binomial_identity_check needs 1<=n<=10, 1<=r<=30 (got n={}, r={})", n, r));
  }
  Rational sum = 0;
  for (const auto& shape : enumerate_partitions(n).shapes) {
    sum += shape.coefficient() * Rational(boost::multiprecision::pow(cpp_int(r), static_cast<unsigned>(shape.dimension())));
  }
  return sum == Rational(binomial(r, n));
}

DecompositionSums ordered_sum_decomposition_check(int n, int range_size, const SymmetricSummand& summand) {
  if (n < 1 || n > 6 || range_size < 1 || range_size > 12) {
    throw ContractViolation(
        fmt::format("ordered_sum_decomposition_check needs 1<=n<=6, 1<=range<=12 (got n={}, range={})", n, range_size));
  }
  DecompositionSums sums;
  for_each_increasing(n, range_size, [&](const std::vector<int>& idx) { sums.ordered += summand(idx); });

  std::vector<int> expanded(static_cast<std::size_t>(n));
  for (const auto& shape : enumerate_partitions(n).shapes) {
    Rational partial = 0;
    for_each_tuple(shape.dimension(), range_size, [&](const std::vector<int>& rep) {
      std::size_t pos = 0;
      for (int b = 0; b < shape.dimension(); ++b) {
        for (int c = 0; c < shape.block(b); ++c) expanded[pos++] = rep[b];
      }
      partial += summand(expanded);
    });
    sums.decomposed += shape.coefficient() * partial;
  }
  return sums;
}

}  // namespace lltrace
