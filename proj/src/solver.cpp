#include "lltrace/solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/LU>
#include <fmt/format.h>

#include "lltrace/errors.hpp"
#include "lltrace/parallel.hpp"

namespace lltrace {

namespace {

constexpr int kDefaultContinuationSteps = 24;
constexpr double kContinuationDecades = 6.0;
constexpr double kArmijo = 1e-4;

struct NewtonOutcome {
  bool converged = false;
  int iterations = 0;
  double residual_inf = 0.0;
  std::vector<double> trace;
};

struct Norms {
  double inf = 0.0;
  double two = 0.0;
};

Norms residual_into(double l, double g, std::span<const int> blocks, std::span<const int> doubled,
                    std::span<const double> k, std::span<double> r) {
  const std::size_t d = blocks.size();
  Norms n;
  for (std::size_t j = 0; j < d; ++j) {
    double scattering = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      if (i != j) scattering += blocks[i] * std::atan((k[j] - k[i]) / g);
    }
    r[j] = l * k[j] + 2.0 * scattering - kPi * doubled[j];
    n.inf = std::max(n.inf, std::fabs(r[j]));
    n.two += r[j] * r[j];
  }
  n.two = std::sqrt(n.two);
  return n;
}

NewtonOutcome newton(double l, double g, std::span<const int> blocks, std::span<const int> doubled,
                     std::vector<double>& k, const SolverSettings& settings) {
  const std::size_t d = blocks.size();
  std::vector<double> r(d), r_try(d), k_try(d);
  SmallMatrix jac;
  SmallVector rhs(static_cast<Eigen::Index>(d));

  NewtonOutcome out;
  Norms norms = residual_into(l, g, blocks, doubled, k, r);
  out.trace.push_back(norms.inf);
  for (int it = 0;; ++it) {
    out.iterations = it;
    out.residual_inf = norms.inf;
    if (norms.inf <= settings.residual_tolerance) {
      out.converged = true;
      return out;
    }
    if (it >= settings.max_iterations) return out;

    fill_gaudin_matrix(l, g, blocks, k, jac);
    jac *= kTwoPi;
    for (std::size_t j = 0; j < d; ++j) rhs[static_cast<Eigen::Index>(j)] = -r[j];
    const SmallVector step = jac.partialPivLu().solve(rhs);

    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h <= settings.max_halvings; ++h, t *= 0.5) {
      for (std::size_t j = 0; j < d; ++j) k_try[j] = k[j] + t * step[static_cast<Eigen::Index>(j)];
      const Norms trial = residual_into(l, g, blocks, doubled, k_try, r_try);
      if (trial.two <= (1.0 - kArmijo * t) * norms.two || trial.inf <= settings.residual_tolerance) {
        k.swap(k_try);
        r.swap(r_try);
        norms = trial;
        accepted = true;
        break;
      }
    }
    out.trace.push_back(norms.inf);
    if (!accepted) return out;
  }
}

std::vector<double> tonks_guess(double l, std::span<const int> doubled) {
  std::vector<double> k(doubled.size());
  for (std::size_t j = 0; j < doubled.size(); ++j) k[j] = kPi * doubled[j] / l;
  return k;
}

BetheState assemble(const ModelParams& params, const PartitionShape& shape, const QuantumNumbers& qn,
                    std::vector<double> k, const NewtonOutcome& outcome) {
  BetheState s{shape, qn, std::move(k)};
  s.energy = energy(shape, s.rapidities);
  s.momentum = momentum(shape, s.rapidities);
  s.gaudin_det = jacobian_det(params, shape, s.rapidities);
  s.residual_norm = outcome.residual_inf;
  s.iterations = outcome.iterations;
  return s;
}

// Candidate tuples via the free-boson quasi-momenta n_1 <= ... <= n_N,
// 2 I_j = 2 n_j + 2j + 1 - N (0-based j).
void collect_candidates(int n_particles, int position, long long min_n, long long budget, std::vector<int>& n,
                        std::vector<std::vector<int>>& out) {
  if (position == n_particles) {
    std::vector<int> doubled(static_cast<std::size_t>(n_particles));
    for (int j = 0; j < n_particles; ++j) doubled[j] = 2 * n[j] + 2 * j + 1 - n_particles;
    out.push_back(std::move(doubled));
    return;
  }
  // Remaining entries are >= the current one, so a positive entry v forces
  // (N - position) v^2 into the budget; negative entries only pay their own.
  const long long remaining = n_particles - position;
  const auto bound = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(budget))));
  for (long long v = std::max(min_n, -bound); v <= bound; ++v) {
    const long long cost = v > 0 ? remaining * v * v : v * v;
    if (cost > budget) {
      if (v > 0) break;
      continue;
    }
    n[position] = static_cast<int>(v);
    collect_candidates(n_particles, position + 1, v, budget - v * v, n, out);
  }
}

}  // namespace

void SolverSettings::validate() const {
  if (!(residual_tolerance > 0.0)) throw ContractViolation("residual_tolerance must be positive");
  if (max_iterations < 1) throw ContractViolation("max_iterations must be >= 1");
  if (max_halvings < 0) throw ContractViolation("max_halvings must be >= 0");
  if (continuation_steps < 0) throw ContractViolation("continuation_steps must be >= 0");
}

BetheState solve_state(const ModelParams& params, const PartitionShape& shape, const QuantumNumbers& quantum_numbers,
                       const SolverSettings& settings) {
  settings.validate();
  if (shape.total() != params.n_particles()) {
    throw ContractViolation(
        fmt::format("partition {} does not sum to N = {}", shape.to_string(), params.n_particles()));
  }
  if (quantum_numbers.size() != static_cast<std::size_t>(shape.dimension())) {
    throw InvalidQuantumNumbers(fmt::format("expected {} quantum numbers for partition {}, got {}",
                                            shape.dimension(), shape.to_string(), quantum_numbers.size()));
  }
  if (quantum_numbers.parity_offset() != params.parity_offset()) {
    throw InvalidQuantumNumbers(fmt::format("N = {} requires {} quantum numbers", params.n_particles(),
                                            params.parity_offset() ? "half-integer" : "integer"));
  }

  const double l = params.ring_length();
  const double g = params.coupling();
  const auto blocks = shape.blocks();
  const auto doubled = quantum_numbers.doubled();

  std::vector<double> k = tonks_guess(l, doubled);
  NewtonOutcome outcome = newton(l, g, blocks, doubled, k, settings);
  if (outcome.converged) return assemble(params, shape, quantum_numbers, std::move(k), outcome);

  // Continuation: g_i = g * 10^(6 (steps - i) / steps), warm-started.
  const int steps = settings.continuation_steps > 0 ? settings.continuation_steps : kDefaultContinuationSteps;
  k = tonks_guess(l, doubled);
  int total_iterations = 0;
  for (int i = 0; i <= steps; ++i) {
    const double gi = (i == steps) ? g : g * std::pow(10.0, kContinuationDecades * (steps - i) / steps);
    outcome = newton(l, gi, blocks, doubled, k, settings);
    total_iterations += outcome.iterations;
    if (!outcome.converged) {
      throw NonConvergence(fmt::format("Bethe equations for I = ({}) partition {} did not converge at g = {} "
                                       "(continuation step {}/{}, residual {:.3e})",
                                       quantum_numbers.to_string(), shape.to_string(), gi, i, steps,
                                       outcome.residual_inf),
                           outcome.trace);
    }
  }
  outcome.iterations = total_iterations;
  return assemble(params, shape, quantum_numbers, std::move(k), outcome);
}

BetheState solve_state(const ModelParams& params, const QuantumNumbers& quantum_numbers,
                       const SolverSettings& settings) {
  return solve_state(params, PartitionShape::singletons(params.n_particles()), quantum_numbers, settings);
}

double free_boson_energy(const ModelParams& params, const QuantumNumbers& quantum_numbers) {
  const int n = static_cast<int>(quantum_numbers.size());
  const double c = kTwoPi / params.ring_length();
  double e = 0.0;
  for (int j = 0; j < n; ++j) {
    const double quasi = 0.5 * (quantum_numbers.doubled()[j] - (2 * j + 1 - n));
    e += quasi * quasi;
  }
  return c * c * e;
}

double tonks_energy(const ModelParams& params, const QuantumNumbers& quantum_numbers) {
  const double c = kTwoPi / params.ring_length();
  return c * c * 0.25 * static_cast<double>(quantum_numbers.doubled_square_sum());
}

SpectrumTable enumerate_spectrum(const ModelParams& params, double e_max, const SolverSettings& settings) {
  settings.validate();
  if (!(e_max > 0.0) || !std::isfinite(e_max)) throw ContractViolation("spectrum cutoff must be positive");
  const int n = params.n_particles();
  const double c = kTwoPi / params.ring_length();

  // Integer budget for sum n_j^2, padded so rounding never drops a boundary state.
  const auto budget = static_cast<long long>(std::floor(e_max / (c * c) * (1.0 + 1e-12) + 1e-9));
  std::vector<std::vector<int>> raw;
  std::vector<int> scratch(static_cast<std::size_t>(n));
  collect_candidates(n, 0, std::numeric_limits<int>::min() / 4, budget, scratch, raw);

  std::vector<QuantumNumbers> candidates;
  candidates.reserve(raw.size());
  for (auto& d : raw) candidates.emplace_back(std::move(d), params.parity_offset());
  // Shell-then-lexicographic order.
  std::sort(candidates.begin(), candidates.end(), [](const QuantumNumbers& a, const QuantumNumbers& b) {
    const auto sa = a.doubled_square_sum();
    const auto sb = b.doubled_square_sum();
    return sa != sb ? sa < sb : a < b;
  });

  const PartitionShape shape = PartitionShape::singletons(n);
  std::vector<std::optional<BetheState>> solved(candidates.size());
  parallel_for(candidates.size(), settings.workers, [&](std::size_t i) {
    solved[i] = solve_state(params, shape, candidates[i], settings);
  });

  SpectrumTable table{params, {}, e_max};
  for (auto& s : solved) {
    if (s->energy <= e_max) table.levels.push_back(std::move(*s));
  }
  std::sort(table.levels.begin(), table.levels.end(), [](const BetheState& a, const BetheState& b) {
    return a.energy != b.energy ? a.energy < b.energy : a.quantum_numbers < b.quantum_numbers;
  });
  return table;
}

int staircase(const SpectrumTable& table, double e) {
  if (e > table.cutoff) {
    throw OutOfRange(fmt::format("staircase at E = {} exceeds the table cutoff {}", e, table.cutoff));
  }
  const auto it = std::upper_bound(table.levels.begin(), table.levels.end(), e,
                                   [](double value, const BetheState& s) { return value < s.energy; });
  return static_cast<int>(it - table.levels.begin());
}

std::vector<double> distinct_energies(const SpectrumTable& table, double tolerance) {
  std::vector<double> out;
  double anchor = 0.0;
  for (const auto& s : table.levels) {
    if (out.empty() || s.energy - anchor > tolerance * std::max(1.0, std::fabs(s.energy))) {
      out.push_back(s.energy);
      anchor = s.energy;
    }
  }
  return out;
}

}  // namespace lltrace
