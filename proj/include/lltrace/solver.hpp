#pragma once

#include <vector>

#include "lltrace/model.hpp"

namespace lltrace {

struct SolverSettings {
  double residual_tolerance = 1e-12;  // sup-norm of the residual
  int max_iterations = 200;
  int max_halvings = 40;       // backtracking: step factor 1/2 at most this often
  int continuation_steps = 0;  // 0: direct solve, with a 24-step retry on failure
  unsigned workers = 0;        // enumerate_spectrum only; 0 = default_workers()

  void validate() const;
};

/// Solves the Bethe equations of `shape` for the given block representatives.
///
/// Damped Newton from the Tonks point k_j = 2 pi I_j / L with Jacobian
/// 2 pi * gaudin_matrix and backtracking on the residual 2-norm. A failed
/// direct solve is retried by continuation in c = 1/g, starting 6 decades on
/// the Tonks side of the target coupling.
///
/// Throws InvalidQuantumNumbers if the tuple length or parity does not fit the
/// model, NonConvergence if the retry fails too.
BetheState solve_state(const ModelParams& params, const PartitionShape& shape, const QuantumNumbers& quantum_numbers,
                       const SolverSettings& settings = {});

/// Physical eigenstate (all multiplicities 1).
BetheState solve_state(const ModelParams& params, const QuantumNumbers& quantum_numbers,
                       const SolverSettings& settings = {});

struct SpectrumTable {
  ModelParams params;
  std::vector<BetheState> levels;  // ascending energy, ties broken by quantum numbers
  double cutoff = 0.0;
};

/// Lower bound on E(I) valid for every g > 0: the free-boson energy
/// (2pi/L)^2 sum_j (I_j - (2j - N - 1)/2)^2 reached as g -> 0+.
double free_boson_energy(const ModelParams& params, const QuantumNumbers& quantum_numbers);

/// Free-fermion (g -> infinity) energy (2pi/L)^2 sum_j I_j^2, an upper bound.
double tonks_energy(const ModelParams& params, const QuantumNumbers& quantum_numbers);

/// Every physical state with E <= e_max. Candidates are generated in shells
/// of increasing Tonks energy and kept while their free-boson lower bound is
/// below e_max, so the table is complete for any g > 0.
SpectrumTable enumerate_spectrum(const ModelParams& params, double e_max, const SolverSettings& settings = {});

/// Number of levels with energy <= e. Throws OutOfRange if e exceeds the cutoff.
int staircase(const SpectrumTable& table, double e);

/// Level energies merged where they coincide to within `tolerance` relative
/// to max(1, E); exact parity partners collapse onto one entry.
std::vector<double> distinct_energies(const SpectrumTable& table, double tolerance = 1e-9);

}  // namespace lltrace
