#pragma once

// Experiment drivers behind the lltrace command-line tool. Each run_* writes
// its data files plus a <command>_manifest.txt into out_dir and returns the
// process exit code: 0 success, 1 check failed, 2 usage error, 3 numerical
// failure.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lltrace/model.hpp"
#include "lltrace/solver.hpp"
#include "lltrace/trace.hpp"
#include "lltrace/two_body.hpp"

namespace lltrace {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitNumerical = 3 };

struct CommonOptions {
  double ring_length = kTwoPi;
  unsigned workers = 0;
  std::filesystem::path out_dir = ".";
};

struct SolveOptions {
  CommonOptions common;
  int n_particles = 1;
  double coupling = 1.0;
  std::vector<int> doubled;  // 2 I_j
  SolverSettings solver;
};

struct SpectrumOptions {
  CommonOptions common;
  int n_particles = 1;
  double coupling = 1.0;
  double e_max = 10.0;
};

struct TraceOptions {
  CommonOptions common;
  int n_particles = 1;
  double coupling = 1.0;
  int m_max = 10;
  GridSpec grid;
  std::vector<std::vector<int>> partitions;  // empty: all
  bool levels_overlay = false;
  int nodes_per_angle = 64;
};

struct ResurgenceOptions {
  CommonOptions common;
  int n_particles = 2;
  double coupling = 10.0;
  std::vector<int> ladder{3, 10, 20};
  double window_lo = 5.0;
  double window_hi = 30.0;
};

struct CrosscheckOptions {
  CommonOptions common;
  double coupling = 10.0;
  double e_max = 30.0;
  double tolerance = 1e-9;
};

struct CombinatoricsOptions {
  CommonOptions common;
  int n_max = 10;
  int r_max = 30;
};

int run_solve(const SolveOptions& options, std::ostream& log);
int run_spectrum(const SpectrumOptions& options, std::ostream& log);
int run_trace(const TraceOptions& options, std::ostream& log);
int run_resurgence(const ResurgenceOptions& options, std::ostream& log);
int run_crosscheck2(const CrosscheckOptions& options, std::ostream& log);
int run_verify_combinatorics(const CombinatoricsOptions& options, std::ostream& log);

// Renderers shared by the commands and the determinism checks.
std::string render_state(const ModelParams& params, const BetheState& state);
std::string render_spectrum(const SpectrumTable& table);
std::string render_density(const DensityGrid& grid);
std::string render_levels(const SpectrumTable& table);
std::string render_resurgence(std::span<const ResurgenceRow> rows);
std::string render_counting(std::span<const double> energies, std::span<const double> semiclassical,
                            std::span<const int> exact);

}  // namespace lltrace
