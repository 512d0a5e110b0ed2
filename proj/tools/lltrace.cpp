// lltrace: command-line driver. Exit codes: 0 ok, 1 check failed,
// 2 usage error, 3 numerical failure.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lltrace/commands.hpp"
#include "lltrace/errors.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const int value = std::stoi(item, &used);
    if (used != item.size() && item.find_first_not_of(' ', used) != std::string::npos) {
      throw std::invalid_argument("bad integer '" + item + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

void add_common(CLI::App* cmd, lltrace::CommonOptions& common) {
  cmd->add_option("--l", common.ring_length, "ring length L")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", common.workers, "worker threads (0: LLTRACE_THREADS or hardware)");
  cmd->add_option("--out", common.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semiclassical trace formula for the Lieb-Liniger ring"};
  app.set_version_flag("--version", LLTRACE_VERSION);
  app.require_subcommand(1);

  lltrace::SolveOptions solve;
  std::string solve_i;
  auto* c_solve = app.add_subcommand("solve", "solve the Bethe equations for one state");
  c_solve->add_option("--n", solve.n_particles, "particle number")->required();
  c_solve->add_option("--g", solve.coupling, "coupling")->required();
  c_solve->add_option("--i", solve_i, "doubled quantum numbers 2I_j, comma-separated")->required();
  c_solve->add_option("--tol", solve.solver.residual_tolerance, "residual tolerance");
  add_common(c_solve, solve.common);

  lltrace::SpectrumOptions spectrum;
  auto* c_spectrum = app.add_subcommand("spectrum", "all levels below an energy cutoff");
  c_spectrum->add_option("--n", spectrum.n_particles)->required();
  c_spectrum->add_option("--g", spectrum.coupling)->required();
  c_spectrum->add_option("--emax", spectrum.e_max)->required();
  add_common(c_spectrum, spectrum.common);

  lltrace::TraceOptions trace;
  std::vector<std::string> trace_parts;
  auto* c_trace = app.add_subcommand("trace", "smooth and oscillatory density of states on a grid");
  c_trace->add_option("--n", trace.n_particles)->required();
  c_trace->add_option("--g", trace.coupling)->required();
  c_trace->add_option("--mmax", trace.m_max);
  c_trace->add_option("--emin", trace.grid.e_min);
  c_trace->add_option("--emax", trace.grid.e_max);
  c_trace->add_option("--step", trace.grid.step);
  c_trace->add_option("--parts", trace_parts, "partition filter, e.g. --parts 2,1 --parts 1,1,1");
  c_trace->add_flag("--levels-overlay", trace.levels_overlay, "also write the exact levels");
  c_trace->add_option("--nodes", trace.nodes_per_angle, "Gauss-Legendre nodes per angle");
  add_common(c_trace, trace.common);

  lltrace::ResurgenceOptions resurgence;
  std::string ladder;
  auto* c_res = app.add_subcommand("resurgence", "mean oscillatory density between levels vs winding cutoff");
  c_res->add_option("--n", resurgence.n_particles);
  c_res->add_option("--g", resurgence.coupling);
  c_res->add_option("--ladder", ladder, "comma-separated m_max values");
  c_res->add_option("--emin", resurgence.window_lo);
  c_res->add_option("--emax", resurgence.window_hi);
  add_common(c_res, resurgence.common);

  lltrace::CrosscheckOptions cross;
  auto* c_cross = app.add_subcommand("crosscheck2", "N = 2 Bethe levels vs the scalar secular equation");
  c_cross->add_option("--g", cross.coupling);
  c_cross->add_option("--emax", cross.e_max);
  c_cross->add_option("--tol", cross.tolerance);
  add_common(c_cross, cross.common);

  lltrace::CombinatoricsOptions comb;
  auto* c_comb = app.add_subcommand("verify-combinatorics", "exact check of the ordered-sum coefficients");
  c_comb->add_option("--nmax", comb.n_max);
  c_comb->add_option("--rmax", comb.r_max);
  add_common(c_comb, comb.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? lltrace::kExitOk : lltrace::kExitUsage;
  }

  try {
    if (*c_solve) {
      solve.doubled = parse_int_list(solve_i);
      return lltrace::run_solve(solve, std::cerr);
    }
    if (*c_spectrum) return lltrace::run_spectrum(spectrum, std::cerr);
    if (*c_trace) {
      for (const auto& p : trace_parts) trace.partitions.push_back(parse_int_list(p));
      return lltrace::run_trace(trace, std::cerr);
    }
    if (*c_res) {
      if (!ladder.empty()) resurgence.ladder = parse_int_list(ladder);
      return lltrace::run_resurgence(resurgence, std::cerr);
    }
    if (*c_cross) return lltrace::run_crosscheck2(cross, std::cerr);
    if (*c_comb) return lltrace::run_verify_combinatorics(comb, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return lltrace::kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return lltrace::kExitUsage;
  } catch (const lltrace::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lltrace::kExitUsage;
  }
  return lltrace::kExitUsage;
}
