#include "lltrace/commands.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "lltrace/errors.hpp"
#include "lltrace/output.hpp"
#include "lltrace/partitions.hpp"
#include "lltrace/weyl.hpp"

namespace lltrace {

namespace {

using Parameters = std::vector<std::pair<std::string, std::string>>;

std::string join_numbers(std::span<const double> values, const char* separator = " ") {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += separator;
    out += format_number(values[i]);
  }
  return out;
}

void add_common(Parameters& p, const CommonOptions& c) {
  p.emplace_back("ring_length", format_number(c.ring_length));
  p.emplace_back("out_dir", c.out_dir.string());
}

// Runs a command body, maps library errors onto exit codes and writes the
// manifest listing every file the body produced.
template <class Body>
int run_command(const std::string& name, const CommonOptions& common, Parameters parameters, std::ostream& log,
                Body&& body) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> outputs;
  const auto emit = [&](const std::string& file, const std::string& content) {
    write_text_file(common.out_dir / file, content);
    outputs.push_back(file);
  };

  int code = kExitOk;
  try {
    code = body(emit);
  } catch (const NonConvergence& e) {
    fmt::print(log, "{}: numerical failure: {}\n", name, e.what());
    return kExitNumerical;
  } catch (const InvalidQuantumNumbers& e) {
    fmt::print(log, "{}: invalid quantum numbers: {}\n", name, e.what());
    return kExitUsage;
  } catch (const ContractViolation& e) {
    fmt::print(log, "{}: invalid arguments: {}\n", name, e.what());
    return kExitUsage;
  } catch (const OutOfRange& e) {
    fmt::print(log, "{}: out of range: {}\n", name, e.what());
    return kExitUsage;
  } catch (const WrongParticleNumber& e) {
    fmt::print(log, "{}: {}\n", name, e.what());
    return kExitUsage;
  } catch (const NonPositiveEnergy& e) {
    fmt::print(log, "{}: {}\n", name, e.what());
    return kExitUsage;
  }

  RunManifest manifest;
  manifest.command = name;
  manifest.parameters = std::move(parameters);
  manifest.tool_version = LLTRACE_VERSION;
  manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  manifest.outputs = outputs;
  const std::string manifest_name = name + "_manifest.txt";
  manifest.outputs.push_back(manifest_name);
  write_text_file(common.out_dir / manifest_name, manifest.to_string());
  return code;
}

}  // namespace

std::string render_state(const ModelParams& params, const BetheState& state) {
  KeyValueDocument doc;
  doc.add("n_particles", params.n_particles());
  doc.add("coupling", params.coupling());
  doc.add("ring_length", params.ring_length());
  doc.add("partition", state.shape.to_string());
  std::string doubled;
  for (std::size_t j = 0; j < state.quantum_numbers.size(); ++j) {
    if (j) doubled += ' ';
    doubled += fmt::format("{}", state.quantum_numbers.doubled()[j]);
  }
  doc.add("quantum_numbers_doubled", doubled);
  doc.add("quantum_numbers", state.quantum_numbers.to_string());
  doc.add("rapidities", join_numbers(state.rapidities));
  doc.add("energy", state.energy);
  doc.add("momentum", state.momentum);
  doc.add("gaudin_det", state.gaudin_det);
  doc.add("residual_norm", state.residual_norm);
  doc.add("iterations", state.iterations);
  return doc.to_string();
}

std::string render_spectrum(const SpectrumTable& table) {
  CsvTable csv({"index", "energy", "momentum", "quantum_numbers"});
  for (std::size_t i = 0; i < table.levels.size(); ++i) {
    const auto& s = table.levels[i];
    csv.add_row({fmt::format("{}", i), format_number(s.energy), format_number(s.momentum), s.quantum_numbers.to_string()});
  }
  return csv.to_string();
}

std::string render_density(const DensityGrid& grid) {
  CsvTable csv({"energy", "smooth", "oscillatory", "total"});
  for (std::size_t i = 0; i < grid.energies.size(); ++i) {
    csv.add_row({format_number(grid.energies[i]), format_number(grid.values_smooth[i]), format_number(grid.values_osc[i]),
                 format_number(grid.values_total[i])});
  }
  return csv.to_string();
}

std::string render_levels(const SpectrumTable& table) {
  CsvTable csv({"energy", "quantum_numbers"});
  for (const auto& s : table.levels) csv.add_row({format_number(s.energy), s.quantum_numbers.to_string()});
  return csv.to_string();
}

std::string render_resurgence(std::span<const ResurgenceRow> rows) {
  CsvTable csv({"m_max", "mean_osc_between_levels", "weyl_mean", "gap"});
  for (const auto& r : rows) {
    csv.add_row({fmt::format("{}", r.m_max), format_number(r.mean_osc_between_levels), format_number(r.weyl_mean),
                 format_number(r.gap)});
  }
  return csv.to_string();
}

std::string render_counting(std::span<const double> energies, std::span<const double> semiclassical,
                            std::span<const int> exact) {
  CsvTable csv({"energy", "semiclassical_count", "exact_count"});
  for (std::size_t i = 0; i < energies.size(); ++i) {
    csv.add_row({format_number(energies[i]), format_number(semiclassical[i]), fmt::format("{}", exact[i])});
  }
  return csv.to_string();
}

int run_solve(const SolveOptions& o, std::ostream& log) {
  Parameters p{{"n", fmt::format("{}", o.n_particles)},
               {"g", format_number(o.coupling)},
               {"i_doubled", fmt::format("{}", fmt::join(o.doubled, ","))},
               {"tolerance", format_number(o.solver.residual_tolerance)},
               {"max_iterations", fmt::format("{}", o.solver.max_iterations)}};
  add_common(p, o.common);
  return run_command("solve", o.common, std::move(p), log, [&](auto&& emit) {
    const ModelParams params(o.n_particles, o.coupling, o.common.ring_length);
    const QuantumNumbers qn(o.doubled, params.parity_offset());
    const auto state = solve_state(params, qn, o.solver);
    emit("solve.txt", render_state(params, state));
    fmt::print(log, "E = {} after {} iterations\n", format_number(state.energy), state.iterations);
    return kExitOk;
  });
}

int run_spectrum(const SpectrumOptions& o, std::ostream& log) {
  Parameters p{{"n", fmt::format("{}", o.n_particles)}, {"g", format_number(o.coupling)}, {"emax", format_number(o.e_max)}};
  add_common(p, o.common);
  return run_command("spectrum", o.common, std::move(p), log, [&](auto&& emit) {
    const ModelParams params(o.n_particles, o.coupling, o.common.ring_length);
    SolverSettings settings;
    settings.workers = o.common.workers;
    const auto table = enumerate_spectrum(params, o.e_max, settings);
    emit("spectrum.csv", render_spectrum(table));
    fmt::print(log, "{} levels with E <= {}\n", table.levels.size(), format_number(o.e_max));
    return kExitOk;
  });
}

int run_trace(const TraceOptions& o, std::ostream& log) {
  std::vector<std::string> part_labels;
  for (const auto& part : o.partitions) part_labels.push_back(fmt::format("{}", fmt::join(part, "+")));
  Parameters p{{"n", fmt::format("{}", o.n_particles)},
               {"g", format_number(o.coupling)},
               {"mmax", fmt::format("{}", o.m_max)},
               {"emin", format_number(o.grid.e_min)},
               {"emax", format_number(o.grid.e_max)},
               {"step", format_number(o.grid.step)},
               {"parts", part_labels.empty() ? "all" : fmt::format("{}", fmt::join(part_labels, " "))},
               {"levels_overlay", o.levels_overlay ? "true" : "false"},
               {"nodes_per_angle", fmt::format("{}", o.nodes_per_angle)}};
  add_common(p, o.common);
  return run_command("trace", o.common, std::move(p), log, [&](auto&& emit) {
    const ModelParams params(o.n_particles, o.coupling, o.common.ring_length);
    TraceSettings settings;
    settings.m_max = o.m_max;
    settings.workers = o.common.workers;
    for (const auto& part : o.partitions) settings.partitions.emplace_back(part);
    QuadratureSpec quad;
    quad.nodes_per_angle = o.nodes_per_angle;
    const auto grid = rho_total(params, o.grid, settings, quad);
    emit("trace.csv", render_density(grid));
    if (o.levels_overlay) {
      SolverSettings solver;
      solver.workers = o.common.workers;
      emit("trace_levels.csv", render_levels(enumerate_spectrum(params, o.grid.e_max, solver)));
    }
    fmt::print(log, "{} grid points, {} local maxima\n", grid.energies.size(), find_peaks(grid).size());
    return kExitOk;
  });
}

int run_resurgence(const ResurgenceOptions& o, std::ostream& log) {
  Parameters p{{"n", fmt::format("{}", o.n_particles)},
               {"g", format_number(o.coupling)},
               {"ladder", fmt::format("{}", fmt::join(o.ladder, ","))},
               {"window_lo", format_number(o.window_lo)},
               {"window_hi", format_number(o.window_hi)}};
  add_common(p, o.common);
  return run_command("resurgence", o.common, std::move(p), log, [&](auto&& emit) {
    const ModelParams params(o.n_particles, o.coupling, o.common.ring_length);
    TraceSettings settings;
    settings.workers = o.common.workers;
    const auto rows = resurgence_profile(params, o.ladder, o.window_lo, o.window_hi, settings);
    emit("resurgence.csv", render_resurgence(rows));
    for (const auto& r : rows) {
      fmt::print(log, "m_max = {:3d}  mean osc = {:+.6f}  weyl = {:.6f}  gap = {:.6f}\n", r.m_max,
                 r.mean_osc_between_levels, r.weyl_mean, r.gap);
    }
    return kExitOk;
  });
}

int run_crosscheck2(const CrosscheckOptions& o, std::ostream& log) {
  Parameters p{{"g", format_number(o.coupling)}, {"emax", format_number(o.e_max)}, {"tolerance", format_number(o.tolerance)}};
  add_common(p, o.common);
  return run_command("crosscheck2", o.common, std::move(p), log, [&](auto&& emit) {
    const ModelParams params(2, o.coupling, o.common.ring_length);
    const auto report = compare_with_bethe(params, o.e_max, o.tolerance, o.common.workers);
    KeyValueDocument doc;
    doc.add("result", report.passed ? "PASS" : "FAIL");
    doc.add("bethe_levels", static_cast<long long>(report.bethe_levels));
    doc.add("secular_levels", static_cast<long long>(report.secular_levels));
    doc.add("max_deviation", report.max_deviation);
    doc.add("tolerance", report.tolerance);
    emit("crosscheck2.txt", doc.to_string());
    fmt::print(log, "crosscheck2 {}: {} levels, max deviation {:.3e}\n", report.passed ? "PASS" : "FAIL",
               report.bethe_levels, report.max_deviation);
    return report.passed ? kExitOk : kExitCheckFailed;
  });
}

int run_verify_combinatorics(const CombinatoricsOptions& o, std::ostream& log) {
  Parameters p{{"nmax", fmt::format("{}", o.n_max)}, {"rmax", fmt::format("{}", o.r_max)}};
  add_common(p, o.common);
  return run_command("verify-combinatorics", o.common, std::move(p), log, [&](auto&& emit) {
    KeyValueDocument doc;
    int failures = 0;
    for (int n = 1; n <= o.n_max; ++n) {
      int failed_r = 0;
      for (int r = 1; r <= o.r_max; ++r) failed_r += binomial_identity_check(n, r) ? 0 : 1;
      failures += failed_r;
      doc.add(fmt::format("binomial.n{}", n), failed_r == 0 ? "PASS" : fmt::format("FAIL ({} values of r)", failed_r));
    }
    doc.add("result", failures == 0 ? "PASS" : "FAIL");
    emit("combinatorics.txt", doc.to_string());
    fmt::print(log, "verify-combinatorics {}\n", failures == 0 ? "PASS" : "FAIL");
    return failures == 0 ? kExitOk : kExitCheckFailed;
  });
}

}  // namespace lltrace
