#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lltrace/commands.hpp"

using namespace lltrace;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("lltrace_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("solve writes a key-value record") {
    SolveOptions o;
    o.common.out_dir = scratch("solve");
    o.n_particles = 2;
    o.coupling = 10.0;
    o.doubled = {-1, 1};
    std::ostringstream log;
    REQUIRE(run_solve(o, log) == kExitOk);
    const auto text = slurp(o.common.out_dir / "solve.txt");
    CHECK(text.find("energy = 0.4420945490189") != std::string::npos);
    CHECK(text.find("quantum_numbers = -1/2 1/2") != std::string::npos);
    const auto manifest = slurp(o.common.out_dir / "solve_manifest.txt");
    CHECK(manifest.find("param.g = 10") != std::string::npos);
    CHECK(manifest.find("output.0 = solve.txt") != std::string::npos);
    CHECK(manifest.find("tool_version = ") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    std::ostringstream log;
    SolveOptions bad;
    bad.common.out_dir = scratch("bad");
    bad.n_particles = 2;
    bad.doubled = {0, 2};
    CHECK(run_solve(bad, log) == kExitUsage);
    bad.doubled = {1, 1};
    CHECK(run_solve(bad, log) == kExitUsage);
    bad.coupling = -1.0;
    bad.doubled = {-1, 1};
    CHECK(run_solve(bad, log) == kExitUsage);

    SolveOptions stuck;
    stuck.common.out_dir = scratch("stuck");
    stuck.n_particles = 4;
    stuck.coupling = 0.01;
    stuck.doubled = {-13, -11, 1, 21};
    stuck.solver.max_iterations = 1;
    stuck.solver.continuation_steps = 1;
    CHECK(run_solve(stuck, log) == kExitNumerical);

    SpectrumOptions sp;
    sp.common.out_dir = scratch("bad_spectrum");
    sp.n_particles = 0;
    CHECK(run_spectrum(sp, log) == kExitUsage);

    TraceOptions tr;
    tr.common.out_dir = scratch("bad_trace");
    tr.n_particles = 2;
    tr.partitions = {{1, 2}};
    CHECK(run_trace(tr, log) == kExitUsage);

    CrosscheckOptions cc;
    cc.common.out_dir = scratch("strict");
    cc.tolerance = -1.0;
    CHECK(run_crosscheck2(cc, log) == kExitCheckFailed);
  }

  TEST_CASE("spectrum table") {
    SpectrumOptions o;
    o.common.out_dir = scratch("spectrum");
    o.n_particles = 1;
    o.e_max = 4.0;
    std::ostringstream log;
    REQUIRE(run_spectrum(o, log) == kExitOk);
    const auto text = slurp(o.common.out_dir / "spectrum.csv");
    CHECK(text == "index,energy,momentum,quantum_numbers\n0,0,0,0\n1,1,-1,-1\n2,1,1,1\n3,4,-2,-2\n4,4,2,2\n");
  }

  TEST_CASE("trace with levels overlay") {
    TraceOptions o;
    o.common.out_dir = scratch("trace");
    o.n_particles = 2;
    o.coupling = 10.0;
    o.grid = GridSpec{0.5, 3.0, 0.05};
    o.levels_overlay = true;
    o.partitions = {{1, 1}};
    std::ostringstream log;
    REQUIRE(run_trace(o, log) == kExitOk);
    const auto data = slurp(o.common.out_dir / "trace.csv");
    CHECK(first_line(data) == "energy,smooth,oscillatory,total");
    CHECK(std::count(data.begin(), data.end(), '\n') == 52);
    CHECK(first_line(slurp(o.common.out_dir / "trace_levels.csv")) == "energy,quantum_numbers");
    const auto manifest = slurp(o.common.out_dir / "trace_manifest.txt");
    CHECK(manifest.find("param.parts = 1+1") != std::string::npos);
    CHECK(manifest.find("output.1 = trace_levels.csv") != std::string::npos);
  }

  TEST_CASE("trace output is identical for different worker counts") {
    std::string previous;
    for (unsigned w : {1u, 3u}) {
      TraceOptions o;
      o.common.out_dir = scratch("trace_w" + std::to_string(w));
      o.common.workers = w;
      o.n_particles = 3;
      o.coupling = 10.0;
      o.m_max = 3;
      o.grid = GridSpec{1.0, 4.0, 0.1};
      o.nodes_per_angle = 16;
      std::ostringstream log;
      REQUIRE(run_trace(o, log) == kExitOk);
      const auto data = slurp(o.common.out_dir / "trace.csv");
      if (!previous.empty()) CHECK(data == previous);
      previous = data;
    }
  }

  TEST_CASE("resurgence, crosscheck and combinatorics reports") {
    std::ostringstream log;
    ResurgenceOptions r;
    r.common.out_dir = scratch("resurgence");
    REQUIRE(run_resurgence(r, log) == kExitOk);
    const auto table = slurp(r.common.out_dir / "resurgence.csv");
    CHECK(first_line(table) == "m_max,mean_osc_between_levels,weyl_mean,gap");
    CHECK(std::count(table.begin(), table.end(), '\n') == 4);

    CrosscheckOptions c;
    c.common.out_dir = scratch("crosscheck");
    REQUIRE(run_crosscheck2(c, log) == kExitOk);
    CHECK(slurp(c.common.out_dir / "crosscheck2.txt").find("result = PASS") != std::string::npos);

    CombinatoricsOptions k;
    k.common.out_dir = scratch("combinatorics");
    REQUIRE(run_verify_combinatorics(k, log) == kExitOk);
    CHECK(slurp(k.common.out_dir / "combinatorics.txt").find("result = PASS") != std::string::npos);
  }
}
