#include "lltrace/trace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "lltrace/errors.hpp"
#include "lltrace/parallel.hpp"
#include "lltrace/partitions.hpp"
#include "lltrace/quadrature.hpp"
#include "lltrace/solver.hpp"
#include "lltrace/summation.hpp"

namespace lltrace {

namespace {

constexpr int kPanelNodes = 16;

// Everything about one winding vector that does not depend on the energy.
struct WindingTerm {
  std::array<int, kMaxDimension> m{};
  std::array<double, kMaxDimension> coefficient{};  // L M_i / (2 a_i)
  double action = 0.0;                              // S_M
  long long signed_sum = 0;
};

struct TermValue {
  double amplitude;
  double phase;
};

// Energy-independent data of a partition term.
struct PartitionContext {
  std::vector<int> blocks;
  int d = 0;
  double ring_length = 0.0;
  double coupling = 0.0;
  int parity = 0;
  double norm = 0.0;  // (pi^{d-1} / prod a_i)^{1/2}
};

PartitionContext make_context(const PartitionShape& shape, const ModelParams& params) {
  PartitionContext c;
  c.blocks.assign(shape.blocks().begin(), shape.blocks().end());
  c.d = shape.dimension();
  c.ring_length = params.ring_length();
  c.coupling = params.coupling();
  c.parity = params.parity_offset();
  double block_product = 1.0;
  for (int b : c.blocks) block_product *= b;
  c.norm = std::sqrt(std::pow(kPi, c.d - 1) / block_product);
  return c;
}

WindingTerm make_term(const PartitionContext& c, std::span<const int> m) {
  WindingTerm t;
  for (int i = 0; i < c.d; ++i) {
    t.m[i] = m[i];
    t.coefficient[i] = c.ring_length * m[i] / (2.0 * c.blocks[i]);
    const double lm = c.ring_length * m[i];
    t.action += lm * lm / (4.0 * c.blocks[i]);
    t.signed_sum += m[i];
  }
  return t;
}

void stationary_into(const PartitionContext& c, const WindingTerm& t, double e, std::span<double> k) {
  const double scale = std::sqrt(e / t.action);
  for (int i = 0; i < c.d; ++i) k[i] = t.coefficient[i] * scale;
}

void phases_into(const PartitionContext& c, std::span<const double> k, std::span<double> phi) {
  for (int i = 0; i < c.d; ++i) phi[i] = 0.0;
  for (int i = 0; i < c.d; ++i) {
    for (int j = i + 1; j < c.d; ++j) {
      const double t = std::atan((k[i] - k[j]) / c.coupling);
      phi[i] += 2.0 * c.blocks[j] * t;
      phi[j] -= 2.0 * c.blocks[i] * t;
    }
  }
}

TermValue evaluate_term(const PartitionContext& c, const WindingTerm& t, double e) {
  std::array<double, kMaxDimension> k{};
  std::array<double, kMaxDimension> phi{};
  const std::span<double> ks(k.data(), static_cast<std::size_t>(c.d));
  const std::span<double> ps(phi.data(), static_cast<std::size_t>(c.d));
  stationary_into(c, t, e, ks);
  phases_into(c, ks, ps);
  double winding_phase = 0.0;
  for (int i = 0; i < c.d; ++i) winding_phase += t.m[i] * phi[i];
  const double det = gaudin_determinant(c.ring_length, c.coupling, c.blocks, ks);
  const double amp = c.norm * std::pow(std::pow(e, c.d - 3) / std::pow(t.action, c.d - 1), 0.25) * det;
  const double phase = 2.0 * std::sqrt(t.action * e) - 0.25 * kPi * (c.d - 1) + winding_phase +
                       kPi * c.parity * static_cast<double>(t.signed_sum);
  return {amp, phase};
}

std::vector<WindingTerm> make_terms(const PartitionContext& c, int m_max) {
  std::vector<WindingTerm> terms;
  for (const auto& w : winding_enumerate(c.d, m_max)) terms.push_back(make_term(c, w.components()));
  return terms;
}

void check_shape(const PartitionShape& shape, const ModelParams& params) {
  if (shape.total() != params.n_particles()) {
    throw ContractViolation(fmt::format("partition {} does not sum to N = {}", shape.to_string(), params.n_particles()));
  }
}

void check_winding(const PartitionShape& shape, const WindingVector& m) {
  if (m.size() != static_cast<std::size_t>(shape.dimension())) {
    throw ContractViolation(
        fmt::format("winding vector of length {} for partition {}", m.size(), shape.to_string()));
  }
}

void check_energy(double e) {
  if (!(e > 0.0)) throw NonPositiveEnergy(fmt::format("trace formula needs e > 0, got {}", e));
}

double sum_terms(const PartitionContext& c, const std::vector<WindingTerm>& terms, double e) {
  CompensatedSum total;
  for (const auto& t : terms) {
    const TermValue v = evaluate_term(c, t, e);
    total += v.amplitude * std::cos(v.phase);
  }
  return total.value();
}

struct PreparedPartition {
  PartitionShape shape;
  PartitionContext context;
  std::vector<WindingTerm> terms;
};

std::vector<PreparedPartition> prepare(const ModelParams& params, const TraceSettings& settings) {
  std::vector<PartitionShape> shapes = settings.partitions;
  if (shapes.empty()) shapes = enumerate_partitions(params.n_particles()).shapes;
  std::vector<PreparedPartition> out;
  for (auto& s : shapes) {
    check_shape(s, params);
    PartitionContext c = make_context(s, params);
    auto terms = make_terms(c, settings.m_max);
    out.push_back({std::move(s), std::move(c), std::move(terms)});
  }
  return out;
}

double osc_at(const std::vector<PreparedPartition>& parts, double e) {
  CompensatedSum total;
  for (const auto& p : parts) total += p.shape.coefficient_value() * sum_terms(p.context, p.terms, e);
  return total.value();
}

double smooth_at(const ModelParams& params, const std::vector<PreparedPartition>& parts, double e,
                 const QuadratureSpec& quad) {
  CompensatedSum total;
  for (const auto& p : parts) total += p.shape.coefficient_value() * weyl_density_partition(params, p.shape, e, quad);
  return total.value();
}

// Upper bound on |dR_M/ds| over all terms, s = sqrt(e).
double max_phase_rate(const PartitionContext& c, const std::vector<WindingTerm>& terms) {
  double rate = 0.0;
  for (const auto& t : terms) {
    const double root = std::sqrt(t.action);
    double scattering = 0.0;
    for (int i = 0; i < c.d; ++i) {
      for (int j = 0; j < c.d; ++j) {
        scattering += 2.0 * std::abs(t.m[i]) * c.blocks[j] *
                      std::fabs(t.coefficient[i] - t.coefficient[j]) / (root * c.coupling);
      }
    }
    rate = std::max(rate, 2.0 * root + scattering);
  }
  return rate;
}

// integral over [s_lo, s_hi] of 2 s * rho_osc_a(s^2), composite Gauss-Legendre.
double osc_integral_panels(const PartitionContext& c, const std::vector<WindingTerm>& terms, double rate,
                           double s_lo, double s_hi) {
  if (s_hi <= s_lo) return 0.0;
  const auto& gl = gauss_legendre(kPanelNodes);
  const auto panels = static_cast<long long>(std::ceil((s_hi - s_lo) * rate / kTwoPi)) + 1;
  const double h = (s_hi - s_lo) / static_cast<double>(panels);
  CompensatedSum total;
  for (long long p = 0; p < panels; ++p) {
    const double a = s_lo + h * static_cast<double>(p);
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double s = a + 0.5 * h * (gl.nodes[q] + 1.0);
      total += 0.5 * h * gl.weights[q] * 2.0 * s * sum_terms(c, terms, s * s);
    }
  }
  return total.value();
}

// Closed form for a single-block partition: Phi = 0, det G = L/2pi and the
// phase is linear in s, so integral_0^{s} 2 s' A cos R ds' is elementary.
// Winding M gives (L / (pi sqrt(a))) sin(w_M s + pi delta M) / w_M with
// w_M = |M| w_1, hence M and -M coincide. sin(m w_1 s) comes from a unit
// rotation reseeded exactly every 64 steps.
double osc_integral_single_block(const PartitionContext& c, int m_max, double s) {
  const double w1 = c.ring_length / std::sqrt(static_cast<double>(c.blocks[0]));
  const double weight = 2.0 * c.ring_length / (kPi * std::sqrt(static_cast<double>(c.blocks[0])));
  const double theta = w1 * s;
  const double step_c = std::cos(theta), step_s = std::sin(theta);
  CompensatedSum total;
  double zc = 1.0, zs = 0.0;
  for (int m = 1; m <= m_max; ++m) {
    if (m % 64 == 1) {
      zc = std::cos(m * theta);
      zs = std::sin(m * theta);
    } else {
      const double nc = zc * step_c - zs * step_s;
      zs = zs * step_c + zc * step_s;
      zc = nc;
    }
    const double v = weight * zs / (m * w1);
    total += (c.parity != 0 && m % 2 != 0) ? -v : v;
  }
  return total.value();
}

}  // namespace

WindingVector::WindingVector(std::vector<int> components) : components_(std::move(components)) {
  if (components_.empty()) throw ContractViolation("winding vector must have at least one component");
  bool nonzero = false;
  for (int m : components_) {
    signed_sum_ += m;
    nonzero = nonzero || m != 0;
  }
  if (!nonzero) throw ContractViolation("the zero winding vector is excluded");
}

WindingVector WindingVector::negated() const {
  std::vector<int> out(components_);
  for (int& m : out) m = -m;
  return WindingVector(std::move(out));
}

void TraceSettings::validate() const {
  if (m_max < 1) throw ContractViolation(fmt::format("m_max must be >= 1, got {}", m_max));
}

std::size_t GridSpec::size() const {
  return static_cast<std::size_t>(std::floor((e_max - e_min) / step + 0.5)) + 1;
}

void GridSpec::validate() const {
  if (!(e_min > 0.0)) throw ContractViolation("grid e_min must be positive");
  if (!(e_max >= e_min)) throw ContractViolation("grid e_max must be >= e_min");
  if (!(step > 0.0)) throw ContractViolation("grid step must be positive");
}

std::vector<WindingVector> winding_enumerate(int d, int m_max) {
  if (d < 1 || d > kMaxDimension) throw ContractViolation(fmt::format("winding dimension {} out of range", d));
  if (m_max < 1) throw ContractViolation(fmt::format("m_max must be >= 1, got {}", m_max));
  std::vector<WindingVector> out;
  std::vector<int> m(static_cast<std::size_t>(d), -m_max);
  while (true) {
    if (std::any_of(m.begin(), m.end(), [](int x) { return x != 0; })) out.emplace_back(m);
    int pos = d - 1;
    while (pos >= 0 && m[pos] == m_max) m[pos--] = -m_max;
    if (pos < 0) break;
    ++m[pos];
  }
  return out;
}

double scaled_action(const PartitionShape& shape, const WindingVector& m, const ModelParams& params) {
  check_winding(shape, m);
  return make_term(make_context(shape, params), m.components()).action;
}

std::vector<double> stationary_rapidities(const PartitionShape& shape, const WindingVector& m, double e,
                                          const ModelParams& params) {
  check_winding(shape, m);
  check_energy(e);
  const auto c = make_context(shape, params);
  std::vector<double> k(static_cast<std::size_t>(c.d));
  stationary_into(c, make_term(c, m.components()), e, k);
  return k;
}

std::vector<double> scattering_phase(const PartitionShape& shape, const WindingVector& m, double e,
                                     const ModelParams& params) {
  const auto k = stationary_rapidities(shape, m, e, params);
  const auto c = make_context(shape, params);
  std::vector<double> phi(k.size());
  phases_into(c, k, phi);
  return phi;
}

double amplitude(const PartitionShape& shape, const WindingVector& m, double e, const ModelParams& params) {
  check_winding(shape, m);
  check_energy(e);
  const auto c = make_context(shape, params);
  return evaluate_term(c, make_term(c, m.components()), e).amplitude;
}

double total_phase(const PartitionShape& shape, const WindingVector& m, double e, const ModelParams& params) {
  check_winding(shape, m);
  check_energy(e);
  const auto c = make_context(shape, params);
  return evaluate_term(c, make_term(c, m.components()), e).phase;
}

double rho_osc_partition(const PartitionShape& shape, double e, const ModelParams& params,
                         const TraceSettings& settings) {
  settings.validate();
  check_shape(shape, params);
  check_energy(e);
  const auto c = make_context(shape, params);
  return sum_terms(c, make_terms(c, settings.m_max), e);
}

double rho_osc_total(const ModelParams& params, double e, const TraceSettings& settings) {
  settings.validate();
  check_energy(e);
  return osc_at(prepare(params, settings), e);
}

DensityGrid rho_total(const ModelParams& params, const GridSpec& grid, const TraceSettings& settings,
                      const QuadratureSpec& quad) {
  settings.validate();
  grid.validate();
  quad.validate();
  const auto parts = prepare(params, settings);

  DensityGrid out;
  out.e_min = grid.e_min;
  out.e_max = grid.e_max;
  out.step = grid.step;
  const std::size_t n = grid.size();
  out.energies.resize(n);
  out.values_smooth.resize(n);
  out.values_osc.resize(n);
  out.values_total.resize(n);
  parallel_for(n, settings.workers, [&](std::size_t i) {
    const double e = grid.at(i);
    out.energies[i] = e;
    out.values_smooth[i] = smooth_at(params, parts, e, quad);
    out.values_osc[i] = osc_at(parts, e);
    out.values_total[i] = out.values_smooth[i] + out.values_osc[i];
  });
  return out;
}

std::vector<double> semiclassical_count(const ModelParams& params, std::span<const double> energies,
                                        const TraceSettings& settings, const QuadratureSpec& quad) {
  settings.validate();
  quad.validate();
  for (std::size_t i = 0; i < energies.size(); ++i) {
    check_energy(energies[i]);
    if (i > 0 && energies[i] < energies[i - 1]) throw ContractViolation("semiclassical_count needs ascending energies");
  }
  const auto parts = prepare(params, settings);

  // Smooth part: cumulative adaptive integration in s = sqrt(e').
  std::vector<double> smooth(energies.size());
  {
    const auto integrand = [&](double s) { return 2.0 * s * smooth_at(params, parts, s * s, quad); };
    double s_prev = 0.0;
    double running = 0.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
      const double s = std::sqrt(energies[i]);
      running += adaptive_gauss_kronrod(integrand, s_prev, s, 1e-10);
      smooth[i] = running;
      s_prev = s;
    }
  }

  // Oscillatory part per partition; independent work per energy for d = 1,
  // cumulative panels for d >= 2.
  std::vector<double> osc(energies.size(), 0.0);
  for (const auto& p : parts) {
    const double coefficient = p.shape.coefficient_value();
    if (p.context.d == 1) {
      std::vector<double> values(energies.size());
      parallel_for(energies.size(), settings.workers, [&](std::size_t i) {
        values[i] = osc_integral_single_block(p.context, settings.m_max, std::sqrt(energies[i]));
      });
      for (std::size_t i = 0; i < energies.size(); ++i) osc[i] += coefficient * values[i];
      continue;
    }
    const double rate = max_phase_rate(p.context, p.terms);
    std::vector<double> increments(energies.size());
    parallel_for(energies.size(), settings.workers, [&](std::size_t i) {
      const double lo = i == 0 ? 0.0 : std::sqrt(energies[i - 1]);
      increments[i] = osc_integral_panels(p.context, p.terms, rate, lo, std::sqrt(energies[i]));
    });
    double running = 0.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
      running += increments[i];
      osc[i] += coefficient * running;
    }
  }

  std::vector<double> out(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i) out[i] = smooth[i] + osc[i];
  return out;
}

std::vector<Peak> find_peaks(const DensityGrid& grid) {
  const auto& v = grid.values_total;
  std::vector<Peak> peaks;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (!(v[i] > v[i - 1] && v[i] > v[i + 1])) continue;
    const double curvature = v[i - 1] - 2.0 * v[i] + v[i + 1];
    const double offset = 0.5 * (v[i - 1] - v[i + 1]) / curvature;
    peaks.push_back({grid.energies[i] + offset * grid.step, v[i] - 0.25 * (v[i - 1] - v[i + 1]) * offset});
  }
  return peaks;
}

LevelMatch match_levels_to_peaks(std::span<const double> levels, std::span<const Peak> peaks, double tolerance) {
  LevelMatch result;
  result.levels.assign(levels.begin(), levels.end());
  const std::size_t n = levels.size();

  // Candidate peaks per level, nearest first.
  std::vector<std::vector<std::size_t>> candidates(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < peaks.size(); ++j) {
      if (std::fabs(peaks[j].position - levels[i]) <= tolerance) candidates[i].push_back(j);
    }
    std::sort(candidates[i].begin(), candidates[i].end(), [&](std::size_t a, std::size_t b) {
      return std::fabs(peaks[a].position - levels[i]) < std::fabs(peaks[b].position - levels[i]);
    });
  }

  // Kuhn's augmenting paths.
  std::vector<std::optional<std::size_t>> level_of_peak(peaks.size());
  result.peak_for_level.assign(n, std::nullopt);
  std::vector<char> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t level) {
    for (std::size_t peak : candidates[level]) {
      if (visited[peak]) continue;
      visited[peak] = 1;
      if (!level_of_peak[peak] || augment(*level_of_peak[peak])) {
        level_of_peak[peak] = level;
        result.peak_for_level[level] = peak;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    visited.assign(peaks.size(), 0);
    if (augment(i)) ++result.matched;
  }

  result.distance.assign(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    if (result.peak_for_level[i]) result.distance[i] = std::fabs(peaks[*result.peak_for_level[i]].position - levels[i]);
  }
  return result;
}

std::vector<double> interlevel_midpoints(std::span<const double> distinct_levels, double window_lo, double window_hi) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < distinct_levels.size(); ++i) {
    if (distinct_levels[i] >= window_lo && distinct_levels[i + 1] <= window_hi) {
      out.push_back(0.5 * (distinct_levels[i] + distinct_levels[i + 1]));
    }
  }
  return out;
}

std::vector<ResurgenceRow> resurgence_profile(const ModelParams& params, std::span<const int> ladder,
                                              double window_lo, double window_hi, const TraceSettings& base,
                                              const QuadratureSpec& quad) {
  if (ladder.empty()) throw ContractViolation("resurgence ladder is empty");
  for (int m : ladder) {
    if (m < 1) throw ContractViolation(fmt::format("ladder entry m_max = {} leaves the winding set empty", m));
  }
  if (!(window_lo > 0.0) || !(window_hi > window_lo)) throw ContractViolation("resurgence window must be 0 < lo < hi");

  SolverSettings solver;
  solver.workers = base.workers;
  const auto table = enumerate_spectrum(params, window_hi, solver);
  const auto levels = distinct_energies(table);
  const auto mids = interlevel_midpoints(levels, window_lo, window_hi);
  if (mids.empty()) throw ContractViolation("no pair of exact levels inside the resurgence window");

  TraceSettings settings = base;
  const auto smooth_parts = prepare(params, [&] {
    TraceSettings s = base;
    s.m_max = 1;
    return s;
  }());
  std::vector<double> smooth(mids.size());
  parallel_for(mids.size(), base.workers, [&](std::size_t i) { smooth[i] = smooth_at(params, smooth_parts, mids[i], quad); });
  CompensatedSum smooth_sum;
  for (double v : smooth) smooth_sum += v;
  const double weyl_mean = smooth_sum.value() / static_cast<double>(mids.size());

  std::vector<ResurgenceRow> rows;
  for (int m : ladder) {
    settings.m_max = m;
    const auto parts = prepare(params, settings);
    std::vector<double> osc(mids.size());
    parallel_for(mids.size(), base.workers, [&](std::size_t i) { osc[i] = osc_at(parts, mids[i]); });
    CompensatedSum osc_sum;
    for (double v : osc) osc_sum += v;
    ResurgenceRow row;
    row.m_max = m;
    row.mean_osc_between_levels = osc_sum.value() / static_cast<double>(mids.size());
    row.weyl_mean = weyl_mean;
    row.gap = std::fabs(row.mean_osc_between_levels + weyl_mean);
    row.midpoints = mids.size();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lltrace
