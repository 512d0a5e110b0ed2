#pragma once

// Oscillatory part of the density of states as a sum over winding vectors M
// of each partition term:
//
//   rho_osc_a(E) = sum'_M A_M(E) cos(R_M(E)),
//   A_M = (pi^{d-1} / prod a_i)^{1/2} (E^{d-3} / S_M^{d-1})^{1/4} det G(k_M),
//   R_M = 2 sqrt(S_M E) - (pi/4)(d-1) + M . Phi_M + pi delta sum_i M_i,
//
// with S_M = sum_i (L M_i)^2 / (4 a_i), (k_M)_i = L M_i / (2 a_i) sqrt(E / S_M)
// and (Phi_M)_i = 2 sum_j a_j atan(((k_M)_i - (k_M)_j) / g).

#include <optional>
#include <vector>

#include "lltrace/model.hpp"
#include "lltrace/weyl.hpp"

namespace lltrace {

/// A nonzero integer vector conjugate to the quantum numbers.
class WindingVector {
 public:
  /// Throws ContractViolation for the zero vector or an empty one.
  explicit WindingVector(std::vector<int> components);

  std::span<const int> components() const noexcept { return components_; }
  int operator[](std::size_t i) const noexcept { return components_[i]; }
  std::size_t size() const noexcept { return components_.size(); }
  /// sum_i M_i (signed).
  long long signed_sum() const noexcept { return signed_sum_; }
  WindingVector negated() const;

  bool operator==(const WindingVector&) const = default;

 private:
  std::vector<int> components_;
  long long signed_sum_ = 0;
};

struct TraceSettings {
  int m_max = 10;                              // sup-norm bound on winding components
  std::vector<PartitionShape> partitions = {};  // empty: all partitions of N
  unsigned workers = 0;                        // 0 = default_workers()

  void validate() const;
};

struct GridSpec {
  double e_min = 0.5;
  double e_max = 30.0;
  double step = 0.01;

  /// Number of points e_min + i * step <= e_max (+ half-step slack).
  std::size_t size() const;
  double at(std::size_t i) const { return e_min + static_cast<double>(i) * step; }
  void validate() const;
};

struct DensityGrid {
  double e_min = 0.0;
  double e_max = 0.0;
  double step = 0.0;
  std::vector<double> energies;
  std::vector<double> values_smooth;
  std::vector<double> values_osc;
  std::vector<double> values_total;
};

/// All M in Z^d with max |M_i| <= m_max except 0, lexicographic;
/// (2 m_max + 1)^d - 1 of them.
std::vector<WindingVector> winding_enumerate(int d, int m_max);

/// S_M = sum_i (L M_i)^2 / (4 a_i).
double scaled_action(const PartitionShape& shape, const WindingVector& m, const ModelParams& params);

/// Stationary rapidities on the shell sum_i a_i k_i^2 = e.
std::vector<double> stationary_rapidities(const PartitionShape& shape, const WindingVector& m, double e,
                                          const ModelParams& params);

/// Phi_i = 2 sum_j a_j atan((k_i - k_j) / g) at k = k_M.
std::vector<double> scattering_phase(const PartitionShape& shape, const WindingVector& m, double e,
                                     const ModelParams& params);

/// A_M(e). Throws NonPositiveEnergy for e <= 0.
double amplitude(const PartitionShape& shape, const WindingVector& m, double e, const ModelParams& params);

/// R_M(e).
double total_phase(const PartitionShape& shape, const WindingVector& m, double e, const ModelParams& params);

/// sum over winding_enumerate(d, m_max) of A_M cos R_M, reduced in
/// lexicographic order with compensated summation. Not weighted by C_a.
double rho_osc_partition(const PartitionShape& shape, double e, const ModelParams& params,
                         const TraceSettings& settings);

/// sum_a C_a rho_osc_partition(a, e) over settings.partitions (or all).
double rho_osc_total(const ModelParams& params, double e, const TraceSettings& settings);

/// Smooth, oscillatory and total density on a uniform grid. Grid points are
/// distributed over settings.workers; the output is independent of the count.
DensityGrid rho_total(const ModelParams& params, const GridSpec& grid, const TraceSettings& settings,
                      const QuadratureSpec& quad = {});

/// Semiclassical counting function integral_0^e (rho_smooth + rho_osc) de'
/// at each of the ascending energies. Smooth part: weyl_count. Oscillatory
/// part: d = 1 partitions in closed form (their phase is linear in sqrt(e));
/// higher partitions by composite Gauss-Legendre in s = sqrt(e') on panels
/// that resolve the fastest winding.
std::vector<double> semiclassical_count(const ModelParams& params, std::span<const double> energies,
                                        const TraceSettings& settings, const QuadratureSpec& quad = {});

struct Peak {
  double position;
  double height;
};

/// Strict interior local maxima of values_total with 3-point parabolic
/// refinement, ascending in position.
std::vector<Peak> find_peaks(const DensityGrid& grid);

struct LevelMatch {
  std::vector<double> levels;
  std::vector<std::optional<std::size_t>> peak_for_level;  // index into the peak list
  std::vector<double> distance;                            // |level - peak|, +inf if unmatched
  std::size_t matched = 0;
  bool all_matched() const { return matched == levels.size(); }
};

/// Maximum one-to-one assignment of levels to peaks with |level - peak| <= tolerance.
LevelMatch match_levels_to_peaks(std::span<const double> levels, std::span<const Peak> peaks, double tolerance);

struct ResurgenceRow {
  int m_max = 0;
  double mean_osc_between_levels = 0.0;
  double weyl_mean = 0.0;  // mean smooth density at the same midpoints
  double gap = 0.0;        // |mean_osc + weyl_mean|
  std::size_t midpoints = 0;
};

/// For each m_max of the ladder, mean of the oscillatory density at the
/// midpoints between consecutive distinct exact levels inside [window_lo, window_hi].
std::vector<ResurgenceRow> resurgence_profile(const ModelParams& params, std::span<const int> ladder,
                                              double window_lo, double window_hi, const TraceSettings& base,
                                              const QuadratureSpec& quad = {});

/// Midpoints between consecutive distinct levels with both levels inside the window.
std::vector<double> interlevel_midpoints(std::span<const double> distinct_levels, double window_lo, double window_hi);

}  // namespace lltrace
