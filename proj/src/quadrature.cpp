#include "lltrace/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <fmt/format.h>

#include "lltrace/errors.hpp"
#include "lltrace/summation.hpp"

namespace lltrace {

const GaussLegendreRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  // legendre_p_zeros returns the non-negative roots in ascending order.
  const std::vector<double> positive = boost::math::legendre_p_zeros<double>(n);
  GaussLegendreRule rule;
  auto push = [&](double x) {
    const double dp = boost::math::legendre_p_prime(n, x);
    rule.nodes.push_back(x);
    rule.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  };
  for (auto r = positive.rbegin(); r != positive.rend(); ++r) {
    if (*r != 0.0) push(-*r);
  }
  for (double x : positive) push(x);
  return cache.emplace(n, std::move(rule)).first->second;
}

double adaptive_gauss_kronrod(const std::function<double(double)>& f, double a, double b, double abs_tolerance,
                              int max_panels) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& kx = Kronrod::abscissa();  // 0 and the 7 positive nodes
  const auto& kw = Kronrod::weights();
  const auto& gw = Gauss::weights();     // nodes of G7 are kx[0], kx[2], kx[4], kx[6]

  struct Panel {
    double lo, hi, value, error;
  };
  const auto evaluate = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    std::array<double, 8> pair{};
    pair[0] = f(mid);
    for (std::size_t i = 1; i < kx.size(); ++i) pair[i] = f(mid - half * kx[i]) + f(mid + half * kx[i]);
    double kronrod = 0.0;
    for (std::size_t i = 0; i < kx.size(); ++i) kronrod += kw[i] * pair[i];
    double gauss = gw[0] * pair[0];
    for (std::size_t i = 1; i < gw.size(); ++i) gauss += gw[i] * pair[2 * i];
    return Panel{lo, hi, half * kronrod, std::fabs(half * (kronrod - gauss))};
  };
  const auto by_error = [](const Panel& x, const Panel& y) { return x.error < y.error; };

  std::vector<Panel> heap{evaluate(a, b)};
  const auto total_error = [&] {
    double e = 0.0;
    for (const auto& p : heap) e += p.error;
    return e;
  };
  while (total_error() > abs_tolerance) {
    if (static_cast<int>(heap.size()) >= max_panels) {
      throw NonConvergence(
          fmt::format("adaptive quadrature on [{}, {}] stalled at error {:.3e}", a, b, total_error()), {});
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    for (const Panel& p : {evaluate(worst.lo, mid), evaluate(mid, worst.hi)}) {
      heap.push_back(p);
      std::push_heap(heap.begin(), heap.end(), by_error);
    }
  }

  std::sort(heap.begin(), heap.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  CompensatedSum total;
  for (const auto& p : heap) total += p.value;
  return total.value();
}

}  // namespace lltrace
