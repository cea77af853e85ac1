#include "revbound/pit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace revbound {

std::vector<double> probability_integral_samples(const Distribution& d, std::size_t n,
                                                 std::uint64_t seed, Exec exec) {
  if (n == 0) throw std::invalid_argument("probability_integral_samples: n must be >= 1");
  if (!d.is_atomless()) {
    throw std::invalid_argument("probability_integral_samples: law has atoms; F(V) is not uniform");
  }
  std::vector<double> out = kernels::draw_samples(d, n, seed, exec);
  kernels::fill(out, [&](std::size_t i) { return d.cdf(out[i]); }, exec);
  return out;
}

double ks_statistic_uniform(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double x = std::clamp(sorted[i], 0.0, 1.0);
    worst = std::max({worst, static_cast<double>(i + 1) / n - x, x - static_cast<double>(i) / n});
  }
  return worst;
}

double ks_critical_1pct(std::size_t n) {
  return std::sqrt(0.5 * std::log(200.0)) / std::sqrt(static_cast<double>(n));
}

}  // namespace revbound
