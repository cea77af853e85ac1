#include "revbound/lambert_w.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace revbound {

namespace {

constexpr double kBranchPoint = -1.0 / std::numbers::e;
constexpr int kMaxIterations = 50;

// Distance parameter p = sqrt(2(e x + 1)) for the branch-point expansion.
double branch_distance(double x) {
  return std::sqrt(std::max(0.0, 2.0 * std::fma(std::numbers::e, x, 1.0)));
}

double branch_series(double p) {
  return -1.0 +
         p * (1.0 + p * (-1.0 / 3.0 +
                         p * (11.0 / 72.0 +
                              p * (-43.0 / 540.0 + p * (769.0 / 17280.0 + p * (-221.0 / 8505.0))))));
}

}  // namespace

double lambert_w(double x) {
  if (std::isnan(x)) throw std::domain_error("lambert_w: NaN argument");
  if (x < kBranchPoint - 1e-15) throw std::domain_error("lambert_w: argument below -1/e");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  const double p = branch_distance(x);
  // Within p < 1e-3 the truncated series is already exact to ~1e-19, and
  // Halley steps lose accuracy as (w + 1) -> 0.
  if (p < 1e-3) return branch_series(p);

  double w;
  if (x < -0.25) {
    w = branch_series(p);
  } else if (x < 3.0) {
    w = std::log1p(x);
  } else {
    const double l = std::log(x);
    w = l - std::log(l);
  }

  for (int it = 0; it < kMaxIterations; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w;
}

double lambert_w_upper_bound(double x) { return -1.0 + branch_distance(x); }

bool lambert_w_upper_check(double x) {
  if (x < kBranchPoint - 1e-15 || x > 0.0) {
    throw std::domain_error("lambert_w_upper_check: x must lie in [-1/e, 0]");
  }
  return lambert_w(x) <= lambert_w_upper_bound(x) + 1e-12;
}

}  // namespace revbound
