#include "revbound/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace revbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Panels are dyadic in the level (u near 0) or in 1 - u (u near 1):
// panel k covers [2^-(k+2), 2^-(k+1)], i.e. unit steps in t = -log2(u).
constexpr int kPanelBatch = 40;      // divergence is judged after this many
constexpr int kMaxPanels = 1000;
constexpr int kRatioWindow = 8;
constexpr double kGrowthThreshold = 1.0 - 1e-9;

constexpr unsigned kMaxDepth = 10;
constexpr double kPanelRelTol = 1e-11;

struct PanelResult {
  double value = 0.0;
  double error = 0.0;
};

enum class Transform { identity, log };

double apply(Transform g, double q) { return g == Transform::log ? std::log(q) : q; }

// One half of (0, 1): levels u in (0, 1/2] when `upper` is false, otherwise
// s = 1 - u in (0, 1/2]. `cuts` are the level images of the breakpoints.
class HalfLine {
 public:
  HalfLine(const Distribution& d, Transform g, bool upper, std::vector<double> cuts)
      : d_(d), g_(g), upper_(upper), cuts_(std::move(cuts)) {}

  PanelResult panel(int k) const {
    const double a = std::ldexp(1.0, -(k + 2));
    const double b = std::ldexp(1.0, -(k + 1));
    std::vector<double> edges{a};
    for (double c : cuts_) {
      if (c > a && c < b) edges.push_back(c);
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    PanelResult out;
    bool nonfinite = false;
    double nonfinite_sign = 1.0;
    auto f = [&](double level) {
      const double q = upper_ ? d_.quantile_upper(level) : d_.quantile(level);
      const double y = apply(g_, q);
      if (!std::isfinite(y)) {
        nonfinite = true;
        nonfinite_sign = y < 0 ? -1.0 : 1.0;
        return 0.0;
      }
      return y;
    };
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      if (!(edges[i + 1] > edges[i])) continue;
      // Integrate on [0, 1] and rescale: boost's error estimate is not scaled
      // by the interval width, so tiny panels would otherwise never converge.
      const double lo = edges[i];
      const double width = edges[i + 1] - lo;
      auto unit = [&](double x) { return f(lo + width * x); };
      double err = 0.0;
      out.value += width * boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
                               unit, 0.0, 1.0, kMaxDepth, kPanelRelTol, &err);
      out.error += width * err;
    }
    if (nonfinite) out.value = nonfinite_sign * kInf;
    return out;
  }

 private:
  const Distribution& d_;
  Transform g_;
  bool upper_;
  std::vector<double> cuts_;
};

void compute_panels(const HalfLine& half, std::vector<PanelResult>& panels, int from, int to, Exec exec) {
  panels.resize(static_cast<std::size_t>(to));
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = from; k < to; ++k) panels[static_cast<std::size_t>(k)] = half.panel(k);
  } else {
    for (int k = from; k < to; ++k) panels[static_cast<std::size_t>(k)] = half.panel(k);
  }
}

// Geometric tail of the panel series after panel `last`, using the ratio of
// panels (last - lag, last - lag - 1).
double geometric_remainder(const std::vector<PanelResult>& p, std::size_t last, std::size_t lag) {
  const double num = std::abs(p[last - lag].value);
  const double den = std::abs(p[last - lag - 1].value);
  if (p[last].value == 0.0 || den == 0.0) return 0.0;
  const double r = num / den;
  if (r >= 1.0) return std::copysign(kInf, p[last].value);
  return p[last].value * r / (1.0 - r);
}

// Sum of the panel series for one half with divergence detection and
// geometric extrapolation of the remainder.
QuadratureEstimate sum_half(const HalfLine& half, double tol, Exec exec) {
  std::vector<PanelResult> panels;
  compute_panels(half, panels, 0, kPanelBatch, exec);

  auto diverged = [&]() -> double {
    for (const auto& p : panels) {
      if (!std::isfinite(p.value)) return p.value;
    }
    // Panel magnitudes that stop shrinking geometrically mean divergence.
    const std::size_t n = panels.size();
    double log_ratio = 0.0;
    int used = 0;
    for (std::size_t i = n - kRatioWindow; i < n; ++i) {
      const double num = std::abs(panels[i].value);
      const double den = std::abs(panels[i - 1].value);
      if (num == 0.0 || den == 0.0) continue;
      log_ratio += std::log(num / den);
      ++used;
    }
    if (used == kRatioWindow && std::exp(log_ratio / used) >= kGrowthThreshold) {
      return std::copysign(kInf, panels.back().value);
    }
    return 0.0;
  };
  if (const double inf = diverged(); inf != 0.0) return {inf, 0.0};

  double partial = 0.0;
  for (const auto& p : panels) partial += p.value;
  const double tol_abs = tol * std::max(1.0, std::abs(partial));

  double remainder = 0.0;
  double remainder_error = 0.0;
  while (true) {
    const std::size_t last = panels.size() - 1;
    remainder = geometric_remainder(panels, last, 0);
    const double previous = geometric_remainder(panels, last, 1);
    remainder_error = std::isfinite(remainder) && std::isfinite(previous)
                          ? std::abs(remainder - previous)
                          : kInf;
    if (std::abs(remainder) <= 0.1 * tol_abs || remainder_error <= 0.1 * tol_abs) break;
    if (static_cast<int>(panels.size()) >= kMaxPanels) break;
    const int from = static_cast<int>(panels.size());
    compute_panels(half, panels, from, std::min(from + kPanelBatch, kMaxPanels), exec);
    for (std::size_t i = static_cast<std::size_t>(from); i < panels.size(); ++i) {
      if (!std::isfinite(panels[i].value)) return {panels[i].value, 0.0};
    }
  }
  if (!std::isfinite(remainder)) return {remainder, 0.0};

  // Smallest panels first.
  QuadratureEstimate out{remainder, remainder_error};
  for (std::size_t i = panels.size(); i-- > 0;) {
    out.value += panels[i].value;
    out.error += panels[i].error;
  }
  return out;
}

QuadratureEstimate quantile_integral(const Distribution& d, Transform g, double tol, Exec exec) {
  if (!(tol > 0.0)) throw std::invalid_argument("moments: tol must be positive");
  if (d.is_discrete()) {
    QuadratureEstimate exact;
    for (const Atom& a : d.atoms()) exact.value += a.mass * apply(g, a.location);
    return exact;
  }

  std::vector<double> lower_cuts;
  std::vector<double> upper_cuts;
  for (double b : d.breakpoints()) {
    lower_cuts.push_back(1.0 - d.left_survival(b));
    lower_cuts.push_back(d.cdf(b));
    upper_cuts.push_back(d.survival(b));
    upper_cuts.push_back(d.left_survival(b));
  }

  const QuadratureEstimate lower = sum_half(HalfLine(d, g, false, std::move(lower_cuts)), tol, exec);
  const QuadratureEstimate upper = sum_half(HalfLine(d, g, true, std::move(upper_cuts)), tol, exec);
  if (!std::isfinite(lower.value) || !std::isfinite(upper.value)) {
    return {lower.value + upper.value, 0.0};
  }
  return {lower.value + upper.value, lower.error + upper.error};
}

}  // namespace

QuadratureEstimate expectation_estimate(const Distribution& d, double tol, Exec exec) {
  return quantile_integral(d, Transform::identity, tol, exec);
}

QuadratureEstimate log_expectation_estimate(const Distribution& d, double tol, Exec exec) {
  return quantile_integral(d, Transform::log, tol, exec);
}

double expectation(const Distribution& d, double tol) { return expectation_estimate(d, tol).value; }

double log_expectation(const Distribution& d, double tol) {
  return log_expectation_estimate(d, tol).value;
}

double geometric_expectation(const Distribution& d, double tol) {
  return std::exp(log_expectation(d, tol));
}

MeanEstimate mc_log_expectation(const Distribution& d, std::size_t n, std::uint64_t seed, Exec exec) {
  if (n < 1000) throw std::invalid_argument("mc_log_expectation: n must be >= 1000");
  return kernels::monte_carlo_mean(n, seed, [&d](Rng& rng) { return std::log(d.sample(rng)); }, exec);
}

MomentsReport moments_report(const Distribution& d, const MomentsOptions& options) {
  MomentsReport r;
  const QuadratureEstimate e = expectation_estimate(d, options.tol, options.exec);
  const QuadratureEstimate l = log_expectation_estimate(d, options.tol, options.exec);
  r.expectation = e.value;
  r.expectation_error = e.error;
  r.log_expectation = l.value;
  r.geometric_expectation = std::exp(l.value);
  r.quadrature_error = l.error;
  const MeanEstimate mc = mc_log_expectation(d, options.mc_samples, options.seed, options.exec);
  r.mc_estimate = mc.mean;
  r.mc_standard_error = mc.standard_error;
  r.mc_samples = mc.n;
  return r;
}

}  // namespace revbound
