#include "revbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "revbound/errors.hpp"
#include "revbound/lambert_w.hpp"
#include "revbound/moments.hpp"

namespace revbound {

namespace {

constexpr double kDegenerateDelta = 1e-14;

std::vector<double> midpoint_levels(std::size_t n) {
  std::vector<double> levels(n);
  for (std::size_t i = 0; i < n; ++i) levels[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return levels;
}

// log u >= log p + log P(V > p) must hold for every p, up to the certified
// gap of the revenue search.
std::size_t check_pointwise(const Distribution& d, const OptimalRevenue& rev, const BoundOptions& options) {
  if (!std::isfinite(rev.value) || !std::isfinite(rev.tolerance)) return 0;
  const std::vector<double> levels = midpoint_levels(options.check_grid);
  const std::vector<double> prices = kernels::quantiles(d, levels, options.exec);
  const double log_u = std::log(rev.value + rev.tolerance) + 1e-9;
  std::size_t checked = 0;
  for (double p : prices) {
    const double s = d.survival(p);
    ++checked;
    if (s <= 0.0) continue;
    const double rhs = std::log(p) + std::log(s);
    if (rhs > log_u) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "revenue search missed a better price: p=" << p << " earns " << p * s
          << " > u=" << rev.value << " (+" << rev.tolerance << ")";
      throw InconsistencyError(msg.str());
    }
  }
  return checked;
}

// The law matches the equal-revenue CDF with parameter c on a quantile grid
// and puts no mass below c.
bool matches_equal_revenue(const Distribution& d, double c, const BoundOptions& options) {
  if (!(c > 0.0) || !std::isfinite(c)) return false;
  if (d.cdf(c * (1.0 - 1e-6)) > options.cdf_match_tol) return false;
  for (double level : midpoint_levels(options.check_grid)) {
    if (std::abs(d.cdf(c / (1.0 - level)) - level) > options.cdf_match_tol) return false;
  }
  return true;
}

BoundReport theorem1_fields(const Distribution& d, const BoundOptions& options) {
  BoundReport r;
  RevenueOptions rev_options = options.revenue;
  rev_options.exec = options.exec;
  r.revenue = optimal_revenue(d, rev_options);
  r.u = r.revenue.value;

  const QuadratureEstimate log_e = log_expectation_estimate(d, options.moment_tol, options.exec);
  r.geometric = std::exp(log_e.value);
  r.geometric_error = r.geometric * log_e.error;
  const QuadratureEstimate e = expectation_estimate(d, options.moment_tol, options.exec);
  r.expectation = e.value;
  r.expectation_error = e.error;

  r.thm1_lower = r.geometric / std::numbers::e;
  r.thm1_slack = r.u - r.thm1_lower;
  r.pointwise_checked = check_pointwise(d, r.revenue, options);

  const double scale = std::max(r.u, r.thm1_lower);
  r.equality_flag = std::isfinite(r.thm1_slack) && scale > 0.0 &&
                    std::abs(r.thm1_slack) <= options.equality_tol * scale &&
                    matches_equal_revenue(d, r.u, options);
  return r;
}

double clamp_delta(double geometric, double expectation) {
  return std::clamp(1.0 - geometric / expectation, 0.0, 1.0);
}

}  // namespace

BoundReport theorem1_report(const Distribution& d, const BoundOptions& options) {
  return theorem1_fields(d, options);
}

BoundReport bound_report(const Distribution& d, const BoundOptions& options) {
  BoundReport r = theorem1_fields(d, options);
  if (std::isfinite(r.expectation)) {
    const double delta = clamp_delta(r.geometric, r.expectation);
    r.delta = delta;
    r.thm2_lower = (1.0 - std::cbrt(16.0) * std::cbrt(delta)) * r.expectation;
    r.thm2_slack = r.u - *r.thm2_lower;
  }
  return r;
}

BoundReport theorem2_report(const Distribution& d, const BoundOptions& options) {
  BoundReport r = bound_report(d, options);
  if (!r.delta) throw InfiniteExpectationError("closeness bound needs a finite expectation; E[V] = +inf");
  return r;
}

bool theorem1_holds(const BoundReport& r) {
  return r.thm1_slack >= -1e-6 * std::max(1.0, r.geometric);
}

bool theorem2_holds(const BoundReport& r) {
  if (!r.thm2_slack) return true;
  return *r.thm2_slack >= -1e-6 * std::max(1.0, r.expectation);
}

MeanEstimate log_revenue_identity_mc(const Distribution& d, std::size_t n, std::uint64_t seed, Exec exec) {
  if (!d.is_atomless()) throw std::invalid_argument("log_revenue_identity_mc: law has atoms");
  return kernels::monte_carlo_mean(
      n, seed,
      [&d](Rng& rng) {
        const double p = d.sample(rng);
        return std::log(p) + std::log(d.survival(p));
      },
      exec);
}

ConcentrationResult concentration_check(const Distribution& d, double k, std::size_t n, std::uint64_t seed,
                                        const BoundOptions& options) {
  if (!(k > 1.0)) throw std::invalid_argument("concentration_check: k must exceed 1");
  if (n == 0) throw std::invalid_argument("concentration_check: n must be positive");
  const double mean = expectation_estimate(d, options.moment_tol, options.exec).value;
  if (!std::isfinite(mean)) throw InfiniteExpectationError("concentration_check: E[V] = +inf");
  const double geometric = std::exp(log_expectation_estimate(d, options.moment_tol, options.exec).value);

  ConcentrationResult r;
  r.delta = clamp_delta(geometric, mean);
  r.k = k;
  r.threshold = std::pow(1.0 - r.delta, k);
  r.markov_bound = 1.0 / k;
  r.standard_error = std::sqrt(r.markov_bound * (1.0 - r.markov_bound) / static_cast<double>(n));
  if (r.delta <= kDegenerateDelta) {
    r.vacuous = true;
    r.holds = true;
    return r;
  }
  const double threshold = r.threshold;
  const MeanEstimate freq = kernels::monte_carlo_mean(
      n, seed,
      [&](Rng& rng) {
        const double v = d.sample(rng) / mean;
        return v * std::exp(1.0 - v) <= threshold ? 1.0 : 0.0;
      },
      options.exec);
  r.empirical_probability = freq.mean;
  r.holds = r.empirical_probability <= r.markov_bound + 3.0 * r.standard_error;
  return r;
}

Theorem2Trace theorem2_proof_trace(const Distribution& d, std::optional<double> k, std::size_t n,
                                   std::uint64_t seed, const BoundOptions& options) {
  const BoundReport report = theorem2_report(d, options);
  Theorem2Trace t;
  t.expectation = report.expectation;
  t.geometric = report.geometric;
  t.delta = *report.delta;
  if (t.delta <= kDegenerateDelta) throw std::domain_error("theorem2_proof_trace: delta is zero");
  t.k_star = std::cbrt(1.0 / (2.0 * t.delta));
  t.k = k.value_or(t.k_star);
  if (!(t.k > 1.0)) throw std::domain_error("theorem2_proof_trace: k must exceed 1 (delta >= 1/2?)");

  const ConcentrationResult markov = concentration_check(d, t.k, n, seed, options);
  t.threshold = markov.threshold;
  t.event_probability = markov.empirical_probability;
  t.event_standard_error = markov.standard_error;

  // V e^(1-V) <= t holds for every V <= -W0(-t/e).
  t.price = -lambert_w(-t.threshold / std::numbers::e);
  const double price = t.price * t.expectation;
  t.exact_sell_probability = d.survival(price);
  const MeanEstimate sell = kernels::monte_carlo_mean(
      n, derive_seed(seed, 0x5e11),
      [&](Rng& rng) { return d.sample(rng) > price ? 1.0 : 0.0; }, options.exec);
  t.mc_sell_probability = sell.mean;
  const double keep = 1.0 - 1.0 / t.k;
  t.mc_sell_standard_error = std::sqrt(keep * (1.0 - keep) / static_cast<double>(n));

  t.u = report.u / t.expectation;
  t.revenue_bound = t.price * keep;
  t.corless_bound = (1.0 - std::sqrt(2.0 * (1.0 - t.threshold))) * keep;
  t.linear_bound = (1.0 - std::sqrt(2.0 * t.delta * t.k)) * keep;
  const double root = std::cbrt(2.0 * t.delta);
  t.k_star_bound = (1.0 - std::sqrt(2.0 * t.delta) / std::sqrt(root)) * (1.0 - root);
  t.final_bound = 1.0 - 2.0 * root;
  t.statement_bound = 1.0 - std::cbrt(16.0) * std::cbrt(t.delta);

  constexpr double eps = 1e-12;
  t.sell_probability_ok = t.exact_sell_probability >= keep - eps &&
                          t.mc_sell_probability >= keep - 3.0 * t.mc_sell_standard_error;
  t.revenue_ok = t.u >= t.revenue_bound - eps;
  t.chain_monotone = t.u >= t.revenue_bound - eps && t.revenue_bound >= t.corless_bound - eps &&
                     t.corless_bound >= t.linear_bound - eps && t.k_star_bound >= t.final_bound - eps;
  return t;
}

}  // namespace revbound
