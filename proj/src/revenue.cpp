#include "revbound/revenue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace revbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Deepest dyadic probe 2^-kDeepestProbe used at both ends of the quantile grid.
constexpr int kDeepestProbe = 60;

constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt(5)) / 2

std::vector<double> candidate_prices(const Distribution& d, std::size_t grid_size, Exec exec) {
  std::vector<double> levels;
  levels.reserve(grid_size + 2 * kDeepestProbe);
  const double n = static_cast<double>(grid_size);
  for (std::size_t i = 1; i < grid_size; ++i) levels.push_back(static_cast<double>(i) / n);
  const int first_probe = static_cast<int>(std::ceil(std::log2(n))) + 1;
  for (int k = first_probe; k <= kDeepestProbe; ++k) levels.push_back(std::ldexp(1.0, -k));
  std::vector<double> prices = kernels::quantiles(d, levels, exec);

  // Upper tail probes go through quantile_upper so that they resolve levels
  // 1 - 2^-k that are not representable as doubles.
  for (int k = first_probe; k <= kDeepestProbe; ++k) prices.push_back(d.quantile_upper(std::ldexp(1.0, -k)));

  const Support s = d.support();
  if (s.lower > 0.0) prices.push_back(s.lower);
  if (std::isfinite(s.upper)) prices.push_back(s.upper);
  for (const Atom& a : d.atoms()) prices.push_back(a.location);

  std::erase_if(prices, [](double p) { return !(p > 0.0) || !std::isfinite(p); });
  std::sort(prices.begin(), prices.end());
  prices.erase(std::unique(prices.begin(), prices.end()), prices.end());
  return prices;
}

OptimalRevenue enumerate_atoms(const Distribution& d) {
  OptimalRevenue best{0.0, 0.0, OptimumMethod::atom_enumeration, 0.0};
  for (const Atom& a : d.atoms()) {
    const double revenue = a.location * d.left_survival(a.location);
    if (revenue > best.value) {
      best.value = revenue;
      best.argmax_price = a.location;
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(OptimumMethod method) {
  switch (method) {
    case OptimumMethod::analytic:
      return "analytic";
    case OptimumMethod::atom_enumeration:
      return "atom_enumeration";
    case OptimumMethod::quantile_grid_refined:
      return "quantile_grid_refined";
  }
  return "unknown";
}

PriceQuote revenue_at(const Distribution& d, double price) {
  if (!(price > 0.0) || !std::isfinite(price)) {
    throw std::invalid_argument("revenue_at: price must be positive and finite");
  }
  return {price, price * d.survival(price), price * d.left_survival(price)};
}

std::vector<PriceQuote> score_prices(const Distribution& d, std::span<const double> prices, Exec exec) {
  std::vector<PriceQuote> out(prices.size());
  auto score = [&](std::size_t i) {
    const double p = prices[i];
    out[i] = {p, p * d.survival(p), p * d.left_survival(p)};
  };
  if (exec == Exec::parallel) {
    const auto n = static_cast<std::int64_t>(prices.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) score(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < prices.size(); ++i) score(i);
  }
  return out;
}

OptimalRevenue optimal_revenue(const Distribution& d, const RevenueOptions& options) {
  if (options.grid_size < 64) throw std::invalid_argument("optimal_revenue: grid_size must be >= 64");
  if (!(options.refine_tol > 0.0)) throw std::invalid_argument("optimal_revenue: refine_tol must be positive");

  if (options.allow_analytic) {
    if (const auto opt = d.analytic_optimum()) {
      return {opt->value, opt->price, OptimumMethod::analytic, 0.0};
    }
  }
  if (d.is_discrete()) return enumerate_atoms(d);

  const std::vector<double> prices = candidate_prices(d, options.grid_size, options.exec);
  const std::vector<PriceQuote> quotes = score_prices(d, prices, options.exec);

  std::size_t best = 0;
  for (std::size_t i = 1; i < quotes.size(); ++i) {
    if (quotes[i].revenue_left > quotes[best].revenue_left) best = i;
  }
  OptimalRevenue result{quotes[best].revenue_left, prices[best], OptimumMethod::quantile_grid_refined, 0.0};
  const bool tail_rising = best + 1 == prices.size() && !std::isfinite(d.support().upper);

  // Golden-section search for the maximum of p * P(V > p) inside the best
  // bracket. Revenue need not be unimodal; the grid term of the tolerance
  // below covers what this local search can miss.
  double lo = best > 0 ? prices[best - 1] : 0.5 * prices[best];
  double hi = best + 1 < prices.size() ? prices[best + 1] : 2.0 * prices[best];
  auto consider = [&](double p) {
    const PriceQuote q = revenue_at(d, p);
    if (q.revenue_left > result.value) {
      result.value = q.revenue_left;
      result.argmax_price = p;
    }
    return q.revenue_right;
  };
  double x1 = lo + kGolden * (hi - lo);
  double x2 = hi - kGolden * (hi - lo);
  double f1 = consider(x1);
  double f2 = consider(x2);
  for (int it = 0; it < 200 && hi - lo > options.refine_tol * result.argmax_price; ++it) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = lo + kGolden * (hi - lo);
      f1 = consider(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = hi - kGolden * (hi - lo);
      f2 = consider(x2);
    }
  }

  // For p in (p_j, p_{j+1}]: p * P(V >= p) <= p_{j+1} * P(V > p_j).
  double gap = prices.front() - result.value;
  for (std::size_t j = 0; j + 1 < prices.size(); ++j) {
    gap = std::max(gap, prices[j + 1] * (quotes[j].revenue_right / prices[j]) - result.value);
  }
  result.tolerance = tail_rising ? kInf : std::max(0.0, gap);
  return result;
}

MeanEstimate random_price_revenue(const Distribution& d, std::size_t n, std::uint64_t seed, Exec exec) {
  if (n < 1000) throw std::invalid_argument("random_price_revenue: n must be >= 1000");
  return kernels::monte_carlo_mean(
      n, seed,
      [&d](Rng& rng) {
        const double p = d.sample(rng);
        return p * d.survival(p);
      },
      exec);
}

}  // namespace revbound
