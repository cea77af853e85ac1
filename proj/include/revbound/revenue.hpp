#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "revbound/distribution.hpp"
#include "revbound/kernels.hpp"

namespace revbound {

// Expected revenue of a posted price under both acceptance conventions:
// revenue_right = p * P(V > p) (buyer accepts iff p < V) and
// revenue_left = p * P(V >= p), its limit from below. They differ only at atoms.
struct PriceQuote {
  double price = 0.0;
  double revenue_right = 0.0;
  double revenue_left = 0.0;
};

enum class OptimumMethod { analytic, atom_enumeration, quantile_grid_refined };

std::string_view to_string(OptimumMethod method);

// u(V) = sup_p p * P(V > p). `value` is achieved by `argmax_price` under the
// left convention, so it is a certified lower bound on the supremum;
// `tolerance` bounds the remaining gap over the searched price range and is
// +inf when revenue was still rising at the deepest tail probe.
struct OptimalRevenue {
  double value = 0.0;
  double argmax_price = 0.0;
  OptimumMethod method = OptimumMethod::quantile_grid_refined;
  double tolerance = 0.0;
};

struct RevenueOptions {
  std::size_t grid_size = 4096;  // quantile grid i / grid_size, at least 64
  double refine_tol = 1e-9;      // golden-section bracket width relative to the price
  bool allow_analytic = true;    // use a family's closed-form optimum when it has one
  Exec exec = Exec::parallel;
};

// Throws std::invalid_argument for p <= 0.
PriceQuote revenue_at(const Distribution& d, double price);

// Scores each price; the parallel and serial paths agree exactly.
std::vector<PriceQuote> score_prices(const Distribution& d, std::span<const double> prices,
                                     Exec exec = Exec::parallel);

OptimalRevenue optimal_revenue(const Distribution& d, const RevenueOptions& options = {});

// Revenue of a seller posting a random price p ~ F: Monte Carlo mean of
// p * P(V > p). Requires n >= 1000.
MeanEstimate random_price_revenue(const Distribution& d, std::size_t n, std::uint64_t seed,
                                  Exec exec = Exec::parallel);

}  // namespace revbound
