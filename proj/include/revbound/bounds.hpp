#pragma once

#include <cstdint>
#include <optional>

#include "revbound/distribution.hpp"
#include "revbound/kernels.hpp"
#include "revbound/revenue.hpp"

namespace revbound {

struct BoundOptions {
  RevenueOptions revenue;
  double moment_tol = 1e-8;
  double equality_tol = 1e-6;   // relative slack accepted as the equality case
  double cdf_match_tol = 1e-6;  // equal-revenue CDF confirmation
  std::size_t check_grid = 1024;
  Exec exec = Exec::parallel;
};

// Both revenue lower bounds for one law:
//   u >= G / e                              (always)
//   u >= (1 - 2^(4/3) delta^(1/3)) E,        delta = 1 - G / E   (E finite)
struct BoundReport {
  OptimalRevenue revenue;
  double u = 0.0;
  double geometric = 0.0;
  double geometric_error = 0.0;
  double thm1_lower = 0.0;
  double thm1_slack = 0.0;
  double expectation = 0.0;  // +inf allowed
  double expectation_error = 0.0;
  std::optional<double> delta;
  std::optional<double> thm2_lower;  // negative means the bound holds vacuously
  std::optional<double> thm2_slack;
  bool equality_flag = false;
  std::size_t pointwise_checked = 0;
};

// Fills u, G, E and the G/e bound, and verifies log u >= log p + log P(V > p)
// at check_grid quantile levels. A violation beyond the certified search
// tolerance throws InconsistencyError.
BoundReport theorem1_report(const Distribution& d, const BoundOptions& options = {});

// theorem1_report plus delta and the closeness bound. Throws
// InfiniteExpectationError when E[V] is infinite.
BoundReport theorem2_report(const Distribution& d, const BoundOptions& options = {});

// theorem2_report when E[V] is finite, theorem1_report otherwise.
BoundReport bound_report(const Distribution& d, const BoundOptions& options = {});

// thm1_slack >= -1e-6 max(1, G).
bool theorem1_holds(const BoundReport& r);
// thm2_slack >= -1e-6 max(1, E); true when the closeness bound is not defined.
bool theorem2_holds(const BoundReport& r);

// Monte Carlo mean of log p + log P(V > p) for p ~ F. For atomless laws this
// equals E[log V] - 1. Throws std::invalid_argument for laws with atoms.
MeanEstimate log_revenue_identity_mc(const Distribution& d, std::size_t n, std::uint64_t seed,
                                     Exec exec = Exec::parallel);

// Markov step on V e^(1-V) for V normalised to mean one:
//   P(V e^(1-V) <= (1 - delta)^k) <= 1/k.
struct ConcentrationResult {
  double delta = 0.0;
  double k = 0.0;
  double threshold = 0.0;  // (1 - delta)^k
  double empirical_probability = 0.0;
  double standard_error = 0.0;  // binomial SE at probability 1/k
  double markov_bound = 0.0;    // 1/k
  bool vacuous = false;         // delta == 0: nothing to test
  bool holds = false;           // empirical <= 1/k + 3 SE
};

ConcentrationResult concentration_check(const Distribution& d, double k, std::size_t n,
                                        std::uint64_t seed, const BoundOptions& options = {});

// Every intermediate of the closeness bound, for V normalised to mean one.
struct Theorem2Trace {
  double expectation = 0.0;
  double geometric = 0.0;
  double delta = 0.0;
  double k_star = 0.0;  // (2 delta)^(-1/3)
  double k = 0.0;       // k used for the first links (defaults to k_star)
  double threshold = 0.0;
  double event_probability = 0.0;  // MC P(V e^(1-V) <= threshold)
  double event_standard_error = 0.0;
  double price = 0.0;              // p* = -W(-threshold / e), normalised
  double exact_sell_probability = 0.0;
  double mc_sell_probability = 0.0;
  double mc_sell_standard_error = 0.0;
  double u = 0.0;                  // u(V) / E[V]
  double revenue_bound = 0.0;      // p* (1 - 1/k)
  double corless_bound = 0.0;      // (1 - sqrt(2(1 - (1-delta)^k))) (1 - 1/k)
  double linear_bound = 0.0;       // (1 - sqrt(2 delta k)) (1 - 1/k)
  double k_star_bound = 0.0;       // previous line at k = k_star
  double final_bound = 0.0;        // 1 - 2 (2 delta)^(1/3)
  double statement_bound = 0.0;    // 1 - 2^(4/3) delta^(1/3)
  bool sell_probability_ok = false;
  bool revenue_ok = false;
  bool chain_monotone = false;
};

// Requires E finite, delta > 0 and k > 1 (k defaults to k_star, so delta must
// be below 1/2 then).
Theorem2Trace theorem2_proof_trace(const Distribution& d, std::optional<double> k, std::size_t n,
                                   std::uint64_t seed, const BoundOptions& options = {});

}  // namespace revbound
