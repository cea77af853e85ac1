// Acceptance checks: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "revbound/bounds.hpp"
#include "revbound/dsl.hpp"
#include "revbound/errors.hpp"
#include "revbound/families.hpp"
#include "revbound/kernels.hpp"
#include "revbound/lambert_w.hpp"
#include "revbound/moments.hpp"
#include "revbound/pit.hpp"
#include "revbound/revenue.hpp"
#include "revbound/suite.hpp"

using namespace revbound;

namespace {

constexpr double kE = std::numbers::e;
constexpr double kEulerGamma = 0.57721566490153286061;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %-32s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

RevenueOptions grid_only() {
  RevenueOptions o;
  o.allow_analytic = false;
  return o;
}

void equal_revenue_equality() {
  const auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (double c : {0.1, 1.0, 10.0}) {
    const EqualRevenue d(c);
    const BoundOptions defaults;
    BoundOptions grid;
    grid.revenue = grid_only();
    // Closed-form optimum first, then the grid search on its own.
    for (const BoundOptions* options : std::initializer_list<const BoundOptions*>{&defaults, &grid}) {
      const BoundReport r = theorem1_report(d, *options);
      ok = ok && std::abs(r.u - c) <= 1e-6 * c && std::abs(r.geometric - kE * c) <= 1e-5 * c &&
           std::abs(r.u - r.geometric / kE) <= 1e-5 * c && r.equality_flag;
      if (options == &grid) detail += fmt("c=%g: u=%.9g G/e=%.9g flag=%d; ", c, r.u, r.thm1_lower, r.equality_flag);
    }
  }
  const double elapsed = seconds_since(start);
  report(1, "equal-revenue equality case", ok && elapsed < 1.0, detail + fmt("%.3fs", elapsed));
}

void exponential_fixture() {
  const auto start = Clock::now();
  const auto d = parse_distribution("exponential(rate=1)");
  const OptimalRevenue analytic = optimal_revenue(*d);
  const OptimalRevenue grid = optimal_revenue(*d, grid_only());
  const double g = geometric_expectation(*d);
  const double elapsed = seconds_since(start);
  bool ok = elapsed < 1.0 && std::abs(g - std::exp(-kEulerGamma)) <= 1e-5;
  for (const auto& r : {analytic, grid}) {
    ok = ok && std::abs(r.value - 0.3678794) <= 1e-5 && std::abs(r.argmax_price - 1.0) <= 1e-3;
  }
  report(2, "exponential fixture", ok,
         fmt("u=%.9g (grid %.9g at p=%.6g) G=%.9g %.3fs", analytic.value, grid.value, grid.argmax_price, g, elapsed));
}

void infinite_expectation() {
  const auto d = parse_distribution("equalrev(c=1)");
  const BoundReport r = bound_report(*d);
  bool rejected = false;
  std::string message;
  try {
    theorem2_report(*d);
  } catch (const InfiniteExpectationError& e) {
    rejected = true;
    message = e.what();
  }
  const bool ok = r.expectation == INFINITY && std::abs(r.u - 1.0) <= 1e-12 && rejected;
  report(3, "infinite expectation", ok,
         fmt("E=%g u=%.12g closeness bound rejected=%d (%s)", r.expectation, r.u, rejected, message.c_str()));
}

void randomised_suite() {
  const auto start = Clock::now();
  SuiteOptions options;
  options.count = 200;
  const SuiteSummary s = run_suite(options);
  const double elapsed = seconds_since(start);
  std::size_t finite = 0;
  bool ok = s.cases.size() == 200;
  for (const SuiteCase& c : s.cases) {
    ok = ok && c.error.empty() && c.report.thm1_slack >= -1e-6 * std::max(1.0, c.report.geometric);
    if (c.report.thm2_slack) {
      ++finite;
      ok = ok && *c.report.thm2_slack >= -1e-6 * std::max(1.0, c.report.expectation);
    }
  }
  report(4, "randomised bound suite", ok && elapsed < 60.0,
         fmt("%zu/%zu pass, %zu finite-mean; worst margins thm1=%.6g (case %zu) thm2=%.6g (case %zu); %.1fs",
             s.passed, s.cases.size(), finite, s.worst_thm1_margin, s.worst_thm1_index,
             s.worst_thm2_margin.value_or(NAN), s.worst_thm2_index, elapsed));
}

void probability_integral_transform() {
  const std::size_t n = 100000;
  bool ok = true;
  double worst_ks_ratio = 0.0;
  double worst_log_gap = 0.0;
  for (const char* spec : {"uniform(a=0, b=1)", "uniform(a=0.9, b=1.1)", "exponential(rate=1)",
                           "pareto(alpha=2.5, scale=1)", "pareto(alpha=0.5, scale=1)", "lognormal(mu=0, sigma=1)",
                           "equalrev(c=1)", "mix(0.3*pareto(alpha=1.5, scale=1), 0.7*lognormal(mu=1, sigma=2))"}) {
    const auto u = probability_integral_samples(*parse_distribution(spec), n, 2024);
    const double ks = ks_statistic_uniform(u);
    double mean = 0.0;
    for (double x : u) mean += std::log1p(-x);
    mean /= static_cast<double>(n);
    worst_ks_ratio = std::max(worst_ks_ratio, ks / ks_critical_1pct(n));
    worst_log_gap = std::max(worst_log_gap, std::abs(mean + 1.0));
    const bool this_ok = ks < ks_critical_1pct(n) && std::abs(mean + 1.0) <= 0.02;
    if (!this_ok) std::printf("       %s: KS=%.5g mean log(1-F)=%.5g\n", spec, ks, mean);
    ok = ok && this_ok;
  }
  report(5, "probability integral transform", ok,
         fmt("8 atomless laws; max KS/critical=%.3f, max |mean log(1-F) + 1|=%.4f", worst_ks_ratio, worst_log_gap));
}

// The random-price argument needs a continuous F: at an atom a price equal to
// the valuation never sells under strict acceptance. Laws with atoms are
// therefore judged under the left-limit convention and reported separately.
void random_price_check() {
  bool ok = true;
  double worst = INFINITY;
  double worst_atomic_strict = INFINITY;
  double worst_atomic_left = INFINITY;
  int atomless = 0;
  int atomic = 0;
  for (const char* spec : {"pointmass(v=3)", "uniform(a=0, b=1)", "uniform(a=0.9, b=1.1)", "exponential(rate=1)",
                           "pareto(alpha=2.5, scale=1)", "pareto(alpha=0.5, scale=1)", "lognormal(mu=0, sigma=1)",
                           "equalrev(c=1)", "mix(0.5*pointmass(v=2), 0.5*uniform(a=0, b=1))",
                           "mix(0.3*pareto(alpha=1.5, scale=1), 0.7*lognormal(mu=1, sigma=2))"}) {
    const auto d = parse_distribution(spec);
    const MeanEstimate r = random_price_revenue(*d, 1000000, 99);
    const QuadratureEstimate log_g = log_expectation_estimate(*d);
    const double lower = std::exp(log_g.value) / kE;
    const double floor = lower - lower * log_g.error;
    const double margin = r.mean - (floor - 3.0 * r.standard_error);
    if (d->is_atomless()) {
      ++atomless;
      worst = std::min(worst, margin);
      ok = ok && margin >= 0.0;
      continue;
    }
    ++atomic;
    const MeanEstimate left = kernels::monte_carlo_mean(
        1000000, 99,
        [&d](Rng& rng) {
          const double p = d->sample(rng);
          return p * d->left_survival(p);
        },
        Exec::parallel);
    const double left_margin = left.mean - (floor - 3.0 * left.standard_error);
    worst_atomic_strict = std::min(worst_atomic_strict, margin);
    worst_atomic_left = std::min(worst_atomic_left, left_margin);
    ok = ok && left_margin >= 0.0;
  }
  report(6, "random-price revenue", ok,
         fmt("%d atomless laws at n=1e6, worst margin over G/e - 3SE = %.6g; %d laws with atoms: "
             "strict acceptance %.6g (a price at an atom never sells), left limit %.6g",
             atomless, worst, atomic, worst_atomic_strict, worst_atomic_left));
}

void lambert_w_checks() {
  const double branch = -1.0 / kE;
  double worst = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    // Half the points on [-1/e, 0], half log-spaced over (0, 1e3].
    const double x = i < n / 2 ? branch + (0.0 - branch) * i / (n / 2.0)
                               : std::pow(10.0, -9.0 + 12.0 * (i - n / 2) / (n / 2.0 - 1.0));
    const double w = lambert_w(x);
    worst = std::max(worst, std::abs(w * std::exp(w) - x) / std::max(1.0, std::abs(x)));
  }
  const double at_branch = lambert_w(branch);
  bool upper_ok = true;
  for (int i = 0; i <= n; ++i) upper_ok = upper_ok && lambert_w_upper_check(branch + (0.0 - branch) * i / n);
  const bool ok = worst <= 1e-12 && std::abs(at_branch + 1.0) <= 1e-7 && upper_ok;
  report(7, "Lambert W", ok,
         fmt("max scaled residual=%.3g on 1e4 points; W(-1/e)=%.10f; upper bound on [-1/e,0] %s", worst,
             at_branch, upper_ok ? "holds" : "violated"));
}

void markov_concentration() {
  bool ok = true;
  std::string detail;
  for (const char* spec : {"uniform(a=0.9, b=1.1)", "lognormal(mu=-0.125, sigma=0.5)"}) {
    for (double k : {2.0, 4.0, 8.0}) {
      const ConcentrationResult r = concentration_check(*parse_distribution(spec), k, 1000000, 5);
      ok = ok && !r.vacuous && r.empirical_probability <= 1.0 / k + 3.0 * r.standard_error;
      detail += fmt("%.4g ", r.empirical_probability);
    }
  }
  report(8, "Markov concentration", ok, "frequencies vs 1/k at k=2,4,8: " + detail);
}

void discrete_oracle() {
  std::mt19937_64 gen(9);
  int matched = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 12)(gen);
    std::vector<int> cuts{0, 1024};
    while (static_cast<int>(cuts.size()) < n + 1) {
      const int c = std::uniform_int_distribution<int>(1, 1023)(gen);
      if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    oracle::Law law;
    std::vector<Atom> atoms;
    for (int i = 0; i < n; ++i) {
      const double x = std::uniform_real_distribution<double>(0.05, 20.0)(gen);
      const double w = (cuts[i + 1] - cuts[i]) / 1024.0;
      law.x.push_back(x);
      law.p.push_back(w);
      atoms.push_back({x, w});
    }
    if (optimal_revenue(Discrete(atoms)).value == oracle::best_atom_revenue(law)) ++matched;
  }
  report(9, "discrete oracle", matched == 100, fmt("%d/100 laws match exact enumeration bit for bit", matched));
}

void closeness_trace() {
  const auto d = parse_distribution("uniform(a=0.9, b=1.1)");
  const BoundReport r = theorem2_report(*d);
  const Theorem2Trace t = theorem2_proof_trace(*d, std::nullopt, 1000000, 8);
  const bool ok = std::abs(*r.delta - 1.67e-3) <= 1e-4 && std::abs(r.u - 0.9) <= 1e-6 &&
                  std::abs(*r.thm2_lower - 0.70) <= 0.01 && theorem2_holds(r) && t.chain_monotone &&
                  t.sell_probability_ok && t.revenue_ok;
  report(10, "closeness bound trace", ok,
         fmt("delta=%.6g u=%.9g lower=%.6g slack=%.6g; k*=%.4g p*=%.6g chain %s", *r.delta, r.u, *r.thm2_lower,
             *r.thm2_slack, t.k_star, t.price, t.chain_monotone ? "monotone" : "broken"));
}

}  // namespace

int main() {
  const std::vector<void (*)()> checks{equal_revenue_equality, exponential_fixture, infinite_expectation,
                                       randomised_suite,       probability_integral_transform,
                                       random_price_check,     lambert_w_checks,
                                       markov_concentration,   discrete_oracle,
                                       closeness_trace};
  for (std::size_t i = 0; i < checks.size(); ++i) {
    try {
      checks[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), "exception", false, e.what());
    }
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(checks.size()) - failures, checks.size());
  return failures == 0 ? 0 : 1;
}
