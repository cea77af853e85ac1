#include "revbound/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "revbound/dsl.hpp"

namespace revbound {

namespace {

// Four significant digits keep the generated specs readable.
std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform_open(); }

double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

std::string leaf(Rng& rng, std::string_view family) {
  if (family == "pointmass") return "pointmass(v=" + num(log_uniform(rng, 0.1, 10.0)) + ")";
  if (family == "uniform") {
    const double a = uniform(rng, 0.0, 5.0);
    return "uniform(a=" + num(a) + ", b=" + num(a + uniform(rng, 0.1, 5.0)) + ")";
  }
  if (family == "exponential") return "exponential(rate=" + num(log_uniform(rng, 0.1, 10.0)) + ")";
  if (family == "pareto") {
    return "pareto(alpha=" + num(uniform(rng, 0.3, 4.0)) + ", scale=" + num(log_uniform(rng, 0.1, 10.0)) + ")";
  }
  if (family == "lognormal") {
    return "lognormal(mu=" + num(uniform(rng, -1.0, 1.0)) + ", sigma=" + num(uniform(rng, 0.1, 1.5)) + ")";
  }
  if (family == "equalrev") return "equalrev(c=" + num(log_uniform(rng, 0.1, 10.0)) + ")";
  throw std::invalid_argument("unknown family '" + std::string(family) + "'");
}

}  // namespace

const std::vector<std::string>& suite_families() {
  static const std::vector<std::string> families = {"pointmass", "uniform",  "exponential", "pareto",
                                                    "lognormal", "equalrev", "mix"};
  return families;
}

std::string random_mixture_spec(Rng& rng) {
  static constexpr std::string_view kinds[] = {"pointmass", "uniform", "pareto", "lognormal"};
  const auto components = 1 + static_cast<std::size_t>(rng.uniform_open() * 4.0);
  std::string out = "mix(";
  for (std::size_t i = 0; i < components; ++i) {
    if (i) out += ", ";
    const auto kind = kinds[static_cast<std::size_t>(rng.uniform_open() * 4.0)];
    out += num(uniform(rng, 0.1, 1.0)) + "*" + leaf(rng, kind);
  }
  return out + ")";
}

std::string random_family_spec(Rng& rng, std::string_view family) {
  if (family == "mix") return random_mixture_spec(rng);
  return leaf(rng, family);
}

SuiteSummary run_suite(const SuiteOptions& options) {
  for (const auto& f : options.families) {
    if (std::find(suite_families().begin(), suite_families().end(), f) == suite_families().end()) {
      throw std::invalid_argument("unknown family '" + f + "'");
    }
  }
  SuiteSummary summary;
  summary.cases.resize(options.count);
  BoundOptions inner = options.bounds;
  inner.exec = options.exec == Exec::parallel ? Exec::serial : options.bounds.exec;

  auto run_case = [&](std::size_t i) {
    SuiteCase& c = summary.cases[i];
    c.index = i;
    Rng rng(derive_seed(options.seed, i));
    if (options.families.empty()) {
      c.spec = random_mixture_spec(rng);
    } else {
      const auto pick = static_cast<std::size_t>(rng.uniform_open() * static_cast<double>(options.families.size()));
      c.spec = random_family_spec(rng, options.families[pick]);
    }
    try {
      const DistributionPtr d = parse_distribution(c.spec);
      c.report = bound_report(*d, inner);
      c.thm1_margin = c.report.thm1_slack / std::max(1.0, c.report.geometric);
      if (c.report.thm2_slack) c.thm2_margin = *c.report.thm2_slack / std::max(1.0, c.report.expectation);
      c.passed = theorem1_holds(c.report) && theorem2_holds(c.report);
    } catch (const std::exception& e) {
      c.error = e.what();
      c.passed = false;
    }
  };

  const auto count = static_cast<std::int64_t>(options.count);
  if (options.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) run_case(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < options.count; ++i) run_case(i);
  }

  bool first = true;
  for (const SuiteCase& c : summary.cases) {
    if (c.passed) ++summary.passed;
    if (!c.error.empty()) continue;
    if (first || c.thm1_margin < summary.worst_thm1_margin) {
      summary.worst_thm1_margin = c.thm1_margin;
      summary.worst_thm1_index = c.index;
      first = false;
    }
    if (c.thm2_margin && (!summary.worst_thm2_margin || *c.thm2_margin < *summary.worst_thm2_margin)) {
      summary.worst_thm2_margin = c.thm2_margin;
      summary.worst_thm2_index = c.index;
    }
  }
  return summary;
}

}  // namespace revbound
