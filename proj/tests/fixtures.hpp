#pragma once

#include <string>
#include <vector>

namespace fixtures {

// One law per family plus a few mixtures; reused across the suites.
inline const std::vector<std::string>& all_specs() {
  static const std::vector<std::string> specs{
      "pointmass(v=3)",
      "uniform(a=0, b=1)",
      "uniform(a=0.9, b=1.1)",
      "exponential(rate=1)",
      "exponential(rate=0.25)",
      "pareto(alpha=2.5, scale=1)",
      "pareto(alpha=0.5, scale=1)",
      "lognormal(mu=0, sigma=1)",
      "lognormal(mu=-0.125, sigma=0.5)",
      "equalrev(c=1)",
      "mix(0.5*pointmass(v=2), 0.5*uniform(a=0, b=1))",
      "mix(0.3*pareto(alpha=1.5, scale=1), 0.7*lognormal(mu=1, sigma=2))",
      "mix(0.2*pointmass(v=1), 0.5*pointmass(v=2.5), 0.3*pointmass(v=4))",
  };
  return specs;
}

// Laws with E[V] < infinity.
inline const std::vector<std::string>& finite_mean_specs() {
  static const std::vector<std::string> specs{
      "pointmass(v=3)",
      "uniform(a=0, b=1)",
      "uniform(a=0.9, b=1.1)",
      "exponential(rate=1)",
      "exponential(rate=0.25)",
      "pareto(alpha=2.5, scale=1)",
      "lognormal(mu=0, sigma=1)",
      "lognormal(mu=-0.125, sigma=0.5)",
      "mix(0.5*pointmass(v=2), 0.5*uniform(a=0, b=1))",
      "mix(0.3*pareto(alpha=1.5, scale=1), 0.7*lognormal(mu=1, sigma=2))",
      "mix(0.2*pointmass(v=1), 0.5*pointmass(v=2.5), 0.3*pointmass(v=4))",
  };
  return specs;
}

// Continuous laws (no atoms).
inline const std::vector<std::string>& atomless_specs() {
  static const std::vector<std::string> specs{
      "uniform(a=0, b=1)",
      "uniform(a=0.9, b=1.1)",
      "exponential(rate=1)",
      "pareto(alpha=2.5, scale=1)",
      "pareto(alpha=0.5, scale=1)",
      "lognormal(mu=0, sigma=1)",
      "equalrev(c=1)",
      "mix(0.3*pareto(alpha=1.5, scale=1), 0.7*lognormal(mu=1, sigma=2))",
  };
  return specs;
}

}  // namespace fixtures
