#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "revbound/bounds.hpp"
#include "revbound/rng.hpp"

namespace revbound {

// Random mixture of 1-4 components drawn from point masses, uniforms,
// Pareto (alpha in [0.3, 4]) and lognormals, as DSL text.
std::string random_mixture_spec(Rng& rng);

// Single law of the named family with random parameters ("mix" gives a
// random mixture).
std::string random_family_spec(Rng& rng, std::string_view family);

const std::vector<std::string>& suite_families();

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t count = 200;
  std::vector<std::string> families;  // empty: random mixtures
  BoundOptions bounds;
  Exec exec = Exec::parallel;
};

struct SuiteCase {
  std::size_t index = 0;
  std::string spec;
  BoundReport report;
  double thm1_margin = 0.0;  // thm1_slack / max(1, G)
  std::optional<double> thm2_margin;
  bool passed = false;
  std::string error;  // set when the analysis threw
};

struct SuiteSummary {
  std::vector<SuiteCase> cases;
  std::size_t passed = 0;
  double worst_thm1_margin = 0.0;
  std::size_t worst_thm1_index = 0;
  std::optional<double> worst_thm2_margin;
  std::size_t worst_thm2_index = 0;

  bool all_passed() const { return passed == cases.size(); }
};

// Case i is generated from derive_seed(seed, i), so a shorter run is a prefix
// of a longer one. Cases are analysed concurrently and reported in order.
SuiteSummary run_suite(const SuiteOptions& options);

}  // namespace revbound
