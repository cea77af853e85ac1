#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "revbound/distribution.hpp"

namespace revbound {

// Text DSL for valuation laws:
//
//   expr   := family '(' [param {',' param}] ')'
//           | 'mix' '(' term {',' term} ')'
//   term   := number '*' expr
//   param  := name '=' (number | "quoted string")
//
// Families: pointmass(v), uniform(a, b), exponential(rate),
// pareto(alpha, scale), lognormal(mu, sigma), equalrev(c),
// empirical(file="path"). Whitespace between tokens is ignored.

struct Parameter {
  std::string name;
  std::variant<double, std::string> value;

  bool operator==(const Parameter&) const = default;
};

struct WeightedSpec;

struct DistributionSpec {
  std::string family;              // "mix" for mixture nodes
  std::vector<Parameter> params;   // leaves only
  std::vector<WeightedSpec> terms; // mixtures only

  bool operator==(const DistributionSpec&) const;
};

struct WeightedSpec {
  double weight;
  DistributionSpec node;

  bool operator==(const WeightedSpec&) const = default;
};

inline bool DistributionSpec::operator==(const DistributionSpec&) const = default;

// Throws ParseError (with byte offset) on syntax errors, unknown families or
// parameters, and out-of-domain values.
DistributionSpec parse_spec(std::string_view text);

// Canonical text; parse_spec(print_spec(s)) == s.
std::string print_spec(const DistributionSpec& spec);

// Throws std::runtime_error when an empirical file is unreadable or holds a
// nonpositive value.
DistributionPtr build(const DistributionSpec& spec);

inline DistributionPtr parse_distribution(std::string_view text) { return build(parse_spec(text)); }

}  // namespace revbound
