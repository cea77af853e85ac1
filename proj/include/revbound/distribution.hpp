#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "revbound/rng.hpp"

namespace revbound {

struct Atom {
  double location;
  double mass;
};

struct Support {
  double lower;  // 0 when the law has no positive lower bound
  double upper;  // +inf for unbounded laws
};

// Closed-form maximiser of p * P(V >= p), for families that have one.
struct PriceOptimum {
  double price;
  double value;
};

// A law of a positive valuation V. Implementations are immutable after
// construction, so every method may be called concurrently.
//
// Conventions:
//   cdf(v)           = P(V <= v)
//   survival(v)      = P(V >  v)
//   left_survival(v) = P(V >= v)
//   quantile(u)      = inf{v : cdf(v) >= u},       u in (0, 1)
//   quantile_upper(s)= inf{v : survival(v) <= s},  s in (0, 1)
//
// quantile_upper(s) equals quantile(1 - s) in exact arithmetic; families
// override it so that the far upper tail (s below 2^-53) stays resolvable.
class Distribution {
 public:
  virtual ~Distribution() = default;

  virtual double cdf(double v) const = 0;
  virtual double survival(double v) const = 0;
  virtual double left_survival(double v) const = 0;
  virtual double quantile(double u) const = 0;
  virtual double quantile_upper(double s) const { return quantile(1.0 - s); }

  virtual double sample(Rng& rng) const { return quantile(rng.uniform_open()); }

  virtual std::vector<Atom> atoms() const { return {}; }
  virtual Support support() const = 0;

  // Valuations where the quantile function may jump or kink: atoms and
  // component support endpoints. Quadrature splits its panels there.
  virtual std::vector<double> breakpoints() const;

  virtual std::optional<PriceOptimum> analytic_optimum() const { return std::nullopt; }

  // Canonical DSL text for this law.
  virtual std::string describe() const = 0;

  // Atom masses account for all probability (within 1e-12).
  bool is_discrete() const;
  bool is_atomless() const { return atoms().empty(); }
};

using DistributionPtr = std::shared_ptr<const Distribution>;

}  // namespace revbound
