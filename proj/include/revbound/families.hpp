#pragma once

#include <string>
#include <utility>
#include <vector>

#include "revbound/distribution.hpp"

namespace revbound {

class PointMass final : public Distribution {
 public:
  explicit PointMass(double value);

  double cdf(double v) const override { return v >= value_ ? 1.0 : 0.0; }
  double survival(double v) const override { return v < value_ ? 1.0 : 0.0; }
  double left_survival(double v) const override { return v <= value_ ? 1.0 : 0.0; }
  double quantile(double) const override { return value_; }
  double quantile_upper(double) const override { return value_; }
  double sample(Rng&) const override { return value_; }
  std::vector<Atom> atoms() const override { return {{value_, 1.0}}; }
  Support support() const override { return {value_, value_}; }
  std::string describe() const override;

  double value() const { return value_; }

 private:
  double value_;
};

// Uniform on [lower, upper] with 0 <= lower < upper.
class Uniform final : public Distribution {
 public:
  Uniform(double lower, double upper);

  double cdf(double v) const override;
  double survival(double v) const override;
  double left_survival(double v) const override { return survival(v); }
  double quantile(double u) const override;
  double quantile_upper(double s) const override;
  Support support() const override { return {lower_, upper_}; }
  std::optional<PriceOptimum> analytic_optimum() const override;
  std::string describe() const override;

 private:
  double lower_;
  double upper_;
};

class Exponential final : public Distribution {
 public:
  explicit Exponential(double rate);

  double cdf(double v) const override;
  double survival(double v) const override;
  double left_survival(double v) const override { return survival(v); }
  double quantile(double u) const override;
  double quantile_upper(double s) const override;
  Support support() const override;
  std::optional<PriceOptimum> analytic_optimum() const override;
  std::string describe() const override;

 private:
  double rate_;
};

// P(V > v) = (scale / v)^alpha for v >= scale. E[V] is infinite for alpha <= 1
// and the revenue p * P(V > p) is unbounded for alpha < 1.
class Pareto final : public Distribution {
 public:
  Pareto(double alpha, double scale);

  double cdf(double v) const override;
  double survival(double v) const override;
  double left_survival(double v) const override { return survival(v); }
  double quantile(double u) const override;
  double quantile_upper(double s) const override;
  Support support() const override;
  std::optional<PriceOptimum> analytic_optimum() const override;
  std::string describe() const override;

 private:
  double alpha_;
  double scale_;
};

// log V ~ Normal(mu, sigma^2).
class LogNormal final : public Distribution {
 public:
  LogNormal(double mu, double sigma);

  double cdf(double v) const override;
  double survival(double v) const override;
  double left_survival(double v) const override { return survival(v); }
  double quantile(double u) const override;
  double quantile_upper(double s) const override;
  Support support() const override;
  std::string describe() const override;

 private:
  double mu_;
  double sigma_;
};

// Equal-revenue law with parameter c: cdf(p) = 0 for p <= c, 1 - c/p above.
// Every price p >= c earns exactly c.
class EqualRevenue final : public Distribution {
 public:
  explicit EqualRevenue(double c);

  double cdf(double v) const override { return v <= c_ ? 0.0 : 1.0 - c_ / v; }
  double survival(double v) const override { return v <= c_ ? 1.0 : c_ / v; }
  double left_survival(double v) const override { return survival(v); }
  double quantile(double u) const override { return c_ / (1.0 - u); }
  double quantile_upper(double s) const override { return c_ / s; }
  Support support() const override;
  std::optional<PriceOptimum> analytic_optimum() const override;
  std::string describe() const override;

  double c() const { return c_; }

 private:
  double c_;
};

// Finite discrete law. Duplicate locations are merged and masses normalised
// to sum to one. An empirical sample of size n is the discrete law putting
// mass (multiplicity / n) on each distinct value.
class Discrete final : public Distribution {
 public:
  explicit Discrete(std::vector<Atom> atoms, std::string source = {});

  double cdf(double v) const override;
  double survival(double v) const override;
  double left_survival(double v) const override;
  double quantile(double u) const override;
  double quantile_upper(double s) const override;
  double sample(Rng& rng) const override;
  std::vector<Atom> atoms() const override;
  Support support() const override;
  std::string describe() const override;

 private:
  std::vector<double> locations_;  // strictly increasing
  std::vector<double> masses_;
  std::vector<double> below_;      // below_[i] = sum of masses_[0..i]
  std::vector<double> above_;      // above_[i] = sum of masses_[i..n-1]
  std::string source_;
};

// Reads one positive value per line; '#' starts a comment.
Discrete load_empirical(const std::string& path);

// Convex combination of component laws.
class Mixture final : public Distribution {
 public:
  // Weights must be positive; they are normalised to sum to one.
  explicit Mixture(std::vector<std::pair<double, DistributionPtr>> components);

  double cdf(double v) const override;
  double survival(double v) const override;
  double left_survival(double v) const override;
  double quantile(double u) const override;
  double quantile_upper(double s) const override;
  double sample(Rng& rng) const override;
  std::vector<Atom> atoms() const override;
  Support support() const override;
  std::vector<double> breakpoints() const override;
  std::string describe() const override;

  const std::vector<std::pair<double, DistributionPtr>>& components() const {
    return components_;
  }

 private:
  template <class Reached>
  double snap_to_atom(double lo, double hi, Reached reached) const;

  std::vector<std::pair<double, DistributionPtr>> components_;
  std::vector<double> cumulative_;
  std::vector<Atom> atoms_;
};

// Law of factor * V.
class Scaled final : public Distribution {
 public:
  Scaled(double factor, DistributionPtr base);

  double cdf(double v) const override { return base_->cdf(unscale(v)); }
  double survival(double v) const override { return base_->survival(unscale(v)); }
  double left_survival(double v) const override { return base_->left_survival(unscale(v)); }
  double quantile(double u) const override { return factor_ * base_->quantile(u); }
  double quantile_upper(double s) const override { return factor_ * base_->quantile_upper(s); }
  double sample(Rng& rng) const override { return factor_ * base_->sample(rng); }
  std::vector<Atom> atoms() const override;
  Support support() const override;
  std::vector<double> breakpoints() const override;
  std::optional<PriceOptimum> analytic_optimum() const override;
  std::string describe() const override;

 private:
  // Maps a scaled atom location back to the exact base location, so atom
  // lookups survive the rounding in (factor * x) / factor.
  double unscale(double v) const;

  double factor_;
  DistributionPtr base_;
  std::vector<std::pair<double, double>> atom_map_;  // (scaled, base), sorted
};

}  // namespace revbound
