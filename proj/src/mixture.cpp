#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "number_format.hpp"
#include "revbound/families.hpp"

namespace revbound {

namespace {

constexpr int kMaxBisections = 200;
// Relative precision near machine epsilon: tighter than 1e-12 absolute below
// ~1e3, and the best a double can resolve above it.
bool bracket_done(double lo, double hi) {
  return hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi;
}

// Geometric midpoint while the bracket spans more than a factor of two.
double midpoint(double lo, double hi) {
  if (lo > 0.0 && hi > 2.0 * lo) return std::sqrt(lo) * std::sqrt(hi);
  return lo + 0.5 * (hi - lo);
}

}  // namespace

Mixture::Mixture(std::vector<std::pair<double, DistributionPtr>> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("mix: needs at least one component");
  double total = 0.0;
  for (const auto& [w, d] : components_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("mix: weights must be positive");
    if (!d) throw std::invalid_argument("mix: missing component");
    total += w;
  }
  double acc = 0.0;
  for (auto& [w, d] : components_) {
    w /= total;
    cumulative_.push_back(acc += w);
  }
  cumulative_.back() = 1.0;

  for (const auto& [w, d] : components_) {
    for (const Atom& a : d->atoms()) atoms_.push_back({a.location, w * a.mass});
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& x, const Atom& y) { return x.location < y.location; });
  std::vector<Atom> merged;
  for (const Atom& a : atoms_) {
    if (!merged.empty() && merged.back().location == a.location) {
      merged.back().mass += a.mass;
    } else {
      merged.push_back(a);
    }
  }
  atoms_ = std::move(merged);
}

double Mixture::cdf(double v) const {
  double acc = 0.0;
  for (const auto& [w, d] : components_) acc += w * d->cdf(v);
  return acc;
}

double Mixture::survival(double v) const {
  double acc = 0.0;
  for (const auto& [w, d] : components_) acc += w * d->survival(v);
  return acc;
}

double Mixture::left_survival(double v) const {
  double acc = 0.0;
  for (const auto& [w, d] : components_) acc += w * d->left_survival(v);
  return acc;
}

// The mixture quantile lies between the smallest and largest component
// quantiles at the same level; bisect the mixture CDF inside that bracket.
// An atom inside the final bracket (lo, hi] that already satisfies the
// target is the exact generalized inverse; prefer it over the bracket end.
template <class Reached>
double Mixture::snap_to_atom(double lo, double hi, Reached reached) const {
  auto it = std::upper_bound(atoms_.begin(), atoms_.end(), lo,
                             [](double x, const Atom& a) { return x < a.location; });
  for (; it != atoms_.end() && it->location <= hi; ++it) {
    if (reached(it->location)) return it->location;
  }
  return hi;
}

double Mixture::quantile(double u) const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& [w, d] : components_) {
    const double q = d->quantile(u);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  if (cdf(lo) >= u) return lo;
  if (!std::isfinite(hi)) return hi;
  for (int it = 0; it < kMaxBisections && !bracket_done(lo, hi); ++it) {
    const double mid = midpoint(lo, hi);
    if (cdf(mid) >= u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return snap_to_atom(lo, hi, [&](double a) { return cdf(a) >= u; });
}

double Mixture::quantile_upper(double s) const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& [w, d] : components_) {
    const double q = d->quantile_upper(s);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  if (survival(lo) <= s) return lo;
  if (!std::isfinite(hi)) return hi;
  for (int it = 0; it < kMaxBisections && !bracket_done(lo, hi); ++it) {
    const double mid = midpoint(lo, hi);
    if (survival(mid) <= s) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return snap_to_atom(lo, hi, [&](double a) { return survival(a) <= s; });
}

double Mixture::sample(Rng& rng) const {
  const double u = rng.uniform_open();
  const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
  return components_[std::min(idx, components_.size() - 1)].second->sample(rng);
}

std::vector<Atom> Mixture::atoms() const { return atoms_; }

Support Mixture::support() const {
  Support out{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& [w, d] : components_) {
    const Support s = d->support();
    out.lower = std::min(out.lower, s.lower);
    out.upper = std::max(out.upper, s.upper);
  }
  return out;
}

std::vector<double> Mixture::breakpoints() const {
  std::vector<double> out;
  for (const auto& [w, d] : components_) {
    const auto b = d->breakpoints();
    out.insert(out.end(), b.begin(), b.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string Mixture::describe() const {
  std::string out = "mix(";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += ", ";
    out += detail::shortest(components_[i].first) + "*" + components_[i].second->describe();
  }
  return out + ")";
}

}  // namespace revbound
