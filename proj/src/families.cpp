#include "revbound/families.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>

#include "number_format.hpp"

namespace revbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

std::vector<double> Distribution::breakpoints() const {
  std::vector<double> out;
  for (const Atom& a : atoms()) out.push_back(a.location);
  const Support s = support();
  if (s.lower > 0.0) out.push_back(s.lower);
  if (std::isfinite(s.upper)) out.push_back(s.upper);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Distribution::is_discrete() const {
  double total = 0.0;
  for (const Atom& a : atoms()) total += a.mass;
  return total >= 1.0 - 1e-12;
}

// ---------------------------------------------------------------- PointMass

PointMass::PointMass(double value) : value_(value) {
  require(positive_finite(value), "pointmass: v must be positive");
}

std::string PointMass::describe() const {
  return "pointmass(v=" + detail::shortest(value_) + ")";
}

// ------------------------------------------------------------------ Uniform

Uniform::Uniform(double lower, double upper) : lower_(lower), upper_(upper) {
  require(std::isfinite(lower) && lower >= 0.0, "uniform: a must be nonnegative");
  require(std::isfinite(upper) && upper > lower, "uniform: b must exceed a");
}

double Uniform::cdf(double v) const {
  if (v <= lower_) return 0.0;
  if (v >= upper_) return 1.0;
  return (v - lower_) / (upper_ - lower_);
}

double Uniform::survival(double v) const {
  if (v <= lower_) return 1.0;
  if (v >= upper_) return 0.0;
  return (upper_ - v) / (upper_ - lower_);
}

double Uniform::quantile(double u) const { return lower_ + u * (upper_ - lower_); }

double Uniform::quantile_upper(double s) const { return upper_ - s * (upper_ - lower_); }

std::optional<PriceOptimum> Uniform::analytic_optimum() const {
  // p(b - p)/(b - a) on [a, b] peaks at b/2; below a every price sells.
  const double peak = 0.5 * upper_;
  if (peak >= lower_) return PriceOptimum{peak, peak * peak / (upper_ - lower_)};
  return PriceOptimum{lower_, lower_};
}

std::string Uniform::describe() const {
  return "uniform(a=" + detail::shortest(lower_) + ", b=" + detail::shortest(upper_) + ")";
}

// -------------------------------------------------------------- Exponential

Exponential::Exponential(double rate) : rate_(rate) {
  require(positive_finite(rate), "exponential: rate must be positive");
}

double Exponential::cdf(double v) const { return v <= 0.0 ? 0.0 : -std::expm1(-rate_ * v); }

double Exponential::survival(double v) const { return v <= 0.0 ? 1.0 : std::exp(-rate_ * v); }

double Exponential::quantile(double u) const { return -std::log1p(-u) / rate_; }

double Exponential::quantile_upper(double s) const { return -std::log(s) / rate_; }

Support Exponential::support() const { return {0.0, kInf}; }

std::optional<PriceOptimum> Exponential::analytic_optimum() const {
  return PriceOptimum{1.0 / rate_, std::exp(-1.0) / rate_};
}

std::string Exponential::describe() const {
  return "exponential(rate=" + detail::shortest(rate_) + ")";
}

// ------------------------------------------------------------------- Pareto

Pareto::Pareto(double alpha, double scale) : alpha_(alpha), scale_(scale) {
  require(positive_finite(alpha), "pareto: alpha must be positive");
  require(positive_finite(scale), "pareto: scale must be positive");
}

double Pareto::cdf(double v) const { return v <= scale_ ? 0.0 : -std::expm1(alpha_ * std::log(scale_ / v)); }

double Pareto::survival(double v) const { return v <= scale_ ? 1.0 : std::pow(scale_ / v, alpha_); }

double Pareto::quantile(double u) const { return scale_ * std::pow(1.0 - u, -1.0 / alpha_); }

double Pareto::quantile_upper(double s) const { return scale_ * std::pow(s, -1.0 / alpha_); }

Support Pareto::support() const { return {scale_, kInf}; }

std::optional<PriceOptimum> Pareto::analytic_optimum() const {
  // p^(1-alpha) scale^alpha is nonincreasing for alpha >= 1; for alpha < 1
  // the supremum is infinite and left to the grid search to report.
  if (alpha_ >= 1.0) return PriceOptimum{scale_, scale_};
  return std::nullopt;
}

std::string Pareto::describe() const {
  return "pareto(alpha=" + detail::shortest(alpha_) + ", scale=" + detail::shortest(scale_) + ")";
}

// ---------------------------------------------------------------- LogNormal

LogNormal::LogNormal(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  require(std::isfinite(mu), "lognormal: mu must be finite");
  require(positive_finite(sigma), "lognormal: sigma must be positive");
}

double LogNormal::cdf(double v) const {
  if (v <= 0.0) return 0.0;
  const double z = (std::log(v) - mu_) / (sigma_ * std::numbers::sqrt2);
  return 0.5 * boost::math::erfc(-z);
}

double LogNormal::survival(double v) const {
  if (v <= 0.0) return 1.0;
  const double z = (std::log(v) - mu_) / (sigma_ * std::numbers::sqrt2);
  return 0.5 * boost::math::erfc(z);
}

double LogNormal::quantile(double u) const {
  return std::exp(mu_ - sigma_ * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u));
}

double LogNormal::quantile_upper(double s) const {
  return std::exp(mu_ + sigma_ * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * s));
}

Support LogNormal::support() const { return {0.0, kInf}; }

std::string LogNormal::describe() const {
  return "lognormal(mu=" + detail::shortest(mu_) + ", sigma=" + detail::shortest(sigma_) + ")";
}

// ------------------------------------------------------------- EqualRevenue

EqualRevenue::EqualRevenue(double c) : c_(c) {
  require(positive_finite(c), "equalrev: c must be positive");
}

Support EqualRevenue::support() const { return {c_, kInf}; }

std::optional<PriceOptimum> EqualRevenue::analytic_optimum() const { return PriceOptimum{c_, c_}; }

std::string EqualRevenue::describe() const { return "equalrev(c=" + detail::shortest(c_) + ")"; }

// ----------------------------------------------------------------- Discrete

Discrete::Discrete(std::vector<Atom> atoms, std::string source) : source_(std::move(source)) {
  require(!atoms.empty(), "discrete law needs at least one atom");
  for (const Atom& a : atoms) {
    require(positive_finite(a.location), "discrete law: locations must be positive");
    require(positive_finite(a.mass), "discrete law: masses must be positive");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.location < y.location; });
  double total = 0.0;
  for (const Atom& a : atoms) {
    total += a.mass;
    if (!locations_.empty() && locations_.back() == a.location) {
      masses_.back() += a.mass;
    } else {
      locations_.push_back(a.location);
      masses_.push_back(a.mass);
    }
  }
  for (double& m : masses_) m /= total;

  const std::size_t n = masses_.size();
  below_.resize(n);
  above_.resize(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) below_[i] = (acc += masses_[i]);
  acc = 0.0;
  for (std::size_t i = n; i-- > 0;) above_[i] = (acc += masses_[i]);
}

double Discrete::cdf(double v) const {
  const auto idx = static_cast<std::size_t>(
      std::upper_bound(locations_.begin(), locations_.end(), v) - locations_.begin());
  if (idx == 0) return 0.0;
  if (idx == locations_.size()) return 1.0;
  return below_[idx - 1];
}

double Discrete::survival(double v) const {
  const auto idx = static_cast<std::size_t>(
      std::upper_bound(locations_.begin(), locations_.end(), v) - locations_.begin());
  if (idx == 0) return 1.0;
  return idx == locations_.size() ? 0.0 : above_[idx];
}

double Discrete::left_survival(double v) const {
  const auto idx = static_cast<std::size_t>(
      std::lower_bound(locations_.begin(), locations_.end(), v) - locations_.begin());
  if (idx == 0) return 1.0;
  return idx == locations_.size() ? 0.0 : above_[idx];
}

double Discrete::quantile(double u) const {
  const auto it = std::lower_bound(below_.begin(), below_.end(), u);
  if (it == below_.end()) return locations_.back();
  return locations_[static_cast<std::size_t>(it - below_.begin())];
}

double Discrete::quantile_upper(double s) const {
  // survival(locations_[i]) = above_[i + 1], zero for the last atom.
  const auto it = std::partition_point(above_.begin() + 1, above_.end(),
                                       [s](double tail) { return tail > s; });
  if (it == above_.end()) return locations_.back();
  return locations_[static_cast<std::size_t>(it - above_.begin()) - 1];
}

double Discrete::sample(Rng& rng) const { return quantile(rng.uniform_open()); }

std::vector<Atom> Discrete::atoms() const {
  std::vector<Atom> out;
  out.reserve(locations_.size());
  for (std::size_t i = 0; i < locations_.size(); ++i) out.push_back({locations_[i], masses_[i]});
  return out;
}

Support Discrete::support() const { return {locations_.front(), locations_.back()}; }

std::string Discrete::describe() const {
  if (!source_.empty()) return "empirical(file=\"" + source_ + "\")";
  if (locations_.size() == 1) return "pointmass(v=" + detail::shortest(locations_[0]) + ")";
  std::string out = "mix(";
  for (std::size_t i = 0; i < locations_.size(); ++i) {
    if (i) out += ", ";
    out += detail::shortest(masses_[i]) + "*pointmass(v=" + detail::shortest(locations_[i]) + ")";
  }
  return out + ")";
}

Discrete load_empirical(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("empirical: cannot read '" + path + "'");
  std::vector<Atom> atoms;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || end != token.data() + token.size()) {
      throw std::runtime_error("empirical: '" + path + "' line " + std::to_string(line_no) +
                               ": not a number");
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw std::runtime_error("empirical: '" + path + "' line " + std::to_string(line_no) +
                               ": values must be positive");
    }
    atoms.push_back({value, 1.0});
  }
  if (atoms.empty()) throw std::runtime_error("empirical: '" + path + "' has no values");
  return Discrete(std::move(atoms), path);
}

// ------------------------------------------------------------------- Scaled

Scaled::Scaled(double factor, DistributionPtr base) : factor_(factor), base_(std::move(base)) {
  require(positive_finite(factor), "scaled: factor must be positive");
  require(base_ != nullptr, "scaled: missing base law");
  for (const Atom& a : base_->atoms()) atom_map_.emplace_back(factor_ * a.location, a.location);
  std::sort(atom_map_.begin(), atom_map_.end());
}

double Scaled::unscale(double v) const {
  const auto it = std::lower_bound(atom_map_.begin(), atom_map_.end(), std::make_pair(v, -kInf));
  if (it != atom_map_.end() && it->first == v) return it->second;
  return v / factor_;
}

std::vector<Atom> Scaled::atoms() const {
  std::vector<Atom> out = base_->atoms();
  for (Atom& a : out) a.location *= factor_;
  return out;
}

Support Scaled::support() const {
  const Support s = base_->support();
  return {factor_ * s.lower, factor_ * s.upper};
}

std::vector<double> Scaled::breakpoints() const {
  std::vector<double> out = base_->breakpoints();
  for (double& b : out) b *= factor_;
  return out;
}

std::optional<PriceOptimum> Scaled::analytic_optimum() const {
  auto base = base_->analytic_optimum();
  if (!base) return std::nullopt;
  return PriceOptimum{factor_ * base->price, factor_ * base->value};
}

// Not part of the DSL grammar; informational only.
std::string Scaled::describe() const {
  return "scaled(factor=" + detail::shortest(factor_) + ", " + base_->describe() + ")";
}

}  // namespace revbound
