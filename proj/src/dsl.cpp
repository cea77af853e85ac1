#include "revbound/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <optional>

#include "number_format.hpp"
#include "revbound/errors.hpp"
#include "revbound/families.hpp"

namespace revbound {

namespace {

enum class Kind { number, text };

struct ParamRule {
  const char* name;
  Kind kind;
};

struct FamilyRule {
  const char* name;
  std::vector<ParamRule> params;
};

const std::vector<FamilyRule>& family_rules() {
  static const std::vector<FamilyRule> rules = {
      {"pointmass", {{"v", Kind::number}}},
      {"uniform", {{"a", Kind::number}, {"b", Kind::number}}},
      {"exponential", {{"rate", Kind::number}}},
      {"pareto", {{"alpha", Kind::number}, {"scale", Kind::number}}},
      {"lognormal", {{"mu", Kind::number}, {"sigma", Kind::number}}},
      {"equalrev", {{"c", Kind::number}}},
      {"empirical", {{"file", Kind::text}}},
  };
  return rules;
}

const FamilyRule* find_family(std::string_view name) {
  for (const auto& rule : family_rules()) {
    if (name == rule.name) return &rule;
  }
  return nullptr;
}

double number_of(const DistributionSpec& spec, std::string_view name) {
  for (const auto& p : spec.params) {
    if (p.name == name) return std::get<double>(p.value);
  }
  throw std::logic_error("missing parameter " + std::string(name));
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  DistributionSpec parse() {
    skip_space();
    if (at_end()) fail("empty distribution spec");
    DistributionSpec spec = expr();
    skip_space();
    if (!at_end()) fail("unexpected trailing input");
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    throw ParseError(message, at);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(text_[start]))) {
      pos_ = start;
      fail(std::string("expected ") + what);
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  double number() {
    skip_space();
    const std::size_t start = pos_;
    if (peek() == '+' || peek() == '-') ++pos_;
    const std::size_t mantissa = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    const std::size_t digits = pos_ - mantissa;
    if (digits == 0 || (digits == 1 && text_[mantissa] == '.')) {
      pos_ = start;
      fail("expected decimal number");
    }
    if (peek() == 'e' || peek() == 'E') {
      const std::size_t exp_start = pos_;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        pos_ = exp_start;
        fail("malformed exponent");
      }
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    const std::size_t parse_from = text_[start] == '+' ? start + 1 : start;
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text_.data() + parse_from, text_.data() + pos_, value);
    if (ec != std::errc() || end != text_.data() + pos_ || !std::isfinite(value)) {
      fail_at("number out of range", start);
    }
    return value;
  }

  std::string quoted() {
    skip_space();
    if (peek() != '"') fail("expected quoted string");
    const std::size_t start = ++pos_;
    while (!at_end() && peek() != '"') ++pos_;
    if (at_end()) fail_at("unterminated string", start - 1);
    std::string out(text_.substr(start, pos_ - start));
    ++pos_;
    return out;
  }

  DistributionSpec expr() {
    skip_space();
    const std::size_t name_at = pos_;
    DistributionSpec spec;
    spec.family = identifier("family name");
    if (spec.family == "mix") {
      mixture_terms(spec);
      return spec;
    }
    const FamilyRule* rule = find_family(spec.family);
    if (!rule) fail_at("unknown family '" + spec.family + "'", name_at);
    family_params(spec, *rule);
    return spec;
  }

  void mixture_terms(DistributionSpec& spec) {
    expect('(');
    do {
      skip_space();
      const std::size_t weight_at = pos_;
      const double weight = number();
      if (!(weight > 0.0)) fail_at("mixture weights must be positive", weight_at);
      expect('*');
      spec.terms.push_back({weight, expr()});
      skip_space();
    } while (peek() == ',' && ++pos_);
    expect(')');
  }

  void family_params(DistributionSpec& spec, const FamilyRule& rule) {
    expect('(');
    skip_space();
    std::vector<std::size_t> value_at;
    if (peek() != ')') {
      do {
        skip_space();
        const std::size_t name_at = pos_;
        std::string name = identifier("parameter name");
        const auto prule = std::find_if(rule.params.begin(), rule.params.end(),
                                        [&](const ParamRule& r) { return name == r.name; });
        if (prule == rule.params.end()) {
          fail_at("unknown parameter '" + name + "' for " + rule.name, name_at);
        }
        for (const auto& p : spec.params) {
          if (p.name == name) fail_at("duplicate parameter '" + name + "'", name_at);
        }
        expect('=');
        skip_space();
        value_at.push_back(pos_);
        if (prule->kind == Kind::number) {
          spec.params.push_back({std::move(name), number()});
        } else {
          spec.params.push_back({std::move(name), quoted()});
        }
        skip_space();
      } while (peek() == ',' && ++pos_);
    }
    skip_space();
    const std::size_t close_at = pos_;
    expect(')');
    for (const auto& r : rule.params) {
      const bool present = std::any_of(spec.params.begin(), spec.params.end(),
                                       [&](const Parameter& p) { return p.name == r.name; });
      if (!present) {
        fail_at(std::string("missing parameter '") + r.name + "' for " + rule.name, close_at);
      }
    }
    validate(spec, value_at);
  }

  // Parameter domains; errors point at the offending value.
  void validate(const DistributionSpec& spec, const std::vector<std::size_t>& value_at) const {
    auto offset_of = [&](std::string_view name) {
      for (std::size_t i = 0; i < spec.params.size(); ++i) {
        if (spec.params[i].name == name) return value_at[i];
      }
      return pos_;
    };
    auto positive = [&](const char* name) {
      if (!(number_of(spec, name) > 0.0)) {
        fail_at(spec.family + ": " + name + " must be positive", offset_of(name));
      }
    };
    const std::string& f = spec.family;
    if (f == "pointmass") {
      positive("v");
    } else if (f == "uniform") {
      if (number_of(spec, "a") < 0.0) fail_at("uniform: a must be nonnegative", offset_of("a"));
      if (!(number_of(spec, "b") > number_of(spec, "a"))) {
        fail_at("uniform: b must exceed a", offset_of("b"));
      }
    } else if (f == "exponential") {
      positive("rate");
    } else if (f == "pareto") {
      positive("alpha");
      positive("scale");
    } else if (f == "lognormal") {
      positive("sigma");
    } else if (f == "equalrev") {
      positive("c");
    } else if (f == "empirical") {
      for (const auto& p : spec.params) {
        if (p.name == "file" && std::get<std::string>(p.value).empty()) {
          fail_at("empirical: file must be nonempty", offset_of("file"));
        }
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

DistributionSpec parse_spec(std::string_view text) { return Parser(text).parse(); }

std::string print_spec(const DistributionSpec& spec) {
  std::string out = spec.family + "(";
  if (spec.family == "mix") {
    for (std::size_t i = 0; i < spec.terms.size(); ++i) {
      if (i) out += ", ";
      out += detail::shortest(spec.terms[i].weight) + "*" + print_spec(spec.terms[i].node);
    }
  } else {
    for (std::size_t i = 0; i < spec.params.size(); ++i) {
      if (i) out += ", ";
      const auto& p = spec.params[i];
      out += p.name + "=";
      if (const double* x = std::get_if<double>(&p.value)) {
        out += detail::shortest(*x);
      } else {
        out += "\"" + std::get<std::string>(p.value) + "\"";
      }
    }
  }
  return out + ")";
}

DistributionPtr build(const DistributionSpec& spec) {
  const std::string& f = spec.family;
  if (f == "mix") {
    std::vector<std::pair<double, DistributionPtr>> components;
    components.reserve(spec.terms.size());
    for (const auto& term : spec.terms) components.emplace_back(term.weight, build(term.node));
    return std::make_shared<Mixture>(std::move(components));
  }
  auto num = [&](const char* name) { return number_of(spec, name); };
  if (f == "pointmass") return std::make_shared<PointMass>(num("v"));
  if (f == "uniform") return std::make_shared<Uniform>(num("a"), num("b"));
  if (f == "exponential") return std::make_shared<Exponential>(num("rate"));
  if (f == "pareto") return std::make_shared<Pareto>(num("alpha"), num("scale"));
  if (f == "lognormal") return std::make_shared<LogNormal>(num("mu"), num("sigma"));
  if (f == "equalrev") return std::make_shared<EqualRevenue>(num("c"));
  if (f == "empirical") {
    for (const auto& p : spec.params) {
      if (p.name == "file") return std::make_shared<Discrete>(load_empirical(std::get<std::string>(p.value)));
    }
  }
  throw std::invalid_argument("cannot build family '" + f + "'");
}

}  // namespace revbound
