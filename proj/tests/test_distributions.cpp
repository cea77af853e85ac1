#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "doctest.h"
#include "fixtures.hpp"
#include "revbound/dsl.hpp"
#include "revbound/errors.hpp"
#include "revbound/families.hpp"
#include "revbound/kernels.hpp"
#include "revbound/pit.hpp"

using namespace revbound;

namespace {

std::size_t error_offset(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  FAIL("no parse error for " << text);
  return 0;
}

// KS distance between the sample and d, counting atoms on both sides of each jump.
double ks_distance(const Distribution& d, std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    const double below = static_cast<double>(i) / n;
    const double upto = static_cast<double>(j) / n;
    worst = std::max(worst, std::abs(upto - d.cdf(xs[i])));
    worst = std::max(worst, std::abs(below - (1.0 - d.left_survival(xs[i]))));
    i = j;
  }
  return worst;
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& body) {
    path = std::filesystem::temp_directory_path() /
           ("revbound_empirical_" + std::to_string(std::hash<std::string>{}(body)) + ".txt");
    std::ofstream(path) << body;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("spec examples") {
  auto er = parse_spec("equalrev(c=1)");
  CHECK(er.family == "equalrev");
  REQUIRE(er.params.size() == 1);
  CHECK(std::get<double>(er.params[0].value) == 1.0);

  auto mix = parse_spec("mix(0.5*pointmass(v=2), 0.5*uniform(a=0,b=1))");
  CHECK(mix.family == "mix");
  REQUIRE(mix.terms.size() == 2);
  CHECK(mix.terms[0].weight == 0.5);
  CHECK(mix.terms[1].node.family == "uniform");

  CHECK_NOTHROW(parse_distribution("pareto(alpha=0.5, scale=1)"));

  CHECK(parse_distribution("equalrev(c=2)")->cdf(4.0) == 0.5);
  auto pm = parse_distribution("pointmass(v=3)");
  CHECK(pm->left_survival(3.0) == 1.0);
  CHECK(pm->survival(3.0) == 0.0);
  CHECK(parse_distribution("mix(0.5*pointmass(v=1), 0.5*pointmass(v=2))")->quantile(0.75) == 2.0);
}

TEST_CASE("whitespace is insignificant") {
  CHECK(parse_spec(" mix ( 0.5 * pointmass ( v = 2 ) ,0.5*uniform(a=0,b=1) ) ") ==
        parse_spec("mix(0.5*pointmass(v=2),0.5*uniform(a=0,b=1))"));
  CHECK(parse_spec("lognormal(sigma=2, mu=-1e-3)") == parse_spec("lognormal( sigma = 2,mu=-0.001 )"));
}

TEST_CASE("round trip through the printer") {
  std::vector<std::string> texts = fixtures::all_specs();
  texts.push_back("mix(1e-3*pointmass(v=0.1), 2*mix(1*exponential(rate=3), 3*equalrev(c=0.7)))");
  texts.push_back("empirical(file=\"some dir/values.txt\")");
  texts.push_back("uniform(b=1.0000000000000002, a=0.1)");
  for (const auto& t : texts) {
    CAPTURE(t);
    const auto ast = parse_spec(t);
    const auto printed = print_spec(ast);
    CHECK(parse_spec(printed) == ast);
    CHECK(print_spec(parse_spec(printed)) == printed);
  }
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK(error_offset("mix(0.5*") == 8);
  CHECK(error_offset("") == 0);
  CHECK(error_offset("gamma(k=1)") == 0);
  CHECK(error_offset("mix(0.5*pointmass(v=1), 0.5*weibull(k=2))") == 28);
  CHECK(error_offset("pointmass(w=1)") == 10);
  CHECK(error_offset("pointmass(v=1, v=2)") == 15);
  CHECK(error_offset("pointmass(v=0)") == 12);
  CHECK(error_offset("uniform(a=2, b=1)") == 15);
  CHECK(error_offset("pareto(alpha=1)") == 14);
  CHECK(error_offset("mix(-0.5*pointmass(v=1))") == 4);
  CHECK(error_offset("mix(0*pointmass(v=1))") == 4);
  CHECK(error_offset("equalrev(c=1) x") == 14);
  CHECK(error_offset("equalrev(c=abc)") == 11);
  CHECK(error_offset("exponential(rate=-1)") == 17);
  CHECK(error_offset("empirical(file=\"\")") == 15);
}

TEST_CASE("quantile is a monotone generalised inverse") {
  for (const auto& spec : fixtures::all_specs()) {
    CAPTURE(spec);
    const auto d = parse_distribution(spec);
    double previous = 0.0;
    for (int i = 1; i < 4000; ++i) {
      const double u = i / 4000.0;
      const double q = d->quantile(u);
      CHECK(q >= previous);
      CHECK(d->cdf(q) >= u - 1e-12);
      previous = q;
    }
    for (int k = 2; k < 50; ++k) {
      const double s = std::ldexp(1.0, -k);
      // The exact inverse is rarely representable: allow a few ulps in v.
      const double q = d->quantile_upper(s);
      CHECK(d->survival(q * (1 + 8e-16)) <= s * (1 + 1e-9));
    }
  }
}

TEST_CASE("survival conventions agree with atoms") {
  for (const auto& spec : fixtures::all_specs()) {
    CAPTURE(spec);
    const auto d = parse_distribution(spec);
    for (const Atom& a : d->atoms()) {
      CHECK(d->left_survival(a.location) - d->survival(a.location) == doctest::Approx(a.mass).epsilon(1e-12));
    }
    for (int i = 1; i < 200; ++i) {
      const double v = d->quantile(i / 200.0) * 1.001;
      CHECK(d->cdf(v) + d->survival(v) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(d->left_survival(v) >= d->survival(v));
    }
  }
}

TEST_CASE("samples match the cdf") {
  for (const auto& spec : fixtures::all_specs()) {
    CAPTURE(spec);
    const auto d = parse_distribution(spec);
    const auto xs = kernels::draw_samples(*d, 100000, 17, Exec::parallel);
    CHECK(ks_distance(*d, xs) < 0.01);
  }
}

TEST_CASE("scaling multiplies the quantile") {
  for (const auto& spec : fixtures::all_specs()) {
    const auto base = parse_distribution(spec);
    for (double a : {0.5, 2.0, 10.0}) {
      CAPTURE(spec);
      CAPTURE(a);
      const Scaled scaled(a, base);
      for (int i = 1; i < 1000; ++i) {
        const double u = i / 1000.0;
        CHECK(scaled.quantile(u) == doctest::Approx(a * base->quantile(u)).epsilon(1e-9));
      }
      for (const Atom& atom : base->atoms()) {
        CHECK(scaled.left_survival(a * atom.location) == doctest::Approx(base->left_survival(atom.location)));
        CHECK(scaled.survival(a * atom.location) == doctest::Approx(base->survival(atom.location)));
      }
    }
  }
}

TEST_CASE("discrete laws merge and normalise atoms") {
  const Discrete d({{2.0, 1.0}, {1.0, 2.0}, {2.0, 1.0}});
  const auto atoms = d.atoms();
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0].location == 1.0);
  CHECK(atoms[0].mass == 0.5);
  CHECK(atoms[1].mass == 0.5);
  CHECK(d.quantile(0.5) == 1.0);
  CHECK(d.quantile(0.5000001) == 2.0);
  CHECK(d.quantile_upper(0.5) == 1.0);
  CHECK(d.is_discrete());
}

TEST_CASE("empirical files") {
  TempFile good("# valuations\n1.5\n  2.5 # inline\n\n1.5\n4\n");
  const auto d = parse_distribution("empirical(file=\"" + good.path.string() + "\")");
  const auto atoms = d->atoms();
  REQUIRE(atoms.size() == 3);
  CHECK(atoms[0].location == 1.5);
  CHECK(atoms[0].mass == 0.5);
  CHECK(d->cdf(2.5) == 0.75);

  TempFile zero("1\n0\n2\n");
  CHECK_THROWS_AS(parse_distribution("empirical(file=\"" + zero.path.string() + "\")"), std::runtime_error);
  TempFile junk("1\nabc\n");
  CHECK_THROWS_AS(parse_distribution("empirical(file=\"" + junk.path.string() + "\")"), std::runtime_error);
  TempFile empty("# nothing\n");
  CHECK_THROWS_AS(parse_distribution("empirical(file=\"" + empty.path.string() + "\")"), std::runtime_error);
  CHECK_THROWS_AS(parse_distribution("empirical(file=\"/nonexistent/values.txt\")"), std::runtime_error);
}

TEST_CASE("probability integral transform") {
  for (const auto& spec : fixtures::atomless_specs()) {
    CAPTURE(spec);
    const auto d = parse_distribution(spec);
    const auto u = probability_integral_samples(*d, 100000, 3);
    CHECK(ks_statistic_uniform(u) < ks_critical_1pct(u.size()));
  }
  const auto u = probability_integral_samples(*parse_distribution("equalrev(c=1)"), 100000, 5);
  double mean = 0.0;
  for (double x : u) mean += std::log1p(-x);
  mean /= static_cast<double>(u.size());
  CHECK(mean == doctest::Approx(-1.0).epsilon(0.02));

  CHECK_THROWS_AS(probability_integral_samples(*parse_distribution("mix(0.5*pointmass(v=1), 0.5*pointmass(v=2))"),
                                               1000, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      probability_integral_samples(*parse_distribution("mix(0.5*pointmass(v=1), 0.5*uniform(a=0, b=3))"), 1000, 0),
      std::invalid_argument);
}

TEST_CASE("ks statistic") {
  std::vector<double> grid;
  for (int i = 0; i < 1000; ++i) grid.push_back((i + 0.5) / 1000.0);
  CHECK(ks_statistic_uniform(grid) == doctest::Approx(0.0005));
  std::vector<double> lumped(1000, 0.25);
  CHECK(ks_statistic_uniform(lumped) == doctest::Approx(0.75));
  CHECK(ks_critical_1pct(10000) == doctest::Approx(0.016276).epsilon(1e-4));
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
  const auto d = parse_distribution("mix(0.3*pareto(alpha=1.5, scale=1), 0.7*lognormal(mu=1, sigma=2))");
  CHECK(kernels::draw_samples(*d, 12345, 9, Exec::serial) == kernels::draw_samples(*d, 12345, 9, Exec::parallel));
  std::vector<double> levels;
  for (int i = 1; i < 500; ++i) levels.push_back(i / 500.0);
  CHECK(kernels::quantiles(*d, levels, Exec::serial) == kernels::quantiles(*d, levels, Exec::parallel));
  auto draw = [&](Rng& rng) { return std::log(d->sample(rng)); };
  const auto a = kernels::monte_carlo_mean(54321, 4, draw, Exec::serial);
  const auto b = kernels::monte_carlo_mean(54321, 4, draw, Exec::parallel);
  CHECK(a.mean == b.mean);
  CHECK(a.standard_error == b.standard_error);
  CHECK(a.n == 54321);
}

TEST_CASE("rng streams") {
  Rng a(1), b(1);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform_open();
    CHECK(x > 0.0);
    CHECK(x < 1.0);
    CHECK(x == b.uniform_open());
  }
  CHECK(derive_seed(0, 0) != derive_seed(0, 1));
  CHECK(derive_seed(0, 1) != derive_seed(1, 0));
}
