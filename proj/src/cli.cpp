#include "revbound/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "revbound/bounds.hpp"
#include "revbound/dsl.hpp"
#include "revbound/errors.hpp"
#include "revbound/moments.hpp"
#include "revbound/report_json.hpp"
#include "revbound/revenue.hpp"
#include "revbound/suite.hpp"

namespace revbound {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBoundFailed = 2;

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Parses and builds the law, reporting problems on `err`.
DistributionPtr load(const std::string& text, std::ostream& err) {
  try {
    return parse_distribution(text);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n  " << text << "\n  " << std::string(e.offset(), ' ') << "^\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return nullptr;
}

struct AnalyzeArgs {
  std::string spec;
  std::uint64_t seed = 0;
  std::size_t grid = 4096;
  double refine_tol = 1e-9;
  double tol = 1e-8;
  std::size_t mc_samples = 100000;
  bool timing = false;
};

int analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const DistributionPtr d = load(a.spec, err);
  if (!d) return kExitUsage;

  ReportEnvelope env;
  env.spec_text = a.spec;
  env.seed = a.seed;

  BoundOptions options;
  options.revenue.grid_size = a.grid;
  options.revenue.refine_tol = a.refine_tol;
  options.moment_tol = a.tol;

  int code = kExitOk;
  try {
    env.reports["moments"] = to_json(moments_report(*d, {a.tol, a.mc_samples, a.seed, Exec::parallel}));
    const BoundReport r = bound_report(*d, options);
    env.reports["optimal_revenue"] = to_json(r.revenue);
    env.reports["theorem1"] = theorem1_json(r);
    env.reports["theorem2"] = theorem2_json(r);
    if (!theorem1_holds(r) || !theorem2_holds(r)) {
      err << "bound check failed\n";
      code = kExitBoundFailed;
    }
  } catch (const InconsistencyError& e) {
    err << "check failed: " << e.what() << "\n";
    env.reports["error"] = e.what();
    code = kExitBoundFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (a.timing) {
    env.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  out << serialize(env);
  return code;
}

struct CurveArgs {
  std::string spec;
  double pmin = 0.0;
  double pmax = 0.0;
  std::size_t points = 0;
  bool log_spaced = false;
};

int curve(const CurveArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.pmin > 0.0) || !(a.pmax > a.pmin) || !std::isfinite(a.pmax)) {
    err << "error: need 0 < pmin < pmax\n";
    return kExitUsage;
  }
  if (a.points < 2) {
    err << "error: need at least 2 points\n";
    return kExitUsage;
  }
  const DistributionPtr d = load(a.spec, err);
  if (!d) return kExitUsage;

  std::vector<double> prices(a.points);
  const double last = static_cast<double>(a.points - 1);
  for (std::size_t i = 0; i < a.points; ++i) {
    const double t = static_cast<double>(i) / last;
    prices[i] = a.log_spaced ? std::exp(std::log(a.pmin) + t * (std::log(a.pmax) - std::log(a.pmin)))
                             : a.pmin + t * (a.pmax - a.pmin);
  }
  prices.front() = a.pmin;
  prices.back() = a.pmax;

  out << "price,revenue_right,revenue_left\n";
  for (const PriceQuote& q : score_prices(*d, prices)) {
    out << fmt12(q.price) << ',' << fmt12(q.revenue_right) << ',' << fmt12(q.revenue_left) << '\n';
  }
  return kExitOk;
}

struct VerifyArgs {
  std::uint64_t seed = 0;
  std::size_t n = 200;
  std::vector<std::string> families;
  bool json = false;
};

int verify(const VerifyArgs& a, std::ostream& out, std::ostream& err, bool color) {
  SuiteOptions options;
  options.seed = a.seed;
  options.count = a.n;
  options.families = a.families;
  SuiteSummary summary;
  try {
    summary = run_suite(options);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (a.json) {
    out << to_json(summary).dump(2) << "\n";
  } else {
    const char* green = color ? "\033[32m" : "";
    const char* red = color ? "\033[31m" : "";
    const char* reset = color ? "\033[0m" : "";
    char line[160];
    std::snprintf(line, sizeof line, "%5s  %-6s %-5s %-20s %-20s %s\n", "case", "status", "equal", "thm1_slack",
                  "thm2_slack", "spec");
    out << line;
    for (const SuiteCase& c : summary.cases) {
      const std::string status = c.passed ? std::string(green) + "PASS  " + reset : std::string(red) + "FAIL  " + reset;
      if (!c.error.empty()) {
        std::snprintf(line, sizeof line, "%5zu  ", c.index);
        out << line << status << " error: " << c.error << "  " << c.spec << "\n";
        continue;
      }
      std::snprintf(line, sizeof line, "%5zu  ", c.index);
      out << line << status;
      std::snprintf(line, sizeof line, " %-5s %-20s %-20s ", c.report.equality_flag ? "yes" : "no",
                    fmt12(c.report.thm1_slack).c_str(),
                    c.report.thm2_slack ? fmt12(*c.report.thm2_slack).c_str() : "-");
      out << line << c.spec << "\n";
    }
    out << "passed: " << summary.passed << "/" << summary.cases.size() << "\n";
    if (!summary.cases.empty()) {
      out << "worst thm1 margin: " << fmt12(summary.worst_thm1_margin) << " (case " << summary.worst_thm1_index
          << ")\n";
      if (summary.worst_thm2_margin) {
        out << "worst thm2 margin: " << fmt12(*summary.worst_thm2_margin) << " (case "
            << summary.worst_thm2_index << ")\n";
      } else {
        out << "worst thm2 margin: - (no finite-mean cases)\n";
      }
    }
  }
  return summary.all_passed() ? kExitOk : kExitBoundFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool color) {
  CLI::App app{"Posted-price revenue and its geometric-expectation lower bounds", "revbound"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Moments, optimal revenue and both bounds as JSON");
  analyze_cmd->add_option("spec", analyze_args.spec, "Distribution spec, e.g. \"equalrev(c=1)\"")->required();
  analyze_cmd->add_option("--seed", analyze_args.seed, "Monte Carlo seed");
  analyze_cmd->add_option("--grid", analyze_args.grid, "Quantile grid size (>= 64)");
  analyze_cmd->add_option("--refine-tol", analyze_args.refine_tol, "Relative golden-section bracket width");
  analyze_cmd->add_option("--tol", analyze_args.tol, "Quadrature tolerance");
  analyze_cmd->add_option("--mc-samples", analyze_args.mc_samples, "Monte Carlo cross-check samples (>= 1000)");
  analyze_cmd->add_flag("--timing", analyze_args.timing, "Record wall time in runtime_ms");

  CurveArgs curve_args;
  auto* curve_cmd = app.add_subcommand("curve", "Revenue curve as CSV");
  curve_cmd->add_option("spec", curve_args.spec, "Distribution spec")->required();
  curve_cmd->add_option("--pmin", curve_args.pmin, "Smallest price")->required();
  curve_cmd->add_option("--pmax", curve_args.pmax, "Largest price")->required();
  curve_cmd->add_option("--points", curve_args.points, "Number of prices (>= 2)")->required();
  curve_cmd->add_flag("--log", curve_args.log_spaced, "Log-spaced prices");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Randomised bound suite");
  verify_cmd->add_option("--seed", verify_args.seed, "Master seed");
  verify_cmd->add_option("--n", verify_args.n, "Number of random laws");
  verify_cmd->add_option("--families", verify_args.families, "Single-family draws from this list")
      ->delimiter(',');
  verify_cmd->add_flag("--json", verify_args.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*analyze_cmd) return analyze(analyze_args, out, err);
    if (*curve_cmd) return curve(curve_args, out, err);
    if (*verify_cmd) return verify(verify_args, out, err, color);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace revbound
