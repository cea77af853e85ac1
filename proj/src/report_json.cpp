#include "revbound/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace revbound {

Json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

Json to_json(const OptimalRevenue& r) {
  Json j;
  j["value"] = json_number(r.value);
  j["argmax_price"] = json_number(r.argmax_price);
  j["method"] = std::string(to_string(r.method));
  j["tolerance"] = json_number(r.tolerance);
  return j;
}

Json to_json(const MomentsReport& r) {
  Json j;
  j["expectation"] = json_number(r.expectation);
  j["expectation_error"] = json_number(r.expectation_error);
  j["log_expectation"] = json_number(r.log_expectation);
  j["geometric_expectation"] = json_number(r.geometric_expectation);
  j["quadrature_error"] = json_number(r.quadrature_error);
  j["mc_estimate"] = json_number(r.mc_estimate);
  j["mc_standard_error"] = json_number(r.mc_standard_error);
  j["mc_samples"] = r.mc_samples;
  return j;
}

Json theorem1_json(const BoundReport& r) {
  Json j;
  j["u"] = json_number(r.u);
  j["geometric_expectation"] = json_number(r.geometric);
  j["thm1_lower"] = json_number(r.thm1_lower);
  j["thm1_slack"] = json_number(r.thm1_slack);
  j["equality_flag"] = r.equality_flag;
  j["pointwise_checked"] = r.pointwise_checked;
  j["holds"] = theorem1_holds(r);
  return j;
}

Json theorem2_json(const BoundReport& r) {
  Json j;
  if (!r.delta) {
    j["skipped"] = "infinite expectation";
    return j;
  }
  j["u"] = json_number(r.u);
  j["expectation"] = json_number(r.expectation);
  j["delta"] = json_number(*r.delta);
  j["thm2_lower"] = json_number(*r.thm2_lower);
  j["thm2_slack"] = json_number(*r.thm2_slack);
  j["vacuous"] = *r.thm2_lower < 0.0;
  j["holds"] = theorem2_holds(r);
  return j;
}

Json to_json(const SuiteSummary& s) {
  Json cases = Json::array();
  for (const SuiteCase& c : s.cases) {
    Json j;
    j["index"] = c.index;
    j["spec"] = c.spec;
    j["passed"] = c.passed;
    if (!c.error.empty()) {
      j["error"] = c.error;
    } else {
      j["u"] = json_number(c.report.u);
      j["geometric_expectation"] = json_number(c.report.geometric);
      j["thm1_slack"] = json_number(c.report.thm1_slack);
      j["equality_flag"] = c.report.equality_flag;
      j["expectation"] = json_number(c.report.expectation);
      j["thm2_slack"] = c.report.thm2_slack ? json_number(*c.report.thm2_slack) : Json(nullptr);
    }
    cases.push_back(std::move(j));
  }
  Json out;
  out["cases"] = std::move(cases);
  out["passed"] = s.passed;
  out["total"] = s.cases.size();
  out["worst_thm1_margin"] = json_number(s.worst_thm1_margin);
  out["worst_thm1_index"] = s.worst_thm1_index;
  out["worst_thm2_margin"] = s.worst_thm2_margin ? json_number(*s.worst_thm2_margin) : Json(nullptr);
  out["worst_thm2_index"] = s.worst_thm2_margin ? Json(s.worst_thm2_index) : Json(nullptr);
  return out;
}

std::string serialize(const ReportEnvelope& envelope) {
  Json j;
  j["spec_text"] = envelope.spec_text;
  j["seed"] = envelope.seed;
  j["reports"] = envelope.reports;
  j["tool_version"] = envelope.tool_version;
  j["runtime_ms"] = envelope.runtime_ms;
  return j.dump(2) + "\n";
}

ReportEnvelope deserialize(std::string_view text) {
  const Json j = Json::parse(text);
  ReportEnvelope e;
  e.spec_text = j.at("spec_text").get<std::string>();
  e.seed = j.at("seed").get<std::uint64_t>();
  e.reports = j.at("reports");
  e.tool_version = j.at("tool_version").get<std::string>();
  e.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
  return e;
}

}  // namespace revbound
