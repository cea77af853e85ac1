#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"
#include "revbound/bounds.hpp"
#include "revbound/moments.hpp"
#include "revbound/revenue.hpp"
#include "revbound/suite.hpp"

namespace revbound {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "0.1.0";

// Numbers are rounded to 12 significant digits; non-finite values become
// the strings "inf", "-inf" and "nan".
Json json_number(double x);

Json to_json(const OptimalRevenue& r);
Json to_json(const MomentsReport& r);
Json theorem1_json(const BoundReport& r);
// {"skipped": ...} when the closeness bound is undefined.
Json theorem2_json(const BoundReport& r);
Json to_json(const SuiteSummary& s);

struct ReportEnvelope {
  std::string spec_text;
  std::uint64_t seed = 0;
  Json reports = Json::object();
  std::string tool_version{kToolVersion};
  std::int64_t runtime_ms = 0;
};

// Pretty-printed JSON with a trailing newline. serialize(deserialize(s)) == s
// for any s produced here.
std::string serialize(const ReportEnvelope& envelope);
ReportEnvelope deserialize(std::string_view text);

}  // namespace revbound
