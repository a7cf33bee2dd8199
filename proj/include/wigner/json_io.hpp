#pragma once

// JSON encodings of spaces, vectors, maps, plans and reports. The schemas are
// described in docs/formats.md; every top-level document carries
// "schema_version". Decoders throw SchemaViolation with a JSON pointer.

#include "wigner/checker.hpp"
#include "wigner/explore.hpp"
#include "wigner/maps.hpp"
#include "wigner/recover.hpp"
#include "wigner/space.hpp"

#include <json.hpp>

#include <string>

namespace wigner {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_json(const SpaceSpec& space);
SpaceSpec space_from_json(const json& j, const std::string& pointer = "");

json to_json(const Vector& x);
Vector vector_from_json(const json& j, const SpaceSpec& space, const std::string& pointer = "");

json to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const json& j, const std::string& pointer = "");

json to_json(const SignRule& rule);
json to_json(const MapSpec& m);
MapSpec map_from_json(const json& j, const std::string& pointer = "");

json to_json(const SamplePlan& plan);
SamplePlan plan_from_json(const json& j, const std::string& pointer = "");

json to_json(const ConditionReport& report);
ConditionReport report_from_json(const json& j, const std::string& pointer = "");

// {"schema_version", "map", "sample_count", "reports": [...], "summary": {...}}
json to_json(const Battery& battery);
// Validates a battery document and returns its reports.
std::vector<ConditionReport> battery_reports_from_json(const json& j);

json to_json(const RecoveryResult& result);
// Validates a recovery document; returns the certified flag.
bool recovery_certified_from_json(const json& j);

json to_json(const ExploreConfig& config);
ExploreConfig explore_config_from_json(const json& j, const std::string& pointer = "");
json to_json(const ExploreReport& report);
// Validates an explore report; returns its verdict string.
std::string explore_verdict_from_json(const json& j);

// 1-based line on which the value at json_pointer starts in text (or the
// deepest enclosing value that exists). Used for schema diagnostics.
std::size_t line_of(const std::string& text, const std::string& json_pointer);

}  // namespace wigner
