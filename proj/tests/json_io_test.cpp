#include "wigner/json_io.hpp"

#include "wigner/error.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

namespace wigner {
namespace {

using C = std::complex<double>;

std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(WIGNER_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json fixture(const std::string& name) { return json::parse(fixture_text(name)); }

std::string schema_pointer(const json& j) {
  try {
    map_from_json(j);
  } catch (const SchemaViolation& e) {
    return e.pointer();
  }
  ADD_FAILURE() << "no SchemaViolation";
  return "";
}

TEST(SpaceJson, RoundTrip) {
  for (const auto& s : {SpaceSpec::real(3), SpaceSpec::complex(2),
                        SpaceSpec::real(2, Norm::pnorm(1.5))}) {
    EXPECT_EQ(space_from_json(to_json(s)), s);
  }
  EXPECT_EQ(to_json(SpaceSpec::real(2, Norm::pnorm(3))),
            json::parse(R"({"field":"real","dim":2,"norm":{"p":3.0}})"));
  EXPECT_EQ(to_json(SpaceSpec::complex(1)),
            json::parse(R"({"field":"complex","dim":1,"norm":"euclidean"})"));
}

TEST(VectorJson, ComplexEntriesArePairs) {
  const Vector x = Vector::complex({C(1, -2), C(0, 3)});
  EXPECT_EQ(to_json(x), json::parse("[[1.0,-2.0],[0.0,3.0]]"));
  EXPECT_EQ(vector_from_json(to_json(x), SpaceSpec::complex(2)).coords(), x.coords());
  EXPECT_THROW(vector_from_json(json::parse("[1, 2]"), SpaceSpec::complex(2)), SchemaViolation);
  EXPECT_THROW(vector_from_json(json::parse("[1]"), SpaceSpec::real(2)), SchemaViolation);
}

TEST(MapJson, FixturesParse) {
  for (const char* name : {"linear_isometry.json", "linear_explicit.json", "unitary.json",
                           "phase_seeded.json", "phase_halfspace.json", "ratz.json",
                           "abs_one_dim.json", "scaled.json", "perturbed_linear.json",
                           "tabulated.json"}) {
    EXPECT_NO_THROW(map_from_json(fixture(name))) << name;
  }
  const MapSpec lin = map_from_json(fixture("linear_isometry.json"));
  EXPECT_EQ(std::get<LinearIsometry>(lin.variant()).q, random_orthogonal(4, 12));
  EXPECT_EQ(map_from_json(fixture("unitary.json")).domain(), SpaceSpec::complex(3));
}

TEST(MapJson, RoundTripPreservesEvaluation) {
  const auto xs = sample({10, Distribution::kGaussian, 3}, SpaceSpec::real(3));
  for (const char* name : {"linear_explicit.json", "phase_seeded.json", "perturbed_linear.json"}) {
    const MapSpec m = map_from_json(fixture(name));
    const MapSpec again = map_from_json(to_json(m));
    EXPECT_EQ(again.kind(), m.kind());
    for (const auto& x : xs) EXPECT_EQ(again(x).coords(), m(x).coords()) << name;
  }
  const MapSpec table = map_from_json(fixture("tabulated.json"));
  EXPECT_EQ(to_json(map_from_json(to_json(table))), to_json(table));
  const MapSpec scaled = map_from_json(fixture("scaled.json"));
  EXPECT_EQ(to_json(map_from_json(to_json(scaled))), to_json(scaled));
  EXPECT_EQ(to_json(scaled)["variant"], "Scaled");
  EXPECT_EQ(to_json(scaled)["schema_version"], 1);
}

TEST(MapJson, SchemaViolationsCarryPointers) {
  EXPECT_EQ(schema_pointer(fixture("bad_missing_q.json")), "");
  EXPECT_EQ(schema_pointer(fixture("bad_rule.json")), "/rule");
  EXPECT_EQ(schema_pointer(fixture("bad_not_orthogonal.json")), "/Q");
  EXPECT_EQ(schema_pointer(fixture("bad_version.json")), "/schema_version");
  EXPECT_EQ(schema_pointer(json::parse(R"({"variant":"Nope"})")), "/variant");
  EXPECT_EQ(schema_pointer(json::parse(R"({"variant":"LinearIsometry","Q":[[1,0],[0]]})")), "/Q/1");
  EXPECT_EQ(schema_pointer(json::parse("[1]")), "");
}

TEST(PlanJson, RoundTripAndDefaults) {
  const SamplePlan plan = plan_from_json(fixture("plan_grid.json"));
  EXPECT_EQ(plan.distribution, Distribution::kGrid);
  EXPECT_EQ(plan.half_width, 2.0);
  const SamplePlan again = plan_from_json(to_json(plan));
  EXPECT_EQ(again.count, plan.count);
  EXPECT_EQ(again.step, plan.step);
  EXPECT_THROW(plan_from_json(json::parse(R"({"count":0})")), SchemaViolation);
  EXPECT_THROW(plan_from_json(json::parse(R"({"count":3,"distribution":"cauchy"})")),
               SchemaViolation);
}

TEST(ReportJson, BatteryReportsReparse) {
  const Battery b = run_battery(MapSpec::ratz(), {20, Distribution::kGaussian, 1}, 1e-9);
  const json doc = json::parse(to_json(b).dump());
  const auto reports = battery_reports_from_json(doc);
  ASSERT_EQ(reports.size(), b.reports.size());
  for (std::size_t k = 0; k < reports.size(); ++k) {
    EXPECT_EQ(reports[k].condition, b.reports[k].condition);
    EXPECT_EQ(reports[k].pass, b.reports[k].pass);
    EXPECT_EQ(reports[k].max_residual, b.reports[k].max_residual);
    EXPECT_EQ(reports[k].argmax, b.reports[k].argmax);
  }
  json tampered = doc;
  tampered["reports"][0]["pass"] = !tampered["reports"][0]["pass"].get<bool>();
  EXPECT_THROW(battery_reports_from_json(tampered), SchemaViolation);
}

TEST(ReportJson, RecoveryDocument) {
  const auto xs = sample({30, Distribution::kGaussian, 1}, SpaceSpec::real(3));
  const MapSpec m = MapSpec::phase_isometry(random_orthogonal(3, 1), SignRule::seeded(1));
  const RecoveryResult r = recover(tabulate(m, xs));
  const json doc = json::parse(to_json(r).dump());
  EXPECT_TRUE(recovery_certified_from_json(doc));
  EXPECT_EQ(doc["signs"].size(), xs.size());
  EXPECT_EQ(doc["G"].size(), 3u);
  json tampered = doc;
  tampered["gram_residual"] = 1.0;
  EXPECT_THROW(recovery_certified_from_json(tampered), SchemaViolation);
}

TEST(ExploreJson, ConfigAndReport) {
  const ExploreConfig cfg = explore_config_from_json(fixture("explore_p1.json"));
  EXPECT_EQ(cfg.p, 1.0);
  EXPECT_EQ(cfg.family.size(), 2u);
  const ExploreConfig again = explore_config_from_json(to_json(cfg));
  EXPECT_EQ(again.family, cfg.family);
  EXPECT_EQ(again.seed, cfg.seed);
  const ExploreReport report = explore(cfg);
  const json doc = json::parse(to_json(report).dump());
  EXPECT_EQ(explore_verdict_from_json(doc), to_string(report.verdict));
  EXPECT_EQ(doc["config"]["seed"], 9);
  EXPECT_THROW(explore_config_from_json(json::parse(R"({"problem":"P3","dim":2})")),
               SchemaViolation);
  EXPECT_THROW(explore_config_from_json(json::parse(R"({"problem":"P2","dim":2,"field":"real"})")),
               SchemaViolation);
}

TEST(LineOf, FindsPointerLines) {
  const std::string text = fixture_text("bad_rule.json");
  EXPECT_EQ(line_of(text, ""), 1u);
  EXPECT_EQ(line_of(text, "/Q"), 4u);
  EXPECT_EQ(line_of(text, "/rule"), 5u);
  EXPECT_EQ(line_of(text, "/rule/s"), 7u);
  EXPECT_EQ(line_of(text, "/rule/missing"), 5u);
  const std::string matrix = "{\n\"Q\": [\n[1, 0],\n[0, 1]\n]\n}";
  EXPECT_EQ(line_of(matrix, "/Q/1"), 4u);
  EXPECT_EQ(line_of(matrix, "/Q/1/0"), 4u);
}

}  // namespace
}  // namespace wigner
