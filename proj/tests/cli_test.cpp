#include "cli.hpp"

#include "wigner/json_io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

namespace wigner::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

std::string fixture(const std::string& name) { return std::string(WIGNER_FIXTURE_DIR) + "/" + name; }

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "wigner");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool table_verdict_pass(const std::string& text) {
  return text.find("verdict: PASS") != std::string::npos;
}

TEST(Cli, CheckLinearIsometryPasses) {
  const Outcome o = invoke({"check", "--map", fixture("linear_isometry.json"), "--plan",
                            fixture("plan.json")});
  EXPECT_EQ(o.code, kExitOk) << o.out << o.err;
  EXPECT_TRUE(table_verdict_pass(o.out));
  EXPECT_EQ(o.out.find("FAIL"), std::string::npos);
}

TEST(Cli, CheckPhaseIsometryFailsPlainConditions) {
  const Outcome o = invoke({"--output", "json", "check", "--map", fixture("phase_seeded.json"),
                            "--plan", fixture("plan_small.json")});
  EXPECT_EQ(o.code, kExitFailed) << o.err;
  const auto reports = battery_reports_from_json(json::parse(o.out));
  for (const auto& r : reports) {
    if (r.condition == kT2I || r.condition == kT2IV) EXPECT_TRUE(r.pass);
    if (r.condition == kT1I) EXPECT_FALSE(r.pass);
  }
}

TEST(Cli, CheckSelectedConditions) {
  const Outcome o = invoke({"--output", "json", "check", "--map", fixture("phase_seeded.json"),
                            "--conditions", "T2_I,T2_IV,NORM_PRESERVING"});
  EXPECT_EQ(o.code, kExitOk) << o.out << o.err;
  EXPECT_EQ(json::parse(o.out)["reports"].size(), 3u);
  const Outcome eq = invoke({"check", "--map", fixture("unitary.json"), "--conditions", "T2_I",
                             "--eq22", "1,3"});
  EXPECT_EQ(eq.code, kExitOk) << eq.out << eq.err;
  EXPECT_NE(eq.out.find("EQ22[3]"), std::string::npos);
}

TEST(Cli, TableAndJsonAgreeAcrossFixtures) {
  for (const char* name : {"linear_isometry.json", "linear_explicit.json", "unitary.json",
                           "phase_seeded.json", "phase_halfspace.json", "ratz.json",
                           "abs_one_dim.json", "scaled.json", "perturbed_linear.json",
                           "tabulated.json"}) {
    const Outcome table = invoke({"check", "--map", fixture(name), "--plan", fixture("plan_small.json")});
    const Outcome js = invoke({"--output", "json", "check", "--map", fixture(name), "--plan",
                               fixture("plan_small.json")});
    ASSERT_EQ(table.code, js.code) << name << table.err << js.err;
    ASSERT_NE(table.code, kExitUsage) << name << table.err;
    const auto reports = battery_reports_from_json(json::parse(js.out));
    bool all = true;
    for (const auto& r : reports) {
      all = all && r.pass;
      const std::string line_start = "\n" + r.condition.name() + " ";
      const auto at = table.out.find(line_start);
      ASSERT_NE(at, std::string::npos) << name << " " << r.condition.name();
      const std::string line = table.out.substr(at + 1, table.out.find('\n', at + 1) - at - 1);
      EXPECT_NE(line.find(r.pass ? "PASS" : "FAIL"), std::string::npos) << name << line;
    }
    EXPECT_EQ(table_verdict_pass(table.out), all) << name;
    EXPECT_EQ(js.code, all ? kExitOk : kExitFailed) << name;
  }
}

TEST(Cli, RecoverCertifiesPhaseIsometry) {
  const Outcome o = invoke({"--output", "json", "recover", "--map", fixture("phase_seeded.json"),
                            "--plan", fixture("plan.json")});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_TRUE(recovery_certified_from_json(json::parse(o.out)));
  const Outcome t = invoke({"recover", "--map", fixture("phase_seeded.json")});
  EXPECT_EQ(t.code, kExitOk);
  EXPECT_NE(t.out.find("verdict: CERTIFIED"), std::string::npos);
}

TEST(Cli, RecoverRejectsPerturbedLinear) {
  const Outcome o = invoke({"--output", "json", "recover", "--map", fixture("perturbed_linear.json")});
  EXPECT_EQ(o.code, kExitFailed) << o.err;
  const json doc = json::parse(o.out);
  EXPECT_FALSE(recovery_certified_from_json(doc));
  if (doc.contains("error")) {
    const std::string code = doc["error"]["code"];
    EXPECT_TRUE(code == "MagnitudeMismatch" || code == "NotPhaseEquivalent") << code;
  }
  const Outcome t = invoke({"recover", "--map", fixture("perturbed_linear.json")});
  EXPECT_EQ(t.code, kExitFailed);
  EXPECT_NE(t.out.find("NOT CERTIFIED"), std::string::npos);
}

TEST(Cli, RecoverAbsOneDimWithTwoComponents) {
  const Outcome o = invoke({"--output", "json", "recover", "--map", fixture("abs_one_dim.json")});
  EXPECT_EQ(o.code, kExitOk) << o.out << o.err;
  EXPECT_EQ(json::parse(o.out)["component_count"], 2);
}

TEST(Cli, DemoRatz) {
  const Outcome o = invoke({"demo-ratz"});
  EXPECT_EQ(o.code, kExitOk) << o.out << o.err;
  EXPECT_NE(o.out.find("||f(i x) - i f(x)|| = 2\n"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("demo: PASS"), std::string::npos);
  const Outcome js = invoke({"--output", "json", "demo-ratz"});
  EXPECT_EQ(js.code, kExitOk);
  const json doc = json::parse(js.out);
  EXPECT_EQ(doc["witness"]["complex_linear_residual"], 2.0);
  EXPECT_TRUE(doc["pass"].get<bool>());
  EXPECT_TRUE(recovery_certified_from_json(doc["recovery"]));
}

TEST(Cli, ExploreAlwaysSucceeds) {
  const Outcome o = invoke({"--output", "json", "explore", "--config", fixture("explore_p1.json")});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NO_THROW(explore_verdict_from_json(json::parse(o.out)));
  const Outcome t = invoke({"explore", "--config", fixture("explore_p2.json")});
  EXPECT_EQ(t.code, kExitOk) << t.err;
  EXPECT_NE(t.out.find("empirical"), std::string::npos);
}

TEST(Cli, SchemaErrorsReportFileAndLine) {
  const Outcome o = invoke({"check", "--map", fixture("bad_rule.json")});
  EXPECT_EQ(o.code, kExitUsage);
  EXPECT_NE(o.err.find("bad_rule.json:5: schema error"), std::string::npos) << o.err;
  EXPECT_TRUE(o.out.empty());
  const Outcome q = invoke({"check", "--map", fixture("bad_not_orthogonal.json")});
  EXPECT_EQ(q.code, kExitUsage);
  EXPECT_NE(q.err.find("bad_not_orthogonal.json:4:"), std::string::npos) << q.err;
  const Outcome s = invoke({"recover", "--map", fixture("bad_syntax.json")});
  EXPECT_EQ(s.code, kExitUsage);
  EXPECT_NE(s.err.find("bad_syntax.json:"), std::string::npos) << s.err;
  EXPECT_NE(s.err.find("invalid JSON"), std::string::npos) << s.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"check"}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"check", "--map", fixture("missing.json")}).code, kExitUsage);
  EXPECT_EQ(invoke({"--output", "xml", "demo-ratz"}).code, kExitUsage);
  EXPECT_EQ(invoke({"check", "--map", fixture("ratz.json"), "--conditions", "BOGUS"}).code,
            kExitUsage);
  EXPECT_EQ(invoke({"check", "--map", fixture("linear_isometry.json"), "--eq22", "3"}).code,
            kExitUsage);
}

TEST(Cli, ToleranceFromEnvironment) {
  ::setenv("WIGNER_TOL", "0.5", 1);
  const Outcome o = invoke({"--output", "json", "check", "--map", fixture("scaled.json"),
                            "--conditions", "NORM_PRESERVING"});
  ::setenv("WIGNER_TOL", "oops", 1);
  const Outcome bad = invoke({"check", "--map", fixture("scaled.json")});
  ::unsetenv("WIGNER_TOL");
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(json::parse(o.out)["reports"][0]["tol"], 0.5);
  EXPECT_EQ(bad.code, kExitUsage);
  const Outcome strict = invoke({"check", "--map", fixture("scaled.json"), "--conditions",
                                 "NORM_PRESERVING"});
  EXPECT_EQ(strict.code, kExitFailed);
}

TEST(Cli, SeedOverridesPlan) {
  const Outcome a = invoke({"--output", "json", "--seed", "4", "check", "--map",
                            fixture("perturbed_linear.json"), "--plan", fixture("plan_small.json")});
  const Outcome b = invoke({"--output", "json", "check", "--map", fixture("perturbed_linear.json"),
                            "--plan", fixture("plan_small.json")});
  EXPECT_NE(a.out, b.out);
  EXPECT_EQ(a.out, invoke({"--output", "json", "--seed", "4", "check", "--map",
                           fixture("perturbed_linear.json"), "--plan", fixture("plan_small.json")})
                       .out);
}

}  // namespace
}  // namespace wigner::cli
