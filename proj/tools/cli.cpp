#include "cli.hpp"

#include "wigner/checker.hpp"
#include "wigner/error.hpp"
#include "wigner/explore.hpp"
#include "wigner/json_io.hpp"
#include "wigner/recover.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace wigner::cli {

namespace {

constexpr double kDefaultTol = 1e-9;
constexpr const char* kTolEnv = "WIGNER_TOL";

// Bad invocation or input document; becomes exit code 2.
struct UsageError {
  std::string message;
};

struct Document {
  std::string path;
  std::string text;
  json value;
};

Document load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError{path + ": cannot open file"};
  std::stringstream buffer;
  buffer << in.rdbuf();
  Document doc{path, buffer.str(), {}};
  try {
    doc.value = json::parse(doc.text);
  } catch (const json::parse_error& e) {
    // nlohmann reports "... at line L, column C: ..."
    const std::string what = e.what();
    std::string line = "1";
    if (const auto at = what.find("line "); at != std::string::npos) {
      line = what.substr(at + 5, what.find(',', at) - at - 5);
    }
    throw UsageError{path + ":" + line + ": invalid JSON: " + what};
  }
  return doc;
}

// Decodes a document, turning schema failures into line-numbered messages.
template <class F>
auto decode(const Document& doc, F&& f) -> decltype(f(doc.value)) {
  try {
    return f(doc.value);
  } catch (const SchemaViolation& e) {
    throw UsageError{doc.path + ":" + std::to_string(line_of(doc.text, e.pointer())) +
                     ": schema error: " + e.what()};
  } catch (const Error& e) {
    throw UsageError{doc.path + ":1: " + e.what()};
  }
}

double default_tol() {
  const char* env = std::getenv(kTolEnv);
  if (!env || !*env) return kDefaultTol;
  try {
    std::size_t used = 0;
    const double tol = std::stod(env, &used);
    if (used == std::string(env).size() && tol >= 0.0) return tol;
  } catch (const std::exception&) {
  }
  throw UsageError{std::string(kTolEnv) + " must be a nonnegative number"};
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << v;
  return s.str();
}

std::string pair_string(std::pair<std::size_t, std::size_t> p) {
  return "(" + std::to_string(p.first) + ", " + std::to_string(p.second) + ")";
}

void write_report_table(std::ostream& out, const std::vector<ConditionReport>& reports) {
  out << std::left << std::setw(20) << "condition" << std::setw(14) << "max_residual"
      << std::setw(14) << "argmax" << std::setw(12) << "tol" << "verdict\n";
  std::size_t passed = 0;
  for (const auto& r : reports) {
    passed += r.pass ? 1 : 0;
    out << std::left << std::setw(20) << r.condition.name() << std::setw(14) << sci(r.max_residual)
        << std::setw(14) << pair_string(r.argmax) << std::setw(12) << sci(r.tol)
        << (r.pass ? "PASS" : "FAIL");
    if (r.condition.id == ConditionId::kEq22 && r.ambiguous_pairs > 0) {
      out << "  (" << r.ambiguous_pairs << " pairs with coinciding distances)";
    }
    out << '\n';
  }
  out << "verdict: " << (passed == reports.size() ? "PASS" : "FAIL") << " (" << passed << "/"
      << reports.size() << " conditions)\n";
}

void write_recovery_table(std::ostream& out, const RecoveryResult& r) {
  out << "components:    " << r.components << '\n';
  out << "anchors:      ";
  for (std::size_t a : r.assignment.anchors) out << ' ' << a;
  out << "\nflips:        ";
  for (int f : r.component_flips) out << ' ' << (f > 0 ? "+1" : "-1");
  out << "\nsigns:        ";
  for (int s : r.assignment.signs) out << (s > 0 ? " +" : " -");
  out << "\nG (" << r.g.rows() << "x" << r.g.cols() << "):\n";
  for (Eigen::Index i = 0; i < r.g.rows(); ++i) {
    out << "  ";
    for (Eigen::Index j = 0; j < r.g.cols(); ++j) {
      out << std::right << std::setw(12) << std::fixed << std::setprecision(6) << r.g(i, j);
    }
    out << '\n';
  }
  out.unsetf(std::ios::floatfield);
  out << "gram_residual: " << sci(r.gram_residual) << '\n';
  out << "fit_residual:  " << sci(r.fit_residual) << '\n';
  out << "verdict: " << (r.certified ? "CERTIFIED" : "NOT CERTIFIED") << " (tol " << sci(r.tol)
      << ")\n";
}

bool is_recovery_failure(ErrorCode code) {
  return code == ErrorCode::kMagnitudeMismatch || code == ErrorCode::kNotPhaseEquivalent ||
         code == ErrorCode::kRankDeficient;
}

struct Globals {
  std::string output = "table";
  std::optional<std::uint64_t> seed;
  bool json() const { return output == "json"; }
};

struct CheckArgs {
  std::string map_path;
  std::string plan_path;
  std::optional<double> tol;
  std::vector<std::string> conditions;
  std::vector<int> eq22;
};

struct RecoverArgs {
  std::string map_path;
  std::string plan_path;
  std::optional<double> tol;
  double delta = 1e-6;
  std::string edge_rule = "local";
};

struct ExploreArgs {
  std::string config_path;
  std::optional<double> tol;
};

SamplePlan load_plan(const std::string& path, const Globals& g) {
  SamplePlan plan;
  if (!path.empty()) {
    const Document doc = load(path);
    plan = decode(doc, [](const json& j) { return plan_from_json(j); });
  }
  if (g.seed) plan.seed = *g.seed;
  return plan;
}

int run_check(const CheckArgs& args, const Globals& g, std::ostream& out) {
  const Document doc = load(args.map_path);
  const MapSpec m = decode(doc, [](const json& j) { return map_from_json(j); });
  const SamplePlan plan = load_plan(args.plan_path, g);
  const double tol = args.tol.value_or(default_tol());

  std::vector<Condition> conditions;
  try {
    for (const auto& name : args.conditions) conditions.push_back(Condition::parse(name));
  } catch (const Error& e) {
    throw UsageError{e.what()};
  }
  if (conditions.empty()) conditions = applicable_conditions(m);
  for (int n : args.eq22) conditions.push_back(eq22(n));

  const Battery battery = run_battery(m, plan, tol, conditions);
  if (g.json()) {
    out << to_json(battery).dump(2) << '\n';
  } else {
    out << "map: " << m.kind() << "  samples: "
        << std::get<Tabulated>(battery.table.variant()).pairs.size() << "  tol: " << sci(tol)
        << '\n';
    write_report_table(out, battery.reports);
  }
  return battery.all_pass() ? kExitOk : kExitFailed;
}

int run_recover(const RecoverArgs& args, const Globals& g, std::ostream& out) {
  const Document doc = load(args.map_path);
  const MapSpec m = decode(doc, [](const json& j) { return map_from_json(j); });
  const double tol = args.tol.value_or(default_tol());
  const MapSpec table = m.is_tabulated() ? m : tabulate(m, battery_points(m, load_plan(args.plan_path, g)));

  RecoveryOptions options{tol, args.delta,
                          args.edge_rule == "global" ? EdgeRule::kGlobal : EdgeRule::kLocal};
  try {
    const RecoveryResult result = recover(table, options);
    if (g.json()) {
      out << to_json(result).dump(2) << '\n';
    } else {
      write_recovery_table(out, result);
    }
    return result.certified ? kExitOk : kExitFailed;
  } catch (const Error& e) {
    if (!is_recovery_failure(e.code())) throw;
    if (g.json()) {
      const json doc_out{{"schema_version", kSchemaVersion},
                         {"certified", false},
                         {"tol", tol},
                         {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
      out << doc_out.dump(2) << '\n';
    } else {
      out << "error: " << e.what() << '\n' << "verdict: NOT CERTIFIED (tol " << sci(tol) << ")\n";
    }
    return kExitFailed;
  }
}

int run_demo_ratz(const Globals& g, std::ostream& out) {
  const double tol = default_tol();
  const MapSpec ratz = MapSpec::ratz();

  const Vector witness = Vector::complex({{0.0, 0.0}, {1.0, 0.0}});
  const Vector f_ix = ratz(witness.times({0.0, 1.0}));
  const Vector i_fx = ratz(witness).times({0.0, 1.0});
  const double witness_residual = norm(f_ix - i_fx);

  SamplePlan plan{50, Distribution::kGaussian, g.seed.value_or(0)};
  const Battery battery = run_battery(ratz, plan, tol);

  SamplePlan recovery_plan{60, Distribution::kGaussian, split_seed(plan.seed, 1)};
  const RecoveryResult recovery = recover(tabulate(ratz, sample(recovery_plan, ratz.domain())),
                                          RecoveryOptions{tol});

  auto passes = [&](Condition c) {
    const auto* r = battery.find(c);
    return r && r->pass;
  };
  const bool real_linear = passes(kAdditive) && passes(kRealHomogeneous) && passes(kNormPreserving);
  const bool wigner = passes(kT2IV);
  const auto* complex_report = battery.find(kComplexLinear);
  const bool not_complex_linear = complex_report && !complex_report->pass;
  const bool witness_ok = std::abs(witness_residual - 2.0) <= 1e-12;
  const bool ok = real_linear && wigner && not_complex_linear && witness_ok && recovery.certified;

  if (g.json()) {
    json doc{{"schema_version", kSchemaVersion},
             {"demo", "ratz"},
             {"map", to_json(ratz)},
             {"witness",
              {{"x", to_json(witness)},
               {"f_ix", to_json(f_ix)},
               {"i_fx", to_json(i_fx)},
               {"complex_linear_residual", witness_residual}}},
             {"battery", to_json(battery)},
             {"recovery", to_json(recovery)},
             {"expectations",
              {{"real_linear", real_linear},
               {"t2_iv", wigner},
               {"complex_linear_fails", not_complex_linear},
               {"witness_residual_is_2", witness_ok},
               {"recovery_certified", recovery.certified}}},
             {"pass", ok}};
    out << doc.dump(2) << '\n';
  } else {
    out << "f: C^2 -> C^2, f(x1, x2) = (x1, conj(x2))\n\n";
    out << "witness x = (0, 1)\n";
    out << "  f(i x) = (0, -i)\n  i f(x) = (0, i)\n";
    out << "  ||f(i x) - i f(x)|| = " << std::setprecision(17) << witness_residual
        << std::setprecision(6) << "\n\n";
    out << "battery over " << std::get<Tabulated>(battery.table.variant()).pairs.size()
        << " points of C^2:\n";
    write_report_table(out, battery.reports);
    out << "\nrecovery over realified C^2 = R^4 (" << recovery_plan.count << " samples):\n";
    write_recovery_table(out, recovery);
    out << "\nreal linear and norm preserving: " << (real_linear ? "yes" : "NO") << '\n';
    out << "complex linear:                  " << (not_complex_linear ? "no" : "YES (unexpected)")
        << '\n';
    out << "demo: " << (ok ? "PASS" : "FAIL") << '\n';
  }
  return ok ? kExitOk : kExitFailed;
}

int run_explore(const ExploreArgs& args, const Globals& g, std::ostream& out) {
  const Document doc = load(args.config_path);
  ExploreConfig config = decode(doc, [](const json& j) { return explore_config_from_json(j); });
  if (g.seed) config.seed = *g.seed;
  if (args.tol) {
    config.tol = *args.tol;
  } else if (!doc.value.contains("tol")) {
    config.tol = default_tol();
  }
  const ExploreReport report = explore(config);

  if (g.json()) {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << "problem " << (config.problem == Problem::kP1 ? "P1, p = " + sci(config.p)
                                                         : "P2, n = " + std::to_string(config.n))
        << ", " << report.label << ", tol " << sci(config.tol) << '\n';
    out << std::left << std::setw(32) << "candidate" << std::setw(14) << "max_residual"
        << "classification\n";
    for (const auto& c : report.candidates) {
      out << std::left << std::setw(32) << c.name << std::setw(14) << sci(c.max_residual)
          << to_string(c.classification) << '\n';
    }
    if (!report.candidates.empty()) out << "best: " << report.candidates[report.best].name << '\n';
    out << "verdict: " << to_string(report.verdict) << " (" << report.label << ")\n";
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks Wigner-type functional equations and recovers phase-equivalent isometries",
               "wigner"};
  Globals globals;
  app.add_option("--output", globals.output, "Report format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  app.add_option("--seed", globals.seed, "Override the seed of sample plans and explore configs");
  app.require_subcommand(1, 1);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Run the condition battery on a map");
  check->add_option("--map", check_args.map_path, "MapSpec JSON file")->required();
  check->add_option("--plan", check_args.plan_path, "SamplePlan JSON file (default: 100 gaussian)");
  check->add_option("--tol", check_args.tol, "Pass tolerance (default $WIGNER_TOL or 1e-9)");
  check->add_option("--conditions", check_args.conditions, "Subset of conditions, e.g. T2_I,T2_IV")
      ->delimiter(',');
  check->add_option("--eq22", check_args.eq22, "Also check the n-th roots of unity equation")
      ->delimiter(',');

  RecoverArgs recover_args;
  auto* recover_cmd = app.add_subcommand("recover", "Recover eps and G from a map's samples");
  recover_cmd->add_option("--map", recover_args.map_path, "MapSpec JSON file")->required();
  recover_cmd->add_option("--plan", recover_args.plan_path, "SamplePlan for non-tabulated maps");
  recover_cmd->add_option("--tol", recover_args.tol, "Certification tolerance");
  recover_cmd->add_option("--delta", recover_args.delta, "Relative edge threshold")
      ->capture_default_str();
  recover_cmd->add_option("--edge-rule", recover_args.edge_rule, "local or global sign edges")
      ->check(CLI::IsMember({"local", "global"}))
      ->capture_default_str();

  auto* demo = app.add_subcommand("demo-ratz", "Reproduce the C^2 real-linear, non-linear example");

  ExploreArgs explore_args;
  auto* explore_cmd = app.add_subcommand("explore", "Search harness for the l^p and roots-of-unity problems");
  explore_cmd->add_option("--config", explore_args.config_path, "ExploreConfig JSON file")->required();
  explore_cmd->add_option("--tol", explore_args.tol, "Override the config tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "wigner: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ostringstream buffer;
  int code = kExitUsage;
  try {
    if (check->parsed()) {
      code = run_check(check_args, globals, buffer);
    } else if (recover_cmd->parsed()) {
      code = run_recover(recover_args, globals, buffer);
    } else if (demo->parsed()) {
      code = run_demo_ratz(globals, buffer);
    } else if (explore_cmd->parsed()) {
      code = run_explore(explore_args, globals, buffer);
    }
  } catch (const UsageError& e) {
    err << "wigner: " << e.message << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "wigner: " << e.what() << '\n';
    return kExitUsage;
  }
  out << buffer.str() << std::flush;
  return code;
}

}  // namespace wigner::cli
