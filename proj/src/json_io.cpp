#include "wigner/json_io.hpp"

#include "wigner/error.hpp"

#include <cmath>

namespace wigner {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string child(const std::string& pointer, const std::string& key) {
  return pointer + "/" + key;
}
std::string child(const std::string& pointer, std::size_t index) {
  return pointer + "/" + std::to_string(index);
}

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
  throw SchemaViolation(pointer, what);
}

const json& member(const json& j, const std::string& pointer, const std::string& key) {
  if (!j.is_object()) fail(pointer, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(pointer, "missing member '" + key + "'");
  return *it;
}

const json* optional_member(const json& j, const std::string& pointer, const std::string& key) {
  if (!j.is_object()) fail(pointer, "expected an object");
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double number(const json& j, const std::string& pointer) {
  if (!j.is_number()) fail(pointer, "expected a number");
  return j.get<double>();
}

std::uint64_t unsigned_integer(const json& j, const std::string& pointer) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  fail(pointer, "expected a nonnegative integer");
}

int integer(const json& j, const std::string& pointer) {
  if (!j.is_number_integer()) fail(pointer, "expected an integer");
  return j.get<int>();
}

std::string string(const json& j, const std::string& pointer) {
  if (!j.is_string()) fail(pointer, "expected a string");
  return j.get<std::string>();
}

bool boolean(const json& j, const std::string& pointer) {
  if (!j.is_boolean()) fail(pointer, "expected true or false");
  return j.get<bool>();
}

const json& array(const json& j, const std::string& pointer) {
  if (!j.is_array()) fail(pointer, "expected an array");
  return j;
}

void check_version(const json& j, const std::string& pointer) {
  if (const json* v = optional_member(j, pointer, "schema_version")) {
    if (!v->is_number_integer() || v->get<int>() != kSchemaVersion) {
      fail(child(pointer, "schema_version"),
           "unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
    }
  }
}

// Re-raise library validation failures as schema errors at `pointer`.
template <class F>
auto guarded(const std::string& pointer, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaViolation&) {
    throw;
  } catch (const Error& e) {
    fail(pointer, e.what());
  }
}

Eigen::MatrixXd matrix_generator(const json& j, const std::string& pointer,
                                 const SpaceSpec& domain) {
  const std::string name = string(member(j, pointer, "generator"), child(pointer, "generator"));
  std::uint64_t seed = 0;
  if (const json* s = optional_member(j, pointer, "seed")) seed = unsigned_integer(*s, child(pointer, "seed"));
  const std::size_t n = domain.real_dim();
  if (name == "identity") return Eigen::MatrixXd::Identity(n, n);
  if (name == "random_orthogonal") return random_orthogonal(n, seed);
  if (name == "signed_permutation") return signed_permutation(n, seed);
  if (name == "random_unitary" || name == "conjugation") {
    if (!domain.is_complex()) fail(pointer, "generator '" + name + "' needs a complex domain");
    return name == "random_unitary" ? random_unitary(domain.dim(), seed)
                                    : conjugation_matrix(domain.dim());
  }
  fail(child(pointer, "generator"), "unknown generator '" + name + "'");
}

struct LinearParts {
  SpaceSpec domain;
  SpaceSpec codomain;
  Eigen::MatrixXd q;
};

// Shared by the Q-based variants: explicit matrix or generator, optional spaces.
LinearParts linear_parts(const json& j, const std::string& pointer) {
  const json& q = member(j, pointer, "Q");
  const std::string qp = child(pointer, "Q");
  const json* d = optional_member(j, pointer, "domain");
  const json* c = optional_member(j, pointer, "codomain");

  if (q.is_object()) {
    if (!d) fail(pointer, "a generated Q needs an explicit 'domain'");
    SpaceSpec domain = space_from_json(*d, child(pointer, "domain"));
    SpaceSpec codomain = c ? space_from_json(*c, child(pointer, "codomain")) : domain;
    Eigen::MatrixXd m = guarded(qp, [&] { return matrix_generator(q, qp, domain); });
    return {domain, codomain, std::move(m)};
  }
  Eigen::MatrixXd m = matrix_from_json(q, qp);
  SpaceSpec domain = d ? space_from_json(*d, child(pointer, "domain"))
                       : SpaceSpec::real(static_cast<std::size_t>(m.cols()));
  SpaceSpec codomain = c ? space_from_json(*c, child(pointer, "codomain"))
                         : (d && m.rows() == m.cols() ? domain
                                                      : SpaceSpec::real(static_cast<std::size_t>(m.rows())));
  return {domain, codomain, std::move(m)};
}

SignRule rule_from_json(const json& j, const std::string& pointer, const SpaceSpec& domain) {
  const std::string kind = string(member(j, pointer, "kind"), child(pointer, "kind"));
  return guarded(pointer, [&] {
    if (kind == "Constant") return SignRule::constant(integer(member(j, pointer, "s"), child(pointer, "s")));
    if (kind == "Halfspace") {
      return SignRule::halfspace(vector_from_json(member(j, pointer, "v"), domain, child(pointer, "v")));
    }
    if (kind == "Seeded") {
      return SignRule::seeded(unsigned_integer(member(j, pointer, "seed"), child(pointer, "seed")));
    }
    if (kind == "RootPhase") {
      return SignRule::root_phase(integer(member(j, pointer, "n"), child(pointer, "n")),
                                  unsigned_integer(member(j, pointer, "seed"), child(pointer, "seed")));
    }
    fail(child(pointer, "kind"), "unknown sign rule '" + kind + "'");
  });
}

json condition_summary(const std::vector<ConditionReport>& reports) {
  std::size_t passed = 0;
  for (const auto& r : reports) passed += r.pass ? 1 : 0;
  return {{"pass", passed == reports.size()}, {"passed", passed}, {"total", reports.size()}};
}

// Minimal scanner that walks a JSON text along a pointer, counting lines.
class LineScanner {
 public:
  explicit LineScanner(const std::string& text) : text_(text) {}

  std::size_t locate(const std::vector<std::string>& tokens) {
    skip_ws();
    std::size_t found = line_;
    for (const std::string& token : tokens) {
      if (!descend(token)) return found;
      skip_ws();
      found = line_;
    }
    return found;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void advance() {
    if (!at_end() && text_[pos_++] == '\n') ++line_;
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  std::string read_string() {
    std::string out;
    advance();  // opening quote
    while (!at_end() && peek() != '"') {
      if (peek() == '\\') {
        advance();
      }
      out.push_back(peek());
      advance();
    }
    advance();
    return out;
  }

  void skip_value() {
    skip_ws();
    const char c = peek();
    if (c == '"') {
      read_string();
    } else if (c == '{' || c == '[') {
      int depth = 0;
      do {
        const char d = peek();
        if (d == '"') {
          read_string();
          continue;
        }
        if (d == '{' || d == '[') ++depth;
        if (d == '}' || d == ']') --depth;
        advance();
      } while (!at_end() && depth > 0);
    } else {
      while (!at_end() && peek() != ',' && peek() != '}' && peek() != ']' &&
             !std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      }
    }
  }

  // Positions the scanner at the start of the member/element named by token.
  bool descend(const std::string& token) {
    skip_ws();
    if (peek() == '{') {
      advance();
      while (true) {
        skip_ws();
        if (peek() != '"') return false;
        const std::string key = read_string();
        skip_ws();
        if (peek() != ':') return false;
        advance();
        if (key == token) return true;
        skip_value();
        skip_ws();
        if (peek() != ',') return false;
        advance();
      }
    }
    if (peek() == '[') {
      std::size_t index = 0;
      try {
        index = std::stoul(token);
      } catch (const std::exception&) {
        return false;
      }
      advance();
      for (std::size_t k = 0;; ++k) {
        skip_ws();
        if (peek() == ']') return false;
        if (k == index) return true;
        skip_value();
        skip_ws();
        if (peek() != ',') return false;
        advance();
      }
    }
    return false;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

json to_json(const SpaceSpec& space) {
  json norm = space.norm().is_euclidean() ? json("euclidean") : json{{"p", space.norm().p()}};
  return {{"field", to_string(space.field())}, {"dim", space.dim()}, {"norm", norm}};
}

SpaceSpec space_from_json(const json& j, const std::string& pointer) {
  const std::string field = string(member(j, pointer, "field"), child(pointer, "field"));
  if (field != "real" && field != "complex") fail(child(pointer, "field"), "expected \"real\" or \"complex\"");
  const json& dim_j = member(j, pointer, "dim");
  const std::uint64_t dim = unsigned_integer(dim_j, child(pointer, "dim"));
  if (dim < 1) fail(child(pointer, "dim"), "dim must be >= 1");

  Norm n = Norm::euclidean();
  if (const json* nj = optional_member(j, pointer, "norm")) {
    const std::string np = child(pointer, "norm");
    if (nj->is_string()) {
      if (nj->get<std::string>() != "euclidean") fail(np, "expected \"euclidean\" or {\"p\": v}");
    } else {
      const double p = number(member(*nj, np, "p"), child(np, "p"));
      n = guarded(np, [&] { return Norm::pnorm(p); });
    }
  }
  return guarded(pointer, [&] {
    return SpaceSpec(field == "real" ? Field::kReal : Field::kComplex, dim, n);
  });
}

json to_json(const Vector& x) {
  json out = json::array();
  for (std::size_t k = 0; k < x.dim(); ++k) {
    const Scalar v = x.entry(k);
    if (x.is_complex()) {
      out.push_back({v.real(), v.imag()});
    } else {
      out.push_back(v.real());
    }
  }
  return out;
}

Vector vector_from_json(const json& j, const SpaceSpec& space, const std::string& pointer) {
  array(j, pointer);
  if (j.size() != space.dim()) {
    fail(pointer, "expected " + std::to_string(space.dim()) + " entries, got " + std::to_string(j.size()));
  }
  return guarded(pointer, [&] {
    if (space.is_complex()) {
      std::vector<Scalar> entries;
      for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string ep = child(pointer, k);
        if (!j[k].is_array() || j[k].size() != 2) fail(ep, "complex entries are [re, im] pairs");
        entries.emplace_back(number(j[k][0], child(ep, 0)), number(j[k][1], child(ep, 1)));
      }
      return Vector::complex(entries);
    }
    std::vector<double> entries;
    for (std::size_t k = 0; k < j.size(); ++k) entries.push_back(number(j[k], child(pointer, k)));
    return Vector::real(std::move(entries));
  });
}

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& pointer) {
  array(j, pointer);
  if (j.empty()) fail(pointer, "matrix needs at least one row");
  const std::size_t cols = array(j[0], child(pointer, 0)).size();
  if (cols == 0) fail(child(pointer, 0), "matrix rows must be nonempty");
  Eigen::MatrixXd m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rp = child(pointer, r);
    if (array(j[r], rp).size() != cols) fail(rp, "ragged matrix row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = number(j[r][c], child(rp, c));
  }
  return m;
}

json to_json(const SignRule& rule) {
  return std::visit(Overloaded{
                        [](const SignRule::Constant& r) { return json{{"kind", "Constant"}, {"s", r.s}}; },
                        [](const SignRule::Halfspace& r) { return json{{"kind", "Halfspace"}, {"v", to_json(r.v)}}; },
                        [](const SignRule::Seeded& r) { return json{{"kind", "Seeded"}, {"seed", r.seed}}; },
                        [](const SignRule::RootPhase& r) {
                          return json{{"kind", "RootPhase"}, {"n", r.n}, {"seed", r.seed}};
                        },
                    },
                    rule.variant());
}

json to_json(const MapSpec& m) {
  json out = std::visit(
      Overloaded{
          [](const LinearIsometry& v) {
            return json{{"domain", to_json(v.domain)}, {"codomain", to_json(v.codomain)}, {"Q", to_json(v.q)}};
          },
          [](const PhaseIsometry& v) {
            return json{{"domain", to_json(v.domain)},
                        {"codomain", to_json(v.codomain)},
                        {"Q", to_json(v.q)},
                        {"rule", to_json(v.rule)}};
          },
          [](const RatzConjugation&) { return json::object(); },
          [](const AbsOneDim& v) {
            return json{{"domain", to_json(v.domain)},
                        {"codomain", to_json(v.codomain)},
                        {"a", to_json(v.a)},
                        {"b", to_json(v.b)}};
          },
          [](const Tabulated& v) {
            json pairs = json::array();
            for (const auto& [x, fx] : v.pairs) pairs.push_back({to_json(x), to_json(fx)});
            return json{{"domain", to_json(v.domain)}, {"codomain", to_json(v.codomain)}, {"pairs", pairs}};
          },
          [](const Scaled& v) { return json{{"base", to_json(*v.base)}, {"c", v.c}}; },
          [](const PerturbedLinear& v) {
            return json{{"domain", to_json(v.domain)},
                        {"codomain", to_json(v.codomain)},
                        {"Q", to_json(v.q)},
                        {"eta", v.eta},
                        {"seed", v.seed}};
          },
      },
      m.variant());
  out["variant"] = std::string(m.kind());
  out["schema_version"] = kSchemaVersion;
  return out;
}

MapSpec map_from_json(const json& j, const std::string& pointer) {
  check_version(j, pointer);
  const std::string variant = string(member(j, pointer, "variant"), child(pointer, "variant"));

  if (variant == "LinearIsometry") {
    auto parts = linear_parts(j, pointer);
    return guarded(child(pointer, "Q"), [&] {
      return MapSpec::linear_isometry(parts.domain, parts.codomain, std::move(parts.q));
    });
  }
  if (variant == "PhaseIsometry") {
    auto parts = linear_parts(j, pointer);
    SignRule rule = rule_from_json(member(j, pointer, "rule"), child(pointer, "rule"), parts.domain);
    return guarded(pointer, [&] {
      return MapSpec::phase_isometry(parts.domain, parts.codomain, std::move(parts.q), std::move(rule));
    });
  }
  if (variant == "RatzConjugation") return MapSpec::ratz();
  if (variant == "AbsOneDim") {
    const SpaceSpec domain = space_from_json(member(j, pointer, "domain"), child(pointer, "domain"));
    const SpaceSpec codomain =
        space_from_json(member(j, pointer, "codomain"), child(pointer, "codomain"));
    Vector a = vector_from_json(member(j, pointer, "a"), domain, child(pointer, "a"));
    Vector b = vector_from_json(member(j, pointer, "b"), codomain, child(pointer, "b"));
    return guarded(pointer, [&] { return MapSpec::abs_one_dim(domain, codomain, a, b); });
  }
  if (variant == "Tabulated") {
    const SpaceSpec domain = space_from_json(member(j, pointer, "domain"), child(pointer, "domain"));
    const SpaceSpec codomain =
        space_from_json(member(j, pointer, "codomain"), child(pointer, "codomain"));
    const std::string pp = child(pointer, "pairs");
    const json& pairs_j = array(member(j, pointer, "pairs"), pp);
    std::vector<std::pair<Vector, Vector>> pairs;
    for (std::size_t k = 0; k < pairs_j.size(); ++k) {
      const std::string kp = child(pp, k);
      if (!pairs_j[k].is_array() || pairs_j[k].size() != 2) fail(kp, "expected [x, f(x)]");
      pairs.emplace_back(vector_from_json(pairs_j[k][0], domain, child(kp, 0)),
                         vector_from_json(pairs_j[k][1], codomain, child(kp, 1)));
    }
    return guarded(pp, [&] { return MapSpec::tabulated(domain, codomain, std::move(pairs)); });
  }
  if (variant == "Scaled") {
    MapSpec base = map_from_json(member(j, pointer, "base"), child(pointer, "base"));
    const double c = number(member(j, pointer, "c"), child(pointer, "c"));
    return guarded(child(pointer, "c"), [&] { return MapSpec::scaled(std::move(base), c); });
  }
  if (variant == "PerturbedLinear") {
    auto parts = linear_parts(j, pointer);
    double eta = 0.1;
    std::uint64_t seed = 0;
    if (const json* e = optional_member(j, pointer, "eta")) eta = number(*e, child(pointer, "eta"));
    if (const json* s = optional_member(j, pointer, "seed")) seed = unsigned_integer(*s, child(pointer, "seed"));
    return guarded(pointer, [&] {
      return MapSpec::perturbed_linear(parts.domain, parts.codomain, std::move(parts.q), eta, seed);
    });
  }
  fail(child(pointer, "variant"), "unknown map variant '" + variant + "'");
}

json to_json(const SamplePlan& plan) {
  json out{{"schema_version", kSchemaVersion},
           {"count", plan.count},
           {"distribution", to_string(plan.distribution)},
           {"seed", plan.seed}};
  if (plan.distribution == Distribution::kGrid) {
    out["half_width"] = plan.half_width;
    out["step"] = plan.step;
  }
  return out;
}

SamplePlan plan_from_json(const json& j, const std::string& pointer) {
  check_version(j, pointer);
  SamplePlan plan;
  plan.count = unsigned_integer(member(j, pointer, "count"), child(pointer, "count"));
  if (plan.count < 1) fail(child(pointer, "count"), "count must be >= 1");
  if (const json* d = optional_member(j, pointer, "distribution")) {
    const std::string name = string(*d, child(pointer, "distribution"));
    if (name == "gaussian") {
      plan.distribution = Distribution::kGaussian;
    } else if (name == "sphere") {
      plan.distribution = Distribution::kSphere;
    } else if (name == "grid") {
      plan.distribution = Distribution::kGrid;
    } else {
      fail(child(pointer, "distribution"), "expected gaussian, sphere or grid");
    }
  }
  if (const json* s = optional_member(j, pointer, "seed")) plan.seed = unsigned_integer(*s, child(pointer, "seed"));
  if (const json* h = optional_member(j, pointer, "half_width")) plan.half_width = number(*h, child(pointer, "half_width"));
  if (const json* s = optional_member(j, pointer, "step")) plan.step = number(*s, child(pointer, "step"));
  if (plan.distribution == Distribution::kGrid && !(plan.step > 0.0)) fail(child(pointer, "step"), "step must be > 0");
  return plan;
}

json to_json(const ConditionReport& report) {
  json out{{"condition", report.condition.name()},
           {"max_residual", report.max_residual},
           {"argmax", {report.argmax.first, report.argmax.second}},
           {"pass", report.pass},
           {"tol", report.tol},
           {"pairs_evaluated", report.pairs_evaluated}};
  if (report.condition.id == ConditionId::kEq22) {
    out["n"] = report.condition.n;
    out["ambiguous_pairs"] = report.ambiguous_pairs;
  }
  return out;
}

ConditionReport report_from_json(const json& j, const std::string& pointer) {
  ConditionReport r;
  const std::string cp = child(pointer, "condition");
  const std::string name = string(member(j, pointer, "condition"), cp);
  r.condition = guarded(cp, [&] { return Condition::parse(name); });
  r.max_residual = number(member(j, pointer, "max_residual"), child(pointer, "max_residual"));
  if (r.max_residual < 0.0) fail(child(pointer, "max_residual"), "residuals are nonnegative");
  const std::string ap = child(pointer, "argmax");
  const json& argmax = array(member(j, pointer, "argmax"), ap);
  if (argmax.size() != 2) fail(ap, "argmax is an index pair");
  r.argmax = {unsigned_integer(argmax[0], child(ap, 0)), unsigned_integer(argmax[1], child(ap, 1))};
  r.pass = boolean(member(j, pointer, "pass"), child(pointer, "pass"));
  r.tol = number(member(j, pointer, "tol"), child(pointer, "tol"));
  if (r.pass != (r.max_residual <= r.tol)) fail(child(pointer, "pass"), "pass must equal max_residual <= tol");
  if (const json* n = optional_member(j, pointer, "pairs_evaluated")) {
    r.pairs_evaluated = unsigned_integer(*n, child(pointer, "pairs_evaluated"));
  }
  if (const json* a = optional_member(j, pointer, "ambiguous_pairs")) {
    r.ambiguous_pairs = unsigned_integer(*a, child(pointer, "ambiguous_pairs"));
  }
  return r;
}

json to_json(const Battery& battery) {
  json reports = json::array();
  for (const auto& r : battery.reports) reports.push_back(to_json(r));
  return {{"schema_version", kSchemaVersion},
          {"map", std::string(battery.table.kind())},
          {"sample_count", std::get<Tabulated>(battery.table.variant()).pairs.size()},
          {"reports", reports},
          {"summary", condition_summary(battery.reports)}};
}

std::vector<ConditionReport> battery_reports_from_json(const json& j) {
  check_version(j, "");
  const json& reports_j = array(member(j, "", "reports"), "/reports");
  std::vector<ConditionReport> reports;
  for (std::size_t k = 0; k < reports_j.size(); ++k) {
    reports.push_back(report_from_json(reports_j[k], child("/reports", k)));
  }
  const json& summary = member(j, "", "summary");
  const bool pass = boolean(member(summary, "/summary", "pass"), "/summary/pass");
  if (pass != condition_summary(reports)["pass"].get<bool>()) {
    fail("/summary/pass", "summary disagrees with the reports");
  }
  return reports;
}

json to_json(const RecoveryResult& r) {
  return {{"schema_version", kSchemaVersion},
          {"signs", r.assignment.signs},
          {"components", r.assignment.component},
          {"component_count", r.components},
          {"anchors", r.assignment.anchors},
          {"component_flips", r.component_flips},
          {"fit_signs", r.fit_signs},
          {"G", to_json(r.g)},
          {"gram_residual", r.gram_residual},
          {"fit_residual", r.fit_residual},
          {"tol", r.tol},
          {"certified", r.certified}};
}

bool recovery_certified_from_json(const json& j) {
  check_version(j, "");
  const bool certified = boolean(member(j, "", "certified"), "/certified");
  if (optional_member(j, "", "error")) {
    if (certified) fail("/certified", "a failed recovery cannot be certified");
    const json& e = member(j, "", "error");
    string(member(e, "/error", "code"), "/error/code");
    string(member(e, "/error", "message"), "/error/message");
    return false;
  }
  const json& signs = array(member(j, "", "signs"), "/signs");
  for (std::size_t k = 0; k < signs.size(); ++k) {
    const int s = integer(signs[k], child("/signs", k));
    if (s != 1 && s != -1) fail(child("/signs", k), "signs are +1 or -1");
  }
  if (array(member(j, "", "components"), "/components").size() != signs.size()) {
    fail("/components", "one component label per sample");
  }
  matrix_from_json(member(j, "", "G"), "/G");
  const double gram = number(member(j, "", "gram_residual"), "/gram_residual");
  const double fit = number(member(j, "", "fit_residual"), "/fit_residual");
  const double tol = number(member(j, "", "tol"), "/tol");
  if (certified != (gram <= tol && fit <= tol)) fail("/certified", "certified must match the residuals");
  return certified;
}

json to_json(const ExploreConfig& config) {
  json family = json::array();
  for (CandidateKind k : config.family) family.push_back(to_string(k));
  json out{{"problem", config.problem == Problem::kP1 ? "P1" : "P2"},
           {"dim", config.dim},
           {"trials", config.trials},
           {"seed", config.seed},
           {"candidate_family", family},
           {"tol", config.tol},
           {"pairs", config.pairs}};
  if (config.problem == Problem::kP1) {
    out["p"] = config.p;
  } else {
    out["n"] = config.n;
  }
  if (config.field) out["field"] = to_string(*config.field);
  return out;
}

ExploreConfig explore_config_from_json(const json& j, const std::string& pointer) {
  check_version(j, pointer);
  ExploreConfig c;
  const std::string problem = string(member(j, pointer, "problem"), child(pointer, "problem"));
  if (problem == "P1") {
    c.problem = Problem::kP1;
  } else if (problem == "P2") {
    c.problem = Problem::kP2;
  } else {
    fail(child(pointer, "problem"), "expected \"P1\" or \"P2\"");
  }
  c.dim = unsigned_integer(member(j, pointer, "dim"), child(pointer, "dim"));
  if (const json* v = optional_member(j, pointer, "p")) c.p = number(*v, child(pointer, "p"));
  if (const json* v = optional_member(j, pointer, "n")) c.n = integer(*v, child(pointer, "n"));
  if (const json* v = optional_member(j, pointer, "trials")) c.trials = unsigned_integer(*v, child(pointer, "trials"));
  if (const json* v = optional_member(j, pointer, "seed")) c.seed = unsigned_integer(*v, child(pointer, "seed"));
  if (const json* v = optional_member(j, pointer, "tol")) c.tol = number(*v, child(pointer, "tol"));
  if (const json* v = optional_member(j, pointer, "pairs")) c.pairs = unsigned_integer(*v, child(pointer, "pairs"));
  if (const json* v = optional_member(j, pointer, "field")) {
    const std::string f = string(*v, child(pointer, "field"));
    if (f != "real" && f != "complex") fail(child(pointer, "field"), "expected \"real\" or \"complex\"");
    c.field = f == "real" ? Field::kReal : Field::kComplex;
  }
  if (const json* v = optional_member(j, pointer, "candidate_family")) {
    const std::string fp = child(pointer, "candidate_family");
    array(*v, fp);
    for (std::size_t k = 0; k < v->size(); ++k) {
      const std::string name = string((*v)[k], child(fp, k));
      c.family.push_back(guarded(child(fp, k), [&] { return parse_candidate_kind(name); }));
    }
  }
  guarded(pointer, [&] { c.validate(); });
  return c;
}

json to_json(const ExploreReport& report) {
  json candidates = json::array();
  for (const auto& c : report.candidates) {
    candidates.push_back({{"name", c.name},
                          {"kind", to_string(c.kind)},
                          {"trial", c.trial},
                          {"max_residual", c.max_residual},
                          {"classification", to_string(c.classification)}});
  }
  json config = to_json(report.config);
  config["schema_version"] = kSchemaVersion;
  return {{"schema_version", kSchemaVersion},
          {"config", config},
          {"candidates", candidates},
          {"best", report.candidates.empty() ? "" : report.candidates[report.best].name},
          {"sorted_residuals", report.sorted_residuals},
          {"histogram", {{"low_decade", -20}, {"counts", report.histogram}}},
          {"verdict", to_string(report.verdict)},
          {"label", report.label}};
}

std::string explore_verdict_from_json(const json& j) {
  check_version(j, "");
  explore_config_from_json(member(j, "", "config"), "/config");
  const json& candidates = array(member(j, "", "candidates"), "/candidates");
  bool any_solution = false;
  bool any_near = false;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const std::string cp = child("/candidates", k);
    string(member(candidates[k], cp, "name"), child(cp, "name"));
    number(member(candidates[k], cp, "max_residual"), child(cp, "max_residual"));
    const std::string cls = string(member(candidates[k], cp, "classification"), child(cp, "classification"));
    if (cls != "solution" && cls != "near-miss" && cls != "non-solution") {
      fail(child(cp, "classification"), "unknown classification");
    }
    any_solution = any_solution || cls == "solution";
    any_near = any_near || cls == "near-miss";
  }
  const json& sorted = array(member(j, "", "sorted_residuals"), "/sorted_residuals");
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (number(sorted[k], child("/sorted_residuals", k)) < sorted[k - 1].get<double>()) {
      fail(child("/sorted_residuals", k), "residuals must be sorted ascending");
    }
  }
  const std::string verdict = string(member(j, "", "verdict"), "/verdict");
  const std::string expected = any_solution ? "solutions-found" : any_near ? "near-miss" : "none";
  if (verdict != expected) fail("/verdict", "verdict disagrees with the candidate classifications");
  return verdict;
}

std::size_t line_of(const std::string& text, const std::string& json_pointer) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  if (!json_pointer.empty() && json_pointer[0] == '/') start = 1;
  while (start <= json_pointer.size() && !json_pointer.empty()) {
    const std::size_t end = json_pointer.find('/', start);
    std::string token = json_pointer.substr(start, end == std::string::npos ? std::string::npos : end - start);
    for (std::size_t at; (at = token.find("~1")) != std::string::npos;) token.replace(at, 2, "/");
    for (std::size_t at; (at = token.find("~0")) != std::string::npos;) token.replace(at, 2, "~");
    tokens.push_back(std::move(token));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return LineScanner(text).locate(tokens);
}

}  // namespace wigner
