#include "wigner/checker.hpp"

#include "wigner/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace wigner {

namespace {

constexpr std::array<double, 5> kHomogeneityScalars{-2.0, -1.0, -0.5, 0.5, 2.0};

struct ConditionName {
  ConditionId id;
  const char* name;
};

constexpr std::array<ConditionName, 12> kNames{{
    {ConditionId::kMuIsometry, "MU_ISOMETRY"},
    {ConditionId::kT1I, "T1_I"},
    {ConditionId::kT1II, "T1_II"},
    {ConditionId::kAdditive, "ADDITIVE"},
    {ConditionId::kRealHomogeneous, "REAL_HOMOGENEOUS"},
    {ConditionId::kNormPreserving, "NORM_PRESERVING"},
    {ConditionId::kT2I, "T2_I"},
    {ConditionId::kT2II, "T2_II"},
    {ConditionId::kT2III, "T2_III"},
    {ConditionId::kT2IV, "T2_IV"},
    {ConditionId::kComplexLinear, "COMPLEX_LINEAR"},
    {ConditionId::kEq22, "EQ22"},
}};

void require_eq22_field(int n, const SpaceSpec& domain, const SpaceSpec& codomain) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "EQ22 needs n >= 1");
  if (n > 2 && (!domain.is_complex() || !codomain.is_complex())) {
    throw Error(ErrorCode::kRealFieldUnsupported, "EQ22 with n > 2 needs complex spaces");
  }
}

// Distances ||u - b_k v|| over the n-th roots, sorted ascending.
std::vector<double> root_distances(const Vector& u, const Vector& v,
                                   const std::vector<Scalar>& roots, const SpaceSpec& space) {
  std::vector<double> out;
  out.reserve(roots.size());
  for (const Scalar& beta : roots) out.push_back(norm(u - v.times(beta), space));
  std::sort(out.begin(), out.end());
  return out;
}

bool has_near_duplicates(const std::vector<double>& sorted, double tol) {
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k] - sorted[k - 1] <= tol) return true;
  }
  return false;
}

// Running worst case; the first strictly larger residual wins, so with
// ascending iteration the lowest pair index is kept on ties.
struct Worst {
  double residual = -1.0;
  std::pair<std::size_t, std::size_t> at{0, 0};
  std::size_t count = 0;

  void offer(double r, std::size_t i, std::size_t j) {
    ++count;
    if (r > residual) {
      residual = r;
      at = {i, j};
    }
  }
};

ConditionReport make_report(Condition condition, const Worst& worst, double tol) {
  ConditionReport report;
  report.condition = condition;
  report.max_residual = std::max(worst.residual, 0.0);
  report.argmax = worst.at;
  report.tol = tol;
  report.pass = report.max_residual <= tol;
  report.pairs_evaluated = worst.count;
  return report;
}

Vector times_i(const Vector& x) { return x.times({0.0, 1.0}); }

}  // namespace

std::string Condition::name() const {
  for (const auto& entry : kNames) {
    if (entry.id == id) {
      if (id == ConditionId::kEq22) return std::string(entry.name) + "[" + std::to_string(n) + "]";
      return entry.name;
    }
  }
  return "UNKNOWN";
}

Condition Condition::parse(const std::string& name) {
  if (name.rfind("EQ22[", 0) == 0 && name.back() == ']') {
    const std::string digits = name.substr(5, name.size() - 6);
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != digits.size() || n < 1) {
      throw Error(ErrorCode::kInvalidArgument, "bad EQ22 order in '" + name + "'");
    }
    return eq22(n);
  }
  for (const auto& entry : kNames) {
    if (entry.id != ConditionId::kEq22 && name == entry.name) return Condition{entry.id};
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown condition '" + name + "'");
}

double polarize(double n_sum, double n_x, double n_y) {
  if (n_sum < 0.0 || n_x < 0.0 || n_y < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "polarize takes norms (nonnegative)");
  }
  return (n_sum * n_sum - n_x * n_x - n_y * n_y) / 2.0;
}

double pair_residual(Condition condition, const Vector& x, const Vector& y, const Vector& fx,
                     const Vector& fy, const std::optional<Vector>& f0, const SpaceSpec& domain,
                     const SpaceSpec& codomain) {
  auto dn = [&](const Vector& v) { return norm(v, domain); };
  auto cn = [&](const Vector& v) { return norm(v, codomain); };
  switch (condition.id) {
    case ConditionId::kMuIsometry:
      return std::abs(cn(fx - fy) - dn(x - y));
    case ConditionId::kT1I:
      return std::abs(cn(fx + fy) - dn(x + y));
    case ConditionId::kT1II:
      return std::abs(real_inner(fx, fy, codomain) - real_inner(x, y, domain));
    case ConditionId::kNormPreserving:
      return std::abs(cn(fx) - dn(x));
    case ConditionId::kT2I: {
      const std::pair<double, double> image = std::minmax(cn(fx + fy), cn(fx - fy));
      const std::pair<double, double> source = std::minmax(dn(x + y), dn(x - y));
      return std::max(std::abs(image.first - source.first),
                      std::abs(image.second - source.second));
    }
    case ConditionId::kT2II:
      return std::abs((cn(fx + fy) + cn(fx - fy)) - (dn(x + y) + dn(x - y)));
    case ConditionId::kT2III: {
      if (!f0) throw Error(ErrorCode::kMissingZeroImage, "T2_III needs the image of 0");
      const double product = std::abs(cn(fx + fy) * cn(fx - fy) - dn(x + y) * dn(x - y));
      return std::max(product, cn(*f0));
    }
    case ConditionId::kT2IV:
      return std::abs(std::abs(real_inner(fx, fy, codomain)) - std::abs(real_inner(x, y, domain)));
    case ConditionId::kEq22: {
      require_eq22_field(condition.n, domain, codomain);
      const auto roots = roots_of_unity(condition.n);
      const auto image = root_distances(fx, fy, roots, codomain);
      const auto source = root_distances(x, y, roots, domain);
      double worst = 0.0;
      for (std::size_t k = 0; k < image.size(); ++k) {
        worst = std::max(worst, std::abs(image[k] - source[k]));
      }
      return worst;
    }
    case ConditionId::kAdditive:
    case ConditionId::kRealHomogeneous:
    case ConditionId::kComplexLinear:
      break;
  }
  throw Error(ErrorCode::kNeedsEvaluableMap,
              condition.name() + " is not a pair condition; use check_condition on an evaluable map");
}

double pair_residual(Condition condition, const Vector& x, const Vector& y, const Vector& fx,
                     const Vector& fy, const std::optional<Vector>& f0) {
  const SpaceSpec domain(x.field(), x.dim());
  const SpaceSpec codomain(fx.field(), fx.dim());
  return pair_residual(condition, x, y, fx, fy, f0, domain, codomain);
}

ConditionReport check_condition(Condition condition, const MapSpec& m, double tol,
                                std::span<const Vector> samples) {
  const SpaceSpec domain = m.domain();
  const SpaceSpec codomain = m.codomain();

  std::vector<Vector> xs;
  std::vector<Vector> fxs;
  if (samples.empty()) {
    const auto* table = std::get_if<Tabulated>(&m.variant());
    if (!table) {
      throw Error(ErrorCode::kInvalidArgument,
                  "check_condition needs samples unless the map is Tabulated");
    }
    for (const auto& [x, fx] : table->pairs) {
      xs.push_back(x);
      fxs.push_back(fx);
    }
  } else {
    xs.assign(samples.begin(), samples.end());
    for (const auto& x : xs) fxs.push_back(m(x));
  }
  if (xs.size() < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 samples");

  if (condition.is_derived() && m.is_tabulated()) {
    throw Error(ErrorCode::kNeedsEvaluableMap,
                condition.name() + " needs f at derived points; Tabulated maps cannot supply them");
  }
  if (condition.id == ConditionId::kComplexLinear &&
      (!domain.is_complex() || !codomain.is_complex())) {
    throw Error(ErrorCode::kRealFieldUnsupported, "COMPLEX_LINEAR needs complex spaces");
  }
  if (condition.id == ConditionId::kEq22) require_eq22_field(condition.n, domain, codomain);

  const std::size_t n = xs.size();
  Worst worst;

  switch (condition.id) {
    case ConditionId::kAdditive:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
          worst.offer(norm(m(xs[i] + xs[j]) - fxs[i] - fxs[j], codomain), i, j);
        }
      }
      return make_report(condition, worst, tol);
    case ConditionId::kRealHomogeneous:
      for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        for (double lambda : kHomogeneityScalars) {
          r = std::max(r, norm(m(xs[i].scaled(lambda)) - fxs[i].scaled(lambda), codomain));
        }
        worst.offer(r, i, i);
      }
      return make_report(condition, worst, tol);
    case ConditionId::kComplexLinear:
      for (std::size_t i = 0; i < n; ++i) {
        worst.offer(norm(m(times_i(xs[i])) - times_i(fxs[i]), codomain), i, i);
      }
      return make_report(condition, worst, tol);
    case ConditionId::kNormPreserving:
      for (std::size_t i = 0; i < n; ++i) {
        worst.offer(std::abs(norm(fxs[i], codomain) - norm(xs[i], domain)), i, i);
      }
      return make_report(condition, worst, tol);
    default:
      break;
  }

  std::optional<Vector> f0;
  if (condition.id == ConditionId::kT2III) {
    try {
      f0 = m(Vector::zero(domain));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kOutOfDomain) throw;
      throw Error(ErrorCode::kMissingZeroImage, "the sample set does not contain 0");
    }
  }

  std::vector<Scalar> roots;
  if (condition.id == ConditionId::kEq22) roots = roots_of_unity(condition.n);
  std::size_t ambiguous = 0;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      worst.offer(pair_residual(condition, xs[i], xs[j], fxs[i], fxs[j], f0, domain, codomain),
                  i, j);
      if (condition.id == ConditionId::kEq22 &&
          (has_near_duplicates(root_distances(fxs[i], fxs[j], roots, codomain), tol) ||
           has_near_duplicates(root_distances(xs[i], xs[j], roots, domain), tol))) {
        ++ambiguous;
      }
    }
  }
  ConditionReport report = make_report(condition, worst, tol);
  report.ambiguous_pairs = ambiguous;
  return report;
}

std::vector<Vector> battery_points(const MapSpec& m, const SamplePlan& plan) {
  if (const auto* table = std::get_if<Tabulated>(&m.variant())) {
    std::vector<Vector> xs;
    for (const auto& pair : table->pairs) xs.push_back(pair.first);
    return xs;
  }

  const SpaceSpec domain = m.domain();
  std::vector<Vector> points;
  std::vector<Vector> forced{Vector::zero(domain)};

  if (const auto* line = std::get_if<AbsOneDim>(&m.variant())) {
    for (const auto& s : sample(plan, domain)) points.push_back(line->a.scaled(real_inner(s, line->a)));
    forced.push_back(line->a);
    forced.push_back(-line->a);
  } else {
    points = sample(plan, domain);
    for (std::size_t k = 0; k < domain.real_dim(); ++k) {
      forced.push_back(Vector::basis(domain, k));
      forced.push_back(-Vector::basis(domain, k));
    }
  }

  std::vector<Vector> out;
  const Tolerance identity_tol{1e-9, 0.0};
  auto push_unique = [&](const Vector& v) {
    for (const auto& existing : out) {
      if (close(existing, v, identity_tol)) return;
    }
    out.push_back(v);
  };
  for (const auto& p : points) push_unique(p);
  for (const auto& p : forced) push_unique(p);
  return out;
}

std::vector<Condition> applicable_conditions(const MapSpec& m) {
  const SpaceSpec domain = m.domain();
  const SpaceSpec codomain = m.codomain();
  const bool euclidean = domain.norm().is_euclidean() && codomain.norm().is_euclidean();
  const bool evaluable = !m.is_tabulated();

  std::vector<Condition> out{kMuIsometry, kT1I};
  if (euclidean) out.push_back(kT1II);
  if (evaluable) {
    out.push_back(kAdditive);
    out.push_back(kRealHomogeneous);
  }
  out.push_back(kNormPreserving);
  out.push_back(kT2I);
  out.push_back(kT2II);
  // A table can only vouch for f(0) = 0 if it sampled 0.
  bool has_zero = true;
  if (const auto* table = std::get_if<Tabulated>(&m.variant())) {
    has_zero = std::any_of(table->pairs.begin(), table->pairs.end(), [&](const auto& pair) {
      return close(pair.first, Vector::zero(domain));
    });
  }
  if (has_zero) out.push_back(kT2III);
  if (euclidean) out.push_back(kT2IV);
  if (evaluable && domain.is_complex() && codomain.is_complex()) out.push_back(kComplexLinear);
  return out;
}

bool Battery::all_pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

const ConditionReport* Battery::find(Condition condition) const {
  for (const auto& r : reports) {
    if (r.condition == condition) return &r;
  }
  return nullptr;
}

Battery run_battery(const MapSpec& m, const SamplePlan& plan, double tol,
                    std::span<const Condition> conditions) {
  const std::vector<Vector> points = battery_points(m, plan);
  MapSpec table = m.is_tabulated() ? m : tabulate(m, points);

  double max_norm = 0.0;
  for (const auto& [x, fx] : std::get<Tabulated>(table.variant()).pairs) {
    max_norm = std::max({max_norm, norm(x), norm(fx)});
  }

  std::vector<ConditionReport> reports;
  for (const Condition& c : conditions) {
    if (c.is_derived()) {
      reports.push_back(check_condition(c, m, tol, points));
    } else {
      reports.push_back(check_condition(c, table, tol));
    }
  }
  return Battery{std::move(table), std::move(reports), max_norm};
}

Battery run_battery(const MapSpec& m, const SamplePlan& plan, double tol) {
  const auto conditions = applicable_conditions(m);
  return run_battery(m, plan, tol, conditions);
}

ConditionReport check_eq22(const MapSpec& m, const SamplePlan& plan, int n, double tol) {
  require_eq22_field(n, m.domain(), m.codomain());
  const std::vector<Vector> points = battery_points(m, plan);
  return check_condition(eq22(n), m.is_tabulated() ? m : tabulate(m, points), tol);
}

double implication_factor(Condition from, Condition to, double max_norm) {
  const double m2 = max_norm * max_norm;
  if (from == kT2I && to == kT2II) return 4.0;
  if (from == kT2II && to == kT2III) return 4.0 * (1.0 + m2);
  if (from == kT2III && to == kT2IV) return 4.0 * (1.0 + m2);
  if (from == kT2II && to == kNormPreserving) return 1.0;
  if (from == kT1I && to == kT1II) return 4.0 * (1.0 + max_norm);
  throw Error(ErrorCode::kInvalidArgument,
              "no documented implication " + from.name() + " => " + to.name());
}

std::vector<Implication> check_implications(std::span<const ConditionReport> reports, double tol,
                                            double max_norm) {
  auto find = [&](Condition c) -> const ConditionReport* {
    for (const auto& r : reports) {
      if (r.condition == c) return &r;
    }
    return nullptr;
  };
  static constexpr std::array<std::pair<Condition, Condition>, 5> kChain{{
      {kT2I, kT2II},
      {kT2II, kT2III},
      {kT2III, kT2IV},
      {kT2II, kNormPreserving},
      {kT1I, kT1II},
  }};

  std::vector<Implication> out;
  for (const auto& [from, to] : kChain) {
    const auto* a = find(from);
    const auto* b = find(to);
    if (!a || !b) continue;
    Implication imp{from, to, implication_factor(from, to, max_norm)};
    imp.antecedent = a->max_residual <= tol;
    imp.consequent = b->max_residual <= imp.factor * tol;
    out.push_back(imp);
  }
  return out;
}

}  // namespace wigner
