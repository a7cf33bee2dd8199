#include "wigner/explore.hpp"

#include "wigner/checker.hpp"
#include "wigner/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace wigner {

namespace {

constexpr double kNearMissFactor = 100.0;
constexpr std::size_t kMaxDim = 8;
constexpr int kHistogramLowDecade = -20;
constexpr int kHistogramHighDecade = 5;

struct KindName {
  CandidateKind kind;
  const char* name;
  Problem problem;
};

constexpr std::array<KindName, 9> kKinds{{
    {CandidateKind::kSignedPermutationPhase, "signed_permutation_phase", Problem::kP1},
    {CandidateKind::kOrthogonalPhase, "orthogonal_phase", Problem::kP1},
    {CandidateKind::kOrthogonalLinear, "orthogonal_linear", Problem::kP1},
    {CandidateKind::kRotation45, "rotation45", Problem::kP1},
    {CandidateKind::kUnitaryRootPhase, "unitary_root_phase", Problem::kP2},
    {CandidateKind::kUnitaryLinear, "unitary_linear", Problem::kP2},
    {CandidateKind::kConjugation, "conjugation", Problem::kP2},
    {CandidateKind::kRatz, "ratz", Problem::kP2},
    {CandidateKind::kScaled, "scaled", Problem::kP1},  // valid for both
}};

bool kind_fits(CandidateKind kind, const ExploreConfig& config) {
  if (kind == CandidateKind::kScaled) return true;
  if (kind == CandidateKind::kRotation45 && config.dim < 2) return false;
  if (kind == CandidateKind::kRatz && config.dim != 2) return false;
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.problem == config.problem;
  }
  return false;
}

std::vector<CandidateKind> family_of(const ExploreConfig& config) {
  if (!config.family.empty()) return config.family;
  std::vector<CandidateKind> out;
  for (const auto& k : kKinds) {
    if (kind_fits(k.kind, config)) out.push_back(k.kind);
  }
  return out;
}

SpaceSpec space_of(const ExploreConfig& config) {
  if (config.problem == Problem::kP2) return SpaceSpec::complex(config.dim);
  return SpaceSpec::real(config.dim,
                         config.p == 2.0 ? Norm::euclidean() : Norm::pnorm(config.p));
}

std::size_t histogram_bin(double r) {
  if (r <= 0.0) return 0;
  const int decade = std::clamp(static_cast<int>(std::floor(std::log10(r))), kHistogramLowDecade,
                                kHistogramHighDecade);
  return static_cast<std::size_t>(decade - kHistogramLowDecade);
}

ExploreReport run(const ExploreConfig& config) {
  config.validate();
  const SpaceSpec space = space_of(config);
  const Condition condition = config.problem == Problem::kP1 ? kT2I : eq22(config.n);
  const auto family = family_of(config);

  ExploreReport report;
  report.config = config;
  std::size_t pairs_per_trial = 0;

  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const auto pairs = explore_pairs(config, trial);
    pairs_per_trial = pairs.size();
    for (CandidateKind kind : family) {
      const MapSpec f = make_candidate(config, kind, trial);
      double worst = 0.0;
      for (const auto& [x, y] : pairs) {
        worst = std::max(worst, pair_residual(condition, x, y, f(x), f(y), std::nullopt, space,
                                              space));
      }
      report.candidates.push_back({to_string(kind) + "#" + std::to_string(trial), kind, trial,
                                   worst, classify(worst, config.tol)});
    }
  }

  report.histogram.assign(kHistogramHighDecade - kHistogramLowDecade + 1, 0);
  for (std::size_t k = 0; k < report.candidates.size(); ++k) {
    const double r = report.candidates[k].max_residual;
    report.sorted_residuals.push_back(r);
    ++report.histogram[histogram_bin(r)];
    if (r < report.candidates[report.best].max_residual) report.best = k;
  }
  std::sort(report.sorted_residuals.begin(), report.sorted_residuals.end());

  const auto has = [&](Classification c) {
    return std::any_of(report.candidates.begin(), report.candidates.end(),
                       [&](const auto& r) { return r.classification == c; });
  };
  report.verdict = has(Classification::kSolution)   ? Verdict::kSolutionsFound
                   : has(Classification::kNearMiss) ? Verdict::kNearMiss
                                                    : Verdict::kNone;
  report.label = "empirical at " + std::to_string(pairs_per_trial) + " sample pairs, dim " +
                 std::to_string(config.dim);
  return report;
}

}  // namespace

std::string to_string(CandidateKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

CandidateKind parse_candidate_kind(const std::string& name) {
  for (const auto& k : kKinds) {
    if (name == k.name) return k.kind;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown candidate kind '" + name + "'");
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::kSolution: return "solution";
    case Classification::kNearMiss: return "near-miss";
    case Classification::kNonSolution: return "non-solution";
  }
  return "non-solution";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kSolutionsFound: return "solutions-found";
    case Verdict::kNearMiss: return "near-miss";
    case Verdict::kNone: return "none";
  }
  return "none";
}

void ExploreConfig::validate() const {
  if (dim < 1 || dim > kMaxDim) {
    throw Error(ErrorCode::kInvalidArgument, "explore dim must be in [1, 8]");
  }
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "explore needs trials >= 1");
  if (!(tol >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "explore needs tol >= 0");
  if (problem == Problem::kP1) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::kInvalidArgument, "P1 needs p >= 1");
    if (field && *field != Field::kReal) {
      throw Error(ErrorCode::kUnsupportedNorm, "P1 explores l^p norms on real spaces");
    }
  } else {
    if (n < 1) throw Error(ErrorCode::kInvalidArgument, "P2 needs n >= 1");
    if (field && *field != Field::kComplex) {
      throw Error(ErrorCode::kRealFieldUnsupported, "P2 runs on complex spaces");
    }
  }
  for (CandidateKind kind : family) {
    if (!kind_fits(kind, *this)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "candidate '" + to_string(kind) + "' does not apply to this problem/dim");
    }
  }
}

std::uint64_t trial_seed(const ExploreConfig& config, std::size_t trial) {
  return split_seed(config.seed, trial);
}

MapSpec make_candidate(const ExploreConfig& config, CandidateKind kind, std::size_t trial) {
  const SpaceSpec space = space_of(config);
  const std::size_t d = config.dim;
  const std::uint64_t seed = trial_seed(config, trial);
  const std::uint64_t sign_seed = splitmix64(seed);

  switch (kind) {
    case CandidateKind::kSignedPermutationPhase:
      return MapSpec::phase_isometry(space, space, signed_permutation(d, seed),
                                     SignRule::seeded(sign_seed));
    case CandidateKind::kOrthogonalPhase:
      return MapSpec::phase_isometry(space, space, random_orthogonal(d, seed),
                                     SignRule::seeded(sign_seed));
    case CandidateKind::kOrthogonalLinear:
      return MapSpec::linear_isometry(space, space, random_orthogonal(d, seed));
    case CandidateKind::kRotation45: {
      if (d < 2) throw Error(ErrorCode::kInvalidArgument, "rotation45 needs dim >= 2");
      Eigen::MatrixXd q = Eigen::MatrixXd::Identity(d, d);
      const double c = std::sqrt(0.5);
      q(0, 0) = c;
      q(0, 1) = -c;
      q(1, 0) = c;
      q(1, 1) = c;
      return MapSpec::linear_isometry(space, space, q);
    }
    case CandidateKind::kUnitaryRootPhase:
      return MapSpec::phase_isometry(space, space, random_unitary(d, seed),
                                     SignRule::root_phase(config.n, sign_seed));
    case CandidateKind::kUnitaryLinear:
      return MapSpec::linear_isometry(space, space, random_unitary(d, seed));
    case CandidateKind::kConjugation:
      return MapSpec::linear_isometry(space, space, conjugation_matrix(d));
    case CandidateKind::kRatz:
      return MapSpec::ratz();
    case CandidateKind::kScaled:
      return MapSpec::scaled(
          MapSpec::linear_isometry(space, space,
                                   Eigen::MatrixXd::Identity(space.real_dim(), space.real_dim())),
          1.1);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown candidate kind");
}

std::vector<std::pair<Vector, Vector>> explore_pairs(const ExploreConfig& config,
                                                     std::size_t trial) {
  const SpaceSpec space = space_of(config);
  const std::size_t n = space.real_dim();
  std::vector<std::pair<Vector, Vector>> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      out.emplace_back(Vector::basis(space, a), Vector::basis(space, b));
    }
  }
  Rng rng(trial_seed(config, trial));
  auto draw = [&] {
    Eigen::VectorXd coords(n);
    for (std::size_t k = 0; k < n; ++k) coords[k] = rng.gaussian();
    return Vector::from_coords(space.field(), std::move(coords));
  };
  for (std::size_t k = 0; k < config.pairs; ++k) {
    Vector x = draw();
    out.emplace_back(std::move(x), draw());
  }
  return out;
}

Classification classify(double residual, double tol) {
  if (residual <= tol) return Classification::kSolution;
  if (residual <= kNearMissFactor * tol) return Classification::kNearMiss;
  return Classification::kNonSolution;
}

ExploreReport explore_p1(const ExploreConfig& config) {
  if (config.problem != Problem::kP1) {
    throw Error(ErrorCode::kInvalidArgument, "explore_p1 needs problem P1");
  }
  return run(config);
}

ExploreReport explore_p2(const ExploreConfig& config) {
  if (config.problem != Problem::kP2) {
    throw Error(ErrorCode::kInvalidArgument, "explore_p2 needs problem P2");
  }
  return run(config);
}

ExploreReport explore(const ExploreConfig& config) {
  return config.problem == Problem::kP1 ? explore_p1(config) : explore_p2(config);
}

}  // namespace wigner
