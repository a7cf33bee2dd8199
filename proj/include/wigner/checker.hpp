#pragma once

// Residual checks for the phase-isometry functional equations: the isometry
// equation, the T1_* and T2_* equivalence chains, the norm-preservation
// identity, real/complex linearity side conditions and the
// roots-of-unity generalization.

#include "wigner/maps.hpp"
#include "wigner/space.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wigner {

enum class ConditionId {
  kMuIsometry,       // | ||fx-fy|| - ||x-y|| |
  kT1I,              // | ||fx+fy|| - ||x+y|| |
  kT1II,             // | <<fx,fy>> - <<x,y>> |
  kAdditive,         // ||f(x+y) - fx - fy||
  kRealHomogeneous,  // ||f(lx) - l fx||, l in {-2,-1,-0.5,0.5,2}
  kNormPreserving,   // | ||fx|| - ||x|| |
  kT2I,              // sorted {||fx+fy||, ||fx-fy||} vs sorted {||x+y||, ||x-y||}
  kT2II,             // sum of the two norms
  kT2III,            // product of the two norms, together with ||f(0)||
  kT2IV,             // | |<<fx,fy>>| - |<<x,y>>| |
  kComplexLinear,    // ||f(ix) - i fx||
  kEq22,             // sorted ||fx - b_k fy|| vs sorted ||x - b_k y|| over n-th roots b_k
};

struct Condition {
  ConditionId id;
  int n = 0;  // EQ22 only

  // Needs f at derived points (x+y, lx, ix), so only evaluable maps qualify.
  bool is_derived() const {
    return id == ConditionId::kAdditive || id == ConditionId::kRealHomogeneous ||
           id == ConditionId::kComplexLinear;
  }
  std::string name() const;
  // Accepts the names produced by name(), e.g. "T2_IV" or "EQ22[3]".
  static Condition parse(const std::string& name);

  friend bool operator==(const Condition&, const Condition&) = default;
};

inline constexpr Condition kMuIsometry{ConditionId::kMuIsometry};
inline constexpr Condition kT1I{ConditionId::kT1I};
inline constexpr Condition kT1II{ConditionId::kT1II};
inline constexpr Condition kAdditive{ConditionId::kAdditive};
inline constexpr Condition kRealHomogeneous{ConditionId::kRealHomogeneous};
inline constexpr Condition kNormPreserving{ConditionId::kNormPreserving};
inline constexpr Condition kT2I{ConditionId::kT2I};
inline constexpr Condition kT2II{ConditionId::kT2II};
inline constexpr Condition kT2III{ConditionId::kT2III};
inline constexpr Condition kT2IV{ConditionId::kT2IV};
inline constexpr Condition kComplexLinear{ConditionId::kComplexLinear};
inline constexpr Condition eq22(int n) { return {ConditionId::kEq22, n}; }

struct ConditionReport {
  Condition condition;
  double max_residual = 0.0;
  // Indices into the evaluated sample list; lowest pair wins ties.
  std::pair<std::size_t, std::size_t> argmax{0, 0};
  bool pass = true;
  double tol = 0.0;
  std::size_t pairs_evaluated = 0;
  // EQ22 only: pairs where one of the two distance lists has coinciding
  // entries, so set and multiset readings of the equation could differ.
  std::size_t ambiguous_pairs = 0;
};

// (n_sum^2 - n_x^2 - n_y^2) / 2, the inner product recovered from norms.
double polarize(double n_sum, double n_x, double n_y);

// Residual of a pair condition. f0 is required for T2_III only. Norms are
// taken in the given spaces.
double pair_residual(Condition condition, const Vector& x, const Vector& y, const Vector& fx,
                     const Vector& fy, const std::optional<Vector>& f0, const SpaceSpec& domain,
                     const SpaceSpec& codomain);
// Same, with euclidean spaces inferred from the vectors.
double pair_residual(Condition condition, const Vector& x, const Vector& y, const Vector& fx,
                     const Vector& fy, const std::optional<Vector>& f0 = std::nullopt);

// Worst residual over all unordered pairs i <= j of the samples (per sample
// for the single-point conditions). With no explicit samples the map must be
// Tabulated and its own points are used.
ConditionReport check_condition(Condition condition, const MapSpec& m, double tol,
                                std::span<const Vector> samples = {});

// Plan samples plus the forced points {0, +/- realified basis}; points on
// the line R*a for AbsOneDim; the stored points for Tabulated maps.
std::vector<Vector> battery_points(const MapSpec& m, const SamplePlan& plan);

// Every condition meaningful for m's spaces (EQ22 excluded).
std::vector<Condition> applicable_conditions(const MapSpec& m);

struct Battery {
  MapSpec table;  // m tabulated over battery_points
  std::vector<ConditionReport> reports;
  double max_norm = 0.0;  // largest norm among sample points and their images

  bool all_pass() const;
  const ConditionReport* find(Condition condition) const;
};

Battery run_battery(const MapSpec& m, const SamplePlan& plan, double tol);
Battery run_battery(const MapSpec& m, const SamplePlan& plan, double tol,
                    std::span<const Condition> conditions);

ConditionReport check_eq22(const MapSpec& m, const SamplePlan& plan, int n, double tol);

// Verdict implications between conditions, with the tolerance inflation each
// step needs (M = max_norm):
//   T2_I   => T2_II            factor 4
//   T2_II  => T2_III           factor 4 (1 + M^2)
//   T2_III => T2_IV            factor 4 (1 + M^2)
//   T2_II  => NORM_PRESERVING  factor 1
//   T1_I   => T1_II            factor 4 (1 + M)
struct Implication {
  Condition from;
  Condition to;
  double factor = 1.0;
  bool antecedent = false;
  bool consequent = false;  // consequent residual <= factor * tol

  bool holds() const { return !antecedent || consequent; }
};

double implication_factor(Condition from, Condition to, double max_norm);

std::vector<Implication> check_implications(std::span<const ConditionReport> reports, double tol,
                                            double max_norm);

}  // namespace wigner
