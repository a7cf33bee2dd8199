#pragma once

// Map families f: X -> Y. Every matrix acts on realified coordinates, so a
// complex-linear map shows up as a block matrix and a conjugation as a
// diagonal of +/-1.

#include "wigner/space.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace wigner {

// The phase function eps: X -> {-1, 1}, plus the n-phase extension used for
// the roots-of-unity equation.
class SignRule {
 public:
  struct Constant {
    int s;
  };
  // +1 on {<<x, v>> >= 0}, -1 elsewhere. Ties go to +1.
  struct Halfspace {
    Vector v;
  };
  // Pseudo-random sign, a pure function of (seed, x).
  struct Seeded {
    std::uint64_t seed;
  };
  // Pseudo-random n-th root of unity per point; complex codomains only.
  struct RootPhase {
    int n;
    std::uint64_t seed;
  };
  using Variant = std::variant<Constant, Halfspace, Seeded, RootPhase>;

  static SignRule constant(int s);
  static SignRule halfspace(Vector v);
  static SignRule seeded(std::uint64_t seed) { return SignRule(Seeded{seed}); }
  static SignRule root_phase(int n, std::uint64_t seed);

  const Variant& variant() const { return rule_; }
  Scalar value(const Vector& x) const;
  // For the +/-1 rules; throws for a RootPhase rule with n > 2.
  int sign(const Vector& x) const;

 private:
  explicit SignRule(Variant rule) : rule_(std::move(rule)) {}
  Variant rule_;
};

class MapSpec;

struct LinearIsometry {
  SpaceSpec domain;
  SpaceSpec codomain;
  Eigen::MatrixXd q;
};

// f(x) = eps(x) * Q x
struct PhaseIsometry {
  SpaceSpec domain;
  SpaceSpec codomain;
  Eigen::MatrixXd q;
  SignRule rule;
};

// C^2 -> C^2, (x1, x2) -> (x1, conj(x2)): real linear, not complex homogeneous.
struct RatzConjugation {};

// Defined on the line R*a only: f(lambda a) = |lambda| b.
struct AbsOneDim {
  SpaceSpec domain;
  SpaceSpec codomain;
  Vector a;
  Vector b;
};

struct Tabulated {
  SpaceSpec domain;
  SpaceSpec codomain;
  std::vector<std::pair<Vector, Vector>> pairs;
};

// c * base(x), |c| != 1. Violator.
struct Scaled {
  std::shared_ptr<const MapSpec> base;
  double c;
};

// Q x + eta * noise(x) with noise a seeded standard gaussian per point. Violator.
struct PerturbedLinear {
  SpaceSpec domain;
  SpaceSpec codomain;
  Eigen::MatrixXd q;
  double eta;
  std::uint64_t seed;
};

class MapSpec {
 public:
  using Variant = std::variant<LinearIsometry, PhaseIsometry, RatzConjugation, AbsOneDim,
                               Tabulated, Scaled, PerturbedLinear>;

  static MapSpec linear_isometry(SpaceSpec domain, SpaceSpec codomain, Eigen::MatrixXd q);
  // Real euclidean spaces sized from q.
  static MapSpec linear_isometry(Eigen::MatrixXd q);
  static MapSpec phase_isometry(SpaceSpec domain, SpaceSpec codomain, Eigen::MatrixXd q,
                                SignRule rule);
  static MapSpec phase_isometry(Eigen::MatrixXd q, SignRule rule);
  static MapSpec ratz();
  static MapSpec abs_one_dim(SpaceSpec domain, SpaceSpec codomain, Vector a, Vector b);
  static MapSpec tabulated(SpaceSpec domain, SpaceSpec codomain,
                           std::vector<std::pair<Vector, Vector>> pairs);
  static MapSpec scaled(MapSpec base, double c);
  static MapSpec perturbed_linear(SpaceSpec domain, SpaceSpec codomain, Eigen::MatrixXd q,
                                  double eta = 0.1, std::uint64_t seed = 0);

  const Variant& variant() const { return map_; }
  std::string_view kind() const;
  SpaceSpec domain() const;
  SpaceSpec codomain() const;
  bool is_tabulated() const { return std::holds_alternative<Tabulated>(map_); }

  Vector operator()(const Vector& x) const;

 private:
  explicit MapSpec(Variant map) : map_(std::move(map)) {}
  Variant map_;
};

Vector eval(const MapSpec& m, const Vector& x);

// Pairs (x, m(x)); propagates OutOfDomain.
MapSpec tabulate(const MapSpec& m, const std::vector<Vector>& xs);

// Seeded gaussian matrix orthonormalized by Householder QR, columns signed so
// diag(R) > 0. Unique per seed.
Eigen::MatrixXd random_orthogonal(std::size_t dim, std::uint64_t seed);
// rows x cols with orthonormal columns (rows >= cols), same construction.
Eigen::MatrixXd random_isometry(std::size_t rows, std::size_t cols, std::uint64_t seed);
// Realified 2d x 2d matrix of a seeded unitary d x d matrix (complex QR,
// diag(R) made real positive).
Eigen::MatrixXd random_unitary(std::size_t dim, std::uint64_t seed);
// Coordinate permutation with random signs.
Eigen::MatrixXd signed_permutation(std::size_t dim, std::uint64_t seed);
// Realified coordinate-wise conjugation on C^dim.
Eigen::MatrixXd conjugation_matrix(std::size_t dim);
// Realified form of a complex matrix: each entry a+bi becomes [[a, -b], [b, a]].
Eigen::MatrixXd realify(const Eigen::MatrixXcd& m);

}  // namespace wigner
