#include "wigner/maps.hpp"

#include "wigner/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wigner {

namespace {

constexpr double kOrthogonalityTol = 1e-10;
constexpr double kUnitNormTol = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_isometric(const SpaceSpec& domain, const SpaceSpec& codomain,
                       const Eigen::MatrixXd& q) {
  if (static_cast<std::size_t>(q.cols()) != domain.real_dim() ||
      static_cast<std::size_t>(q.rows()) != codomain.real_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix is " + std::to_string(q.rows()) + "x" + std::to_string(q.cols()) +
                    ", spaces need " + std::to_string(codomain.real_dim()) + "x" +
                    std::to_string(domain.real_dim()));
  }
  if (!q.allFinite()) throw Error(ErrorCode::kInvalidArgument, "matrix entries must be finite");
  const Eigen::MatrixXd gram = q.transpose() * q;
  const double deviation =
      (gram - Eigen::MatrixXd::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
  if (deviation > kOrthogonalityTol) {
    throw Error(ErrorCode::kNotIsometric,
                "Q^T Q deviates from I by " + std::to_string(deviation));
  }
}

void require_conforms(const Vector& x, const SpaceSpec& space, const char* what) {
  if (!x.conforms(space)) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " does not belong to " + to_string(space.field()) + "^" +
                    std::to_string(space.dim()));
  }
}

Vector apply(const Eigen::MatrixXd& q, const SpaceSpec& domain, const SpaceSpec& codomain,
             const Vector& x) {
  require_conforms(x, domain, "argument");
  return Vector::from_coords(codomain.field(), q * x.coords());
}

// Columns of q scaled so the diagonal of r is positive (zero counts as positive).
template <class Matrix>
Matrix fix_qr_signs(const Eigen::HouseholderQR<Matrix>& qr, Eigen::Index cols) {
  Matrix q = qr.householderQ() * Matrix::Identity(qr.rows(), cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const auto r = qr.matrixQR()(j, j);
    if (std::abs(r) > 0.0) q.col(j) *= r / std::abs(r);
  }
  return q;
}

}  // namespace

SignRule SignRule::constant(int s) {
  if (s != 1 && s != -1) throw Error(ErrorCode::kInvalidArgument, "constant sign must be +1 or -1");
  return SignRule(Constant{s});
}

SignRule SignRule::halfspace(Vector v) { return SignRule(Halfspace{std::move(v)}); }

SignRule SignRule::root_phase(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "root phase rule needs n >= 1");
  return SignRule(RootPhase{n, seed});
}

Scalar SignRule::value(const Vector& x) const {
  return std::visit(
      Overloaded{
          [](const Constant& r) { return Scalar(r.s, 0.0); },
          [&](const Halfspace& r) { return Scalar(real_inner(x, r.v) >= 0.0 ? 1.0 : -1.0, 0.0); },
          [&](const Seeded& r) {
            return Scalar((hash_point(r.seed, x) >> 63) != 0 ? -1.0 : 1.0, 0.0);
          },
          [&](const RootPhase& r) {
            const auto roots = roots_of_unity(r.n);
            return roots[hash_point(r.seed, x) % static_cast<std::uint64_t>(r.n)];
          },
      },
      rule_);
}

int SignRule::sign(const Vector& x) const {
  const Scalar v = value(x);
  if (v.imag() != 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "rule takes non-real values; use value()");
  }
  return v.real() > 0.0 ? 1 : -1;
}

MapSpec MapSpec::linear_isometry(SpaceSpec domain, SpaceSpec codomain, Eigen::MatrixXd q) {
  require_isometric(domain, codomain, q);
  return MapSpec(LinearIsometry{domain, codomain, std::move(q)});
}

MapSpec MapSpec::linear_isometry(Eigen::MatrixXd q) {
  const auto rows = static_cast<std::size_t>(q.rows());
  const auto cols = static_cast<std::size_t>(q.cols());
  return linear_isometry(SpaceSpec::real(cols), SpaceSpec::real(rows), std::move(q));
}

MapSpec MapSpec::phase_isometry(SpaceSpec domain, SpaceSpec codomain, Eigen::MatrixXd q,
                                SignRule rule) {
  require_isometric(domain, codomain, q);
  if (const auto* h = std::get_if<SignRule::Halfspace>(&rule.variant())) {
    require_conforms(h->v, domain, "halfspace normal");
  }
  if (const auto* r = std::get_if<SignRule::RootPhase>(&rule.variant())) {
    if (r->n > 2 && !codomain.is_complex()) {
      throw Error(ErrorCode::kRealFieldUnsupported, "n-phase rules with n > 2 need a complex codomain");
    }
  }
  return MapSpec(PhaseIsometry{domain, codomain, std::move(q), std::move(rule)});
}

MapSpec MapSpec::phase_isometry(Eigen::MatrixXd q, SignRule rule) {
  const auto rows = static_cast<std::size_t>(q.rows());
  const auto cols = static_cast<std::size_t>(q.cols());
  return phase_isometry(SpaceSpec::real(cols), SpaceSpec::real(rows), std::move(q),
                        std::move(rule));
}

MapSpec MapSpec::ratz() { return MapSpec(RatzConjugation{}); }

MapSpec MapSpec::abs_one_dim(SpaceSpec domain, SpaceSpec codomain, Vector a, Vector b) {
  require_conforms(a, domain, "a");
  require_conforms(b, codomain, "b");
  if (std::abs(norm(a) - 1.0) > kUnitNormTol || std::abs(norm(b) - 1.0) > kUnitNormTol) {
    throw Error(ErrorCode::kInvalidArgument, "AbsOneDim needs unit vectors a and b");
  }
  return MapSpec(AbsOneDim{domain, codomain, std::move(a), std::move(b)});
}

MapSpec MapSpec::tabulated(SpaceSpec domain, SpaceSpec codomain,
                           std::vector<std::pair<Vector, Vector>> pairs) {
  const Tolerance identity_tol{1e-9, 0.0};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    require_conforms(pairs[i].first, domain, "tabulated point");
    require_conforms(pairs[i].second, codomain, "tabulated image");
    for (std::size_t j = 0; j < i; ++j) {
      if (close(pairs[i].first, pairs[j].first, identity_tol)) {
        throw Error(ErrorCode::kInvalidArgument, "duplicate tabulated points " +
                                                     std::to_string(j) + " and " +
                                                     std::to_string(i));
      }
    }
  }
  return MapSpec(Tabulated{domain, codomain, std::move(pairs)});
}

MapSpec MapSpec::scaled(MapSpec base, double c) {
  if (!std::isfinite(c) || std::abs(c) == 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "Scaled needs a finite c != +/-1");
  }
  return MapSpec(Scaled{std::make_shared<const MapSpec>(std::move(base)), c});
}

MapSpec MapSpec::perturbed_linear(SpaceSpec domain, SpaceSpec codomain, Eigen::MatrixXd q,
                                  double eta, std::uint64_t seed) {
  require_isometric(domain, codomain, q);
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error(ErrorCode::kInvalidArgument, "PerturbedLinear needs eta > 0");
  }
  return MapSpec(PerturbedLinear{domain, codomain, std::move(q), eta, seed});
}

std::string_view MapSpec::kind() const {
  return std::visit(Overloaded{
                        [](const LinearIsometry&) { return "LinearIsometry"; },
                        [](const PhaseIsometry&) { return "PhaseIsometry"; },
                        [](const RatzConjugation&) { return "RatzConjugation"; },
                        [](const AbsOneDim&) { return "AbsOneDim"; },
                        [](const Tabulated&) { return "Tabulated"; },
                        [](const Scaled&) { return "Scaled"; },
                        [](const PerturbedLinear&) { return "PerturbedLinear"; },
                    },
                    map_);
}

SpaceSpec MapSpec::domain() const {
  return std::visit(Overloaded{
                        [](const RatzConjugation&) { return SpaceSpec::complex(2); },
                        [](const Scaled& m) { return m.base->domain(); },
                        [](const auto& m) { return m.domain; },
                    },
                    map_);
}

SpaceSpec MapSpec::codomain() const {
  return std::visit(Overloaded{
                        [](const RatzConjugation&) { return SpaceSpec::complex(2); },
                        [](const Scaled& m) { return m.base->codomain(); },
                        [](const auto& m) { return m.codomain; },
                    },
                    map_);
}

Vector MapSpec::operator()(const Vector& x) const {
  return std::visit(
      Overloaded{
          [&](const LinearIsometry& m) { return apply(m.q, m.domain, m.codomain, x); },
          [&](const PhaseIsometry& m) {
            return apply(m.q, m.domain, m.codomain, x).times(m.rule.value(x));
          },
          [&](const RatzConjugation&) {
            require_conforms(x, SpaceSpec::complex(2), "argument");
            Eigen::VectorXd out = x.coords();
            out[3] = -out[3];
            return Vector::from_coords(Field::kComplex, std::move(out));
          },
          [&](const AbsOneDim& m) {
            require_conforms(x, m.domain, "argument");
            const double lambda = real_inner(x, m.a);
            const double off_line = norm(x - m.a.scaled(lambda));
            const Tolerance tol;
            if (off_line > tol.atol + tol.rtol * norm(x)) {
              throw Error(ErrorCode::kOutOfDomain, "point is not on the line R*a");
            }
            return m.b.scaled(std::abs(lambda));
          },
          [&](const Tabulated& m) {
            require_conforms(x, m.domain, "argument");
            for (const auto& [point, image] : m.pairs) {
              if (close(point, x)) return image;
            }
            throw Error(ErrorCode::kOutOfDomain, "point is not tabulated");
          },
          [&](const Scaled& m) { return (*m.base)(x).scaled(m.c); },
          [&](const PerturbedLinear& m) {
            Vector out = apply(m.q, m.domain, m.codomain, x);
            Rng rng(hash_point(m.seed, x));
            Eigen::VectorXd noise(out.real_dim());
            for (Eigen::Index k = 0; k < noise.size(); ++k) noise[k] = rng.gaussian();
            return out + Vector::from_coords(out.field(), m.eta * noise);
          },
      },
      map_);
}

Vector eval(const MapSpec& m, const Vector& x) { return m(x); }

MapSpec tabulate(const MapSpec& m, const std::vector<Vector>& xs) {
  std::vector<std::pair<Vector, Vector>> pairs;
  pairs.reserve(xs.size());
  for (const auto& x : xs) pairs.emplace_back(x, m(x));
  return MapSpec::tabulated(m.domain(), m.codomain(), std::move(pairs));
}

Eigen::MatrixXd random_isometry(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  if (cols < 1 || rows < cols) {
    throw Error(ErrorCode::kInvalidArgument, "random_isometry needs rows >= cols >= 1");
  }
  Rng rng(seed);
  Eigen::MatrixXd g(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) g(r, c) = rng.gaussian();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return fix_qr_signs(qr, static_cast<Eigen::Index>(cols));
}

Eigen::MatrixXd random_orthogonal(std::size_t dim, std::uint64_t seed) {
  return random_isometry(dim, dim, seed);
}

Eigen::MatrixXd random_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim < 1) throw Error(ErrorCode::kInvalidArgument, "random_unitary needs dim >= 1");
  Rng rng(seed);
  Eigen::MatrixXcd g(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      g(r, c) = {re, im};
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return realify(fix_qr_signs(qr, static_cast<Eigen::Index>(dim)));
}

Eigen::MatrixXd signed_permutation(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  // Fisher-Yates on the documented stream, not std::shuffle (unspecified algorithm).
  for (std::size_t k = dim; k > 1; --k) {
    std::swap(perm[k - 1], perm[rng.next() % k]);
  }
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) p(perm[c], c) = (rng.next() >> 63) != 0 ? -1.0 : 1.0;
  return p;
}

Eigen::MatrixXd conjugation_matrix(std::size_t dim) {
  Eigen::VectorXd diag(2 * dim);
  for (std::size_t k = 0; k < dim; ++k) {
    diag[2 * k] = 1.0;
    diag[2 * k + 1] = -1.0;
  }
  return diag.asDiagonal();
}

Eigen::MatrixXd realify(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXd out(2 * m.rows(), 2 * m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double a = m(r, c).real();
      const double b = m(r, c).imag();
      out(2 * r, 2 * c) = a;
      out(2 * r, 2 * c + 1) = -b;
      out(2 * r + 1, 2 * c) = b;
      out(2 * r + 1, 2 * c + 1) = a;
    }
  }
  return out;
}

}  // namespace wigner
