#include "wigner/space.hpp"

#include "wigner/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace wigner {

namespace {

void require_same_shape(const Vector& x, const Vector& y) {
  if (x.field() != y.field() || x.real_dim() != y.real_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vectors of shape " + to_string(x.field()) + "^" + std::to_string(x.dim()) +
                    " and " + to_string(y.field()) + "^" + std::to_string(y.dim()));
  }
}

void require_conforms(const Vector& x, const SpaceSpec& space) {
  if (!x.conforms(space)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector " + to_string(x.field()) + "^" + std::to_string(x.dim()) +
                    " does not belong to " + to_string(space.field()) + "^" +
                    std::to_string(space.dim()));
  }
}

void require_finite(const Eigen::VectorXd& coords) {
  if (!coords.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "vector entries must be finite");
  }
}

}  // namespace

std::string to_string(Field field) { return field == Field::kReal ? "real" : "complex"; }

std::string to_string(Distribution distribution) {
  switch (distribution) {
    case Distribution::kGaussian: return "gaussian";
    case Distribution::kSphere: return "sphere";
    case Distribution::kGrid: return "grid";
  }
  return "gaussian";
}

Norm Norm::pnorm(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::kInvalidArgument, "pnorm requires finite p >= 1");
  }
  return Norm(p);
}

SpaceSpec::SpaceSpec(Field field, std::size_t dim, Norm norm)
    : field_(field), dim_(dim), norm_(norm) {
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "space dimension must be >= 1");
  if (field == Field::kComplex && !norm.is_euclidean()) {
    throw Error(ErrorCode::kUnsupportedNorm, "pnorm is only available on real spaces");
  }
}

Vector Vector::real(std::vector<double> entries) {
  Eigen::VectorXd coords = Eigen::Map<Eigen::VectorXd>(entries.data(), entries.size());
  require_finite(coords);
  return Vector(Field::kReal, std::move(coords));
}

Vector Vector::complex(const std::vector<Scalar>& entries) {
  Eigen::VectorXd coords(2 * entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    coords[2 * k] = entries[k].real();
    coords[2 * k + 1] = entries[k].imag();
  }
  require_finite(coords);
  return Vector(Field::kComplex, std::move(coords));
}

Vector Vector::from_coords(Field field, Eigen::VectorXd coords) {
  if (field == Field::kComplex && coords.size() % 2 != 0) {
    throw Error(ErrorCode::kDimensionMismatch, "complex coordinates must come in (re, im) pairs");
  }
  require_finite(coords);
  return Vector(field, std::move(coords));
}

Vector Vector::zero(const SpaceSpec& space) {
  return Vector(space.field(), Eigen::VectorXd::Zero(space.real_dim()));
}

Vector Vector::basis(const SpaceSpec& space, std::size_t k) {
  if (k >= space.real_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "basis index out of range");
  }
  Eigen::VectorXd coords = Eigen::VectorXd::Zero(space.real_dim());
  coords[k] = 1.0;
  return Vector(space.field(), std::move(coords));
}

Scalar Vector::entry(std::size_t k) const {
  if (k >= dim()) throw Error(ErrorCode::kDimensionMismatch, "entry index out of range");
  if (is_complex()) return {coords_[2 * k], coords_[2 * k + 1]};
  return {coords_[k], 0.0};
}

Vector Vector::operator+(const Vector& other) const {
  require_same_shape(*this, other);
  return Vector(field_, coords_ + other.coords_);
}

Vector Vector::operator-(const Vector& other) const {
  require_same_shape(*this, other);
  return Vector(field_, coords_ - other.coords_);
}

Vector Vector::times(Scalar beta) const {
  if (!is_complex()) {
    if (beta.imag() != 0.0) {
      throw Error(ErrorCode::kRealFieldUnsupported,
                  "cannot multiply a real vector by a non-real scalar");
    }
    return scaled(beta.real());
  }
  Eigen::VectorXd out(coords_.size());
  for (Eigen::Index k = 0; k < coords_.size(); k += 2) {
    const double re = coords_[k];
    const double im = coords_[k + 1];
    out[k] = beta.real() * re - beta.imag() * im;
    out[k + 1] = beta.imag() * re + beta.real() * im;
  }
  return Vector(field_, std::move(out));
}

double real_inner(const Vector& x, const Vector& y) {
  require_same_shape(x, y);
  return x.coords().dot(y.coords());
}

double real_inner(const Vector& x, const Vector& y, const SpaceSpec& space) {
  require_conforms(x, space);
  require_conforms(y, space);
  if (!space.norm().is_euclidean()) {
    throw Error(ErrorCode::kUnsupportedNorm, "inner product requires the euclidean norm");
  }
  return real_inner(x, y);
}

double norm(const Vector& x) { return x.coords().norm(); }

double norm(const Vector& x, const SpaceSpec& space) {
  require_conforms(x, space);
  if (space.norm().is_euclidean()) return norm(x);
  const double p = space.norm().p();
  if (p == 1.0) return x.coords().lpNorm<1>();
  double sum = 0.0;
  for (double c : x.coords()) sum += std::pow(std::abs(c), p);
  return std::pow(sum, 1.0 / p);
}

Vector realify(const Vector& x) {
  if (!x.is_complex()) throw Error(ErrorCode::kAlreadyReal, "vector is already real");
  return Vector::from_coords(Field::kReal, x.coords());
}

bool close(double a, double b, Tolerance tol) {
  return std::abs(a - b) <= tol.atol + tol.rtol * std::max(std::abs(a), std::abs(b));
}

bool close(const Vector& a, const Vector& b, Tolerance tol) {
  if (a.field() != b.field() || a.real_dim() != b.real_dim()) return false;
  for (Eigen::Index k = 0; k < a.coords().size(); ++k) {
    if (!close(a.coords()[k], b.coords()[k], tol)) return false;
  }
  return true;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  return r * std::cos(theta);
}

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + 0x9E3779B97F4A7C15ULL * (index + 1));
}

std::uint64_t hash_point(std::uint64_t seed, const Vector& x) {
  std::uint64_t h = splitmix64(seed);
  for (double c : x.coords()) {
    const double canonical = c == 0.0 ? 0.0 : c;
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(canonical));
  }
  return h;
}

std::vector<Vector> sample(const SamplePlan& plan, const SpaceSpec& space) {
  if (plan.count < 1) throw Error(ErrorCode::kInvalidArgument, "sample plan needs count >= 1");
  const std::size_t n = space.real_dim();
  std::vector<Vector> out;

  if (plan.distribution == Distribution::kGrid) {
    if (!(plan.step > 0.0) || !(plan.half_width >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "grid plan needs step > 0 and half_width >= 0");
    }
    const auto per_axis =
        static_cast<std::size_t>(std::floor(2.0 * plan.half_width / plan.step + 1e-9)) + 1;
    const double total = std::pow(static_cast<double>(per_axis), static_cast<double>(n));
    if (total > 1e6) throw Error(ErrorCode::kInvalidArgument, "grid plan exceeds 1e6 points");
    std::vector<std::size_t> digit(n, 0);
    for (std::size_t point = 0; point < static_cast<std::size_t>(total); ++point) {
      Eigen::VectorXd coords(n);
      for (std::size_t k = 0; k < n; ++k) {
        coords[k] = -plan.half_width + static_cast<double>(digit[k]) * plan.step;
      }
      out.push_back(Vector::from_coords(space.field(), std::move(coords)));
      for (std::size_t k = n; k-- > 0;) {
        if (++digit[k] < per_axis) break;
        digit[k] = 0;
      }
    }
    return out;
  }

  Rng rng(plan.seed);
  out.reserve(plan.count);
  while (out.size() < plan.count) {
    Eigen::VectorXd coords(n);
    for (std::size_t k = 0; k < n; ++k) coords[k] = rng.gaussian();
    if (plan.distribution == Distribution::kSphere) {
      const double r = coords.norm();
      if (r == 0.0) continue;
      coords /= r;
    }
    out.push_back(Vector::from_coords(space.field(), std::move(coords)));
  }
  return out;
}

std::vector<Scalar> roots_of_unity(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "roots_of_unity needs n >= 1");
  static const Scalar kQuarterTurns[] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  std::vector<Scalar> roots;
  roots.reserve(n);
  for (int k = 0; k < n; ++k) {
    if ((4 * k) % n == 0) {
      roots.push_back(kQuarterTurns[(4 * k) / n]);
    } else {
      const double angle = 2.0 * std::numbers::pi * k / n;
      roots.emplace_back(std::cos(angle), std::sin(angle));
    }
  }
  return roots;
}

}  // namespace wigner
