#pragma once

// Finite-dimensional real and complex spaces seen through the real inner
// product <<x, y>> = Re<x, y>. Complex vectors are stored realified, as
// interleaved (re, im) coordinates, so every space is R^n underneath.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace wigner {

using Scalar = std::complex<double>;

enum class Field { kReal, kComplex };

std::string to_string(Field field);

class Norm {
 public:
  static Norm euclidean() { return Norm(std::nullopt); }
  // l^p norm on real coordinates, p >= 1.
  static Norm pnorm(double p);

  bool is_euclidean() const { return !p_.has_value(); }
  double p() const { return p_.value_or(2.0); }

  friend bool operator==(const Norm&, const Norm&) = default;

 private:
  explicit Norm(std::optional<double> p) : p_(p) {}
  std::optional<double> p_;
};

class SpaceSpec {
 public:
  SpaceSpec(Field field, std::size_t dim, Norm norm = Norm::euclidean());

  static SpaceSpec real(std::size_t dim, Norm norm = Norm::euclidean()) {
    return SpaceSpec(Field::kReal, dim, norm);
  }
  static SpaceSpec complex(std::size_t dim) { return SpaceSpec(Field::kComplex, dim); }

  Field field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Norm& norm() const { return norm_; }
  bool is_complex() const { return field_ == Field::kComplex; }
  // Dimension of the underlying real space.
  std::size_t real_dim() const { return is_complex() ? 2 * dim_ : dim_; }

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  Field field_;
  std::size_t dim_;
  Norm norm_;
};

class Vector {
 public:
  Vector() = default;

  static Vector real(std::vector<double> entries);
  static Vector complex(const std::vector<Scalar>& entries);
  // coords are realified: length dim for real, 2*dim interleaved for complex.
  static Vector from_coords(Field field, Eigen::VectorXd coords);
  static Vector zero(const SpaceSpec& space);
  // k-th vector of the realified standard basis (for complex spaces odd k is i*e_{k/2}).
  static Vector basis(const SpaceSpec& space, std::size_t k);

  Field field() const { return field_; }
  bool is_complex() const { return field_ == Field::kComplex; }
  std::size_t dim() const { return is_complex() ? coords_.size() / 2 : coords_.size(); }
  std::size_t real_dim() const { return coords_.size(); }
  const Eigen::VectorXd& coords() const { return coords_; }
  Scalar entry(std::size_t k) const;
  bool conforms(const SpaceSpec& space) const {
    return field_ == space.field() && dim() == space.dim();
  }

  Vector operator+(const Vector& other) const;
  Vector operator-(const Vector& other) const;
  Vector operator-() const { return Vector(field_, -coords_); }
  Vector scaled(double lambda) const { return Vector(field_, lambda * coords_); }
  // Complex scalar multiplication; on a real vector only real scalars are allowed.
  Vector times(Scalar beta) const;

 private:
  Vector(Field field, Eigen::VectorXd coords) : field_(field), coords_(std::move(coords)) {}

  Field field_ = Field::kReal;
  Eigen::VectorXd coords_;
};

// Sum of Re(x_k * conj(y_k)); the euclidean inner product of realified coordinates.
double real_inner(const Vector& x, const Vector& y, const SpaceSpec& space);
double real_inner(const Vector& x, const Vector& y);
double norm(const Vector& x, const SpaceSpec& space);
double norm(const Vector& x);
Vector realify(const Vector& x);

// |a - b| <= atol + rtol * max(|a|, |b|)
struct Tolerance {
  double atol = 1e-9;
  double rtol = 1e-9;
};
bool close(double a, double b, Tolerance tol = {});
bool close(const Vector& a, const Vector& b, Tolerance tol = {});

// wigner-rng v1: std::mt19937_64 stream, 53-bit uniforms, Box-Muller normals.
// Fixed here so sample corpora are reproducible across platforms; see
// docs/formats.md for the exact recipe.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  // Uniform on [0, 1).
  double uniform();
  double gaussian();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

std::uint64_t splitmix64(std::uint64_t x);
// Child seed for trial/stream `index` of a master seed.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);
// Deterministic hash of a point's coordinates (-0.0 and 0.0 hash alike).
std::uint64_t hash_point(std::uint64_t seed, const Vector& x);

enum class Distribution { kGaussian, kSphere, kGrid };

std::string to_string(Distribution distribution);

struct SamplePlan {
  std::size_t count = 100;
  Distribution distribution = Distribution::kGaussian;
  std::uint64_t seed = 0;
  // Grid only: lattice over every realified coordinate in [-half_width, half_width].
  double half_width = 1.0;
  double step = 1.0;
};

// Gaussian and sphere plans return plan.count points. Grid plans return the
// whole lattice regardless of count.
std::vector<Vector> sample(const SamplePlan& plan, const SpaceSpec& space);

// exp(2 pi i k / n) for k = 0..n-1; quarter turns are exact.
std::vector<Scalar> roots_of_unity(int n);

}  // namespace wigner
