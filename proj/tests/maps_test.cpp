#include "wigner/maps.hpp"

#include "oracles.hpp"
#include "wigner/error.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace wigner {
namespace {

using C = std::complex<double>;

template <class F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no wigner::Error thrown";
  return ErrorCode::kInvalidArgument;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Eval, RatzConjugatesSecondCoordinate) {
  const Vector fx = eval(MapSpec::ratz(), Vector::complex({0.0, C(0, 1)}));
  EXPECT_EQ(fx.coords(), Vector::complex({0.0, C(0, -1)}).coords());
}

TEST(Eval, HalfspacePhaseFlipsNegativeSide) {
  const MapSpec m = MapSpec::phase_isometry(Eigen::MatrixXd::Identity(2, 2),
                                            SignRule::halfspace(Vector::real({1, 0})));
  EXPECT_EQ(eval(m, Vector::real({-2, 0})).coords(), Vector::real({2, 0}).coords());
  EXPECT_EQ(eval(m, Vector::real({0, -5})).coords(), Vector::real({0, -5}).coords());
}

TEST(Eval, AbsOneDimTakesAbsoluteValue) {
  const MapSpec m = MapSpec::abs_one_dim(SpaceSpec::real(1), SpaceSpec::real(1),
                                         Vector::real({1}), Vector::real({1}));
  EXPECT_EQ(eval(m, Vector::real({-3})).coords(), Vector::real({3}).coords());
}

TEST(Eval, OutOfDomain) {
  const MapSpec line = MapSpec::abs_one_dim(SpaceSpec::real(2), SpaceSpec::real(2),
                                            Vector::real({1, 0}), Vector::real({0, 1}));
  EXPECT_EQ(eval(line, Vector::real({-2, 0})).coords(), Vector::real({0, 2}).coords());
  EXPECT_EQ(error_code_of([&] { eval(line, Vector::real({1, 1})); }), ErrorCode::kOutOfDomain);
  const MapSpec table = tabulate(MapSpec::linear_isometry(Eigen::MatrixXd::Identity(2, 2)),
                                 {Vector::real({1, 0})});
  EXPECT_EQ(error_code_of([&] { eval(table, Vector::real({0, 1})); }), ErrorCode::kOutOfDomain);
  EXPECT_EQ(error_code_of([&] { eval(table, Vector::real({1, 0, 0})); }),
            ErrorCode::kDimensionMismatch);
}

TEST(SignRule, ValuesAreSigns) {
  const auto xs = sample({200, Distribution::kGaussian, 4}, SpaceSpec::real(3));
  const SignRule seeded = SignRule::seeded(17);
  int plus = 0;
  for (const auto& x : xs) {
    const int s = seeded.sign(x);
    ASSERT_TRUE(s == 1 || s == -1);
    EXPECT_EQ(s, SignRule::seeded(17).sign(x));
    plus += s == 1;
  }
  EXPECT_GT(plus, 50);
  EXPECT_LT(plus, 150);
  EXPECT_EQ(SignRule::halfspace(Vector::real({1, 0, 0})).sign(Vector::real({0, 3, 0})), 1);
  EXPECT_EQ(SignRule::constant(-1).sign(xs[0]), -1);
  EXPECT_EQ(error_code_of([] { SignRule::constant(0); }), ErrorCode::kInvalidArgument);
}

TEST(SignRule, SeededIgnoresSignOfZero) {
  const SignRule rule = SignRule::seeded(3);
  EXPECT_EQ(rule.sign(Vector::real({0.0, 1.0})), rule.sign(Vector::real({-0.0, 1.0})));
}

TEST(SignRule, RootPhaseIsAnNthRoot) {
  const SignRule rule = SignRule::root_phase(3, 8);
  for (const auto& x : sample({30, Distribution::kGaussian, 1}, SpaceSpec::complex(2))) {
    const Scalar v = rule.value(x);
    EXPECT_NEAR(std::abs(std::pow(v, 3) - 1.0), 0.0, 1e-12);
  }
}

TEST(RandomOrthogonal, OneDimensionalIsPlusMinusOne) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double q = random_orthogonal(1, seed)(0, 0);
    EXPECT_TRUE(q == 1.0 || q == -1.0) << q;
  }
}

TEST(RandomOrthogonal, IsOrthogonalAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::MatrixXd q = random_orthogonal(5, seed);
    EXPECT_LE(max_abs(q.transpose() * q - Eigen::MatrixXd::Identity(5, 5)), 1e-12);
    EXPECT_EQ(q, random_orthogonal(5, seed));
  }
  EXPECT_NE(random_orthogonal(5, 1), random_orthogonal(5, 2));
}

TEST(RandomIsometry, HasOrthonormalColumns) {
  const Eigen::MatrixXd q = random_isometry(6, 3, 9);
  EXPECT_LE(max_abs(q.transpose() * q - Eigen::MatrixXd::Identity(3, 3)), 1e-12);
  EXPECT_EQ(error_code_of([] { random_isometry(2, 3, 0); }), ErrorCode::kInvalidArgument);
}

TEST(RandomUnitary, RealifiedBlocksCommuteWithMultiplicationByI) {
  const Eigen::MatrixXd u = random_unitary(3, 4);
  EXPECT_LE(max_abs(u.transpose() * u - Eigen::MatrixXd::Identity(6, 6)), 1e-12);
  const auto x = sample({1, Distribution::kGaussian, 2}, SpaceSpec::complex(3))[0];
  const Vector ux = Vector::from_coords(Field::kComplex, u * x.coords());
  const Vector uix = Vector::from_coords(Field::kComplex, u * x.times(C(0, 1)).coords());
  EXPECT_LE(norm(uix - ux.times(C(0, 1))), 1e-12);
}

TEST(SignedPermutation, IsASignedPermutation) {
  const Eigen::MatrixXd p = signed_permutation(6, 3);
  for (int r = 0; r < 6; ++r) {
    EXPECT_EQ(p.row(r).cwiseAbs().sum(), 1.0);
    EXPECT_EQ(p.col(r).cwiseAbs().sum(), 1.0);
  }
}

TEST(ConjugationMatrix, ConjugatesEntries) {
  const Vector x = Vector::complex({C(1, 2), C(-3, 4)});
  const Vector y = Vector::from_coords(Field::kComplex, conjugation_matrix(2) * x.coords());
  EXPECT_EQ(y.entry(0), C(1, -2));
  EXPECT_EQ(y.entry(1), C(-3, -4));
}

TEST(Tabulate, Examples) {
  const MapSpec id = MapSpec::linear_isometry(Eigen::MatrixXd::Identity(2, 2));
  const Vector e1 = Vector::real({1, 0});
  const MapSpec one_table = tabulate(id, {e1});
  const auto& one = std::get<Tabulated>(one_table.variant());
  ASSERT_EQ(one.pairs.size(), 1u);
  EXPECT_EQ(one.pairs[0].second.coords(), e1.coords());

  const MapSpec scaled_table = tabulate(MapSpec::scaled(id, 2.0), {e1});
  const auto& scaled = std::get<Tabulated>(scaled_table.variant());
  EXPECT_EQ(scaled.pairs[0].second.coords(), Vector::real({2, 0}).coords());

  const std::vector<Vector> xs{Vector::complex({1.0, 0.0}), Vector::complex({0.0, 1.0}),
                               Vector::complex({0.0, C(0, 1)})};
  const MapSpec ratz_table = tabulate(MapSpec::ratz(), xs);
  const auto& ratz = std::get<Tabulated>(ratz_table.variant());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const auto want = oracle::ratz(oracle::entries(xs[k]));
    EXPECT_EQ(oracle::entries(ratz.pairs[k].second), want);
  }
}

TEST(MapSpec, ConstructionInvariants) {
  Eigen::MatrixXd skew = Eigen::MatrixXd::Identity(2, 2);
  skew(0, 1) = 1e-9;
  EXPECT_EQ(error_code_of([&] { MapSpec::linear_isometry(skew); }), ErrorCode::kNotIsometric);
  EXPECT_EQ(error_code_of([] {
              MapSpec::abs_one_dim(SpaceSpec::real(1), SpaceSpec::real(1), Vector::real({2}),
                                   Vector::real({1}));
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(error_code_of([] {
              MapSpec::tabulated(SpaceSpec::real(1), SpaceSpec::real(1),
                                 {{Vector::real({1}), Vector::real({1})},
                                  {Vector::real({1 + 1e-12}), Vector::real({2})}});
            }),
            ErrorCode::kInvalidArgument);
  const MapSpec id = MapSpec::linear_isometry(Eigen::MatrixXd::Identity(1, 1));
  EXPECT_EQ(error_code_of([&] { MapSpec::scaled(id, -1.0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(error_code_of([] {
              MapSpec::perturbed_linear(SpaceSpec::real(1), SpaceSpec::real(1),
                                        Eigen::MatrixXd::Identity(1, 1), 0.0);
            }),
            ErrorCode::kInvalidArgument);
}

// Properties.

TEST(MapsProperty, PhaseIsometryMatchesSignedDomainNorms) {
  const auto space = SpaceSpec::real(4);
  const Eigen::MatrixXd q = random_orthogonal(4, 31);
  const SignRule rule = SignRule::seeded(5);
  const MapSpec m = MapSpec::phase_isometry(q, rule);
  const auto xs = sample({40, Distribution::kGaussian, 12}, space);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Vector& x = xs[i];
    const Vector& y = xs[i + 1];
    const double s = rule.sign(x) * rule.sign(y);
    const Vector fx = m(x);
    const Vector fy = m(y);
    EXPECT_NEAR(norm(fx + fy), norm(x + y.scaled(s)), 1e-12 * (1 + norm(x) + norm(y)));
    EXPECT_NEAR(norm(fx - fy), norm(x - y.scaled(s)), 1e-12 * (1 + norm(x) + norm(y)));
  }
}

TEST(MapsProperty, RatzIsRealLinearButNotComplexHomogeneous) {
  const MapSpec m = MapSpec::ratz();
  const auto xs = sample({50, Distribution::kGaussian, 6}, SpaceSpec::complex(2));
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const Vector& x = xs[k];
    const Vector& y = xs[k + 1];
    EXPECT_LE(norm(m(x + y) - m(x) - m(y)), 1e-10);
    EXPECT_LE(norm(m(x.scaled(-1.7)) - m(x).scaled(-1.7)), 1e-10);
    EXPECT_NEAR(norm(m(x)), norm(x), 1e-12);
    const double residual = norm(m(x.times(C(0, 1))) - m(x).times(C(0, 1)));
    EXPECT_NEAR(residual, 2.0 * std::abs(x.entry(1)), 1e-12);
  }
}

TEST(MapsProperty, ScaledViolatesNormPreservationOnUnitSamples) {
  const auto space = SpaceSpec::real(3);
  const MapSpec base = MapSpec::linear_isometry(random_orthogonal(3, 2));
  for (const double c : {1.1, 0.9, 2.0, -0.5}) {
    const MapSpec m = MapSpec::scaled(base, c);
    for (const auto& x : sample({50, Distribution::kSphere, 8}, space)) {
      EXPECT_GE(std::abs(norm(m(x)) - norm(x)), 0.1 * (1 - 1e-9)) << "c=" << c;
    }
  }
}

TEST(MapsProperty, PerturbedLinearIsDeterministicPerPoint) {
  const MapSpec m = MapSpec::perturbed_linear(SpaceSpec::real(3), SpaceSpec::real(3),
                                              Eigen::MatrixXd::Identity(3, 3), 0.1, 4);
  const Vector x = Vector::real({0.3, -1, 2});
  EXPECT_EQ(m(x).coords(), m(x).coords());
  EXPECT_GT(norm(m(x) - x), 0.0);
}

}  // namespace
}  // namespace wigner
