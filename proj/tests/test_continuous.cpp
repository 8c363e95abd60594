#include <cmath>

#include <gtest/gtest.h>

#include "skewdirac/continuous.hpp"
#include "skewdirac/error.hpp"
#include "expect_code.hpp"
#include "test_support.hpp"

namespace skewdirac {
namespace {

using testing::ExpectCode;
using testing::random_admissible;
using testing::Rng;
using testing::soliton_quadruple;
using testing::zero_theta_quadruple;

double sech(double x) { return 1.0 / std::cosh(x); }

Matrix signature(Index m1, Index m2) {
  Matrix j = identity(m1 + m2);
  j.bottomRightCorner(m2, m2) *= -1.0;
  return j;
}

Matrix dirac_coefficient(const AdmissibleQuadruple& q, double x, Complex z) {
  const Matrix v = potential(q, x);
  Matrix big = Matrix::Zero(q.m(), q.m());
  big.topRightCorner(q.m1(), q.m2()) = v;
  big.bottomLeftCorner(q.m2(), q.m1()) = v.adjoint();
  const Matrix j = signature(q.m1(), q.m2());
  return kI * z * j + j * big;
}

double ode_residual(const AdmissibleQuadruple& q, double x, Complex z,
                    double h) {
  const Matrix du =
      (fundamental(q, x + h, z) - fundamental(q, x - h, z)) / (2.0 * h);
  return opnorm(du - dirac_coefficient(q, x, z) * fundamental(q, x, z));
}

GTEST_TEST(GridTest, Checks) {
  const auto xs = uniform_grid(0.0, 1.0, 4);
  ASSERT_EQ(xs.size(), 5u);
  EXPECT_EQ(xs.back(), 1.0);
  EXPECT_DOUBLE_EQ(xs[1], 0.25);
  GridSeries g{{0.0, 1.0, 1.0}, {Matrix(), Matrix(), Matrix()}};
  ExpectCode(ErrorCode::kPrecondition, [&] { check_grid(g); });
  g.abscissae.pop_back();
  ExpectCode(ErrorCode::kPrecondition, [&] { check_grid(g); });
  ExpectCode(ErrorCode::kPrecondition, [] { uniform_grid(1.0, 0.0, 3); });
}

GTEST_TEST(PotentialTest, SolitonFixture) {
  const auto q = soliton_quadruple();
  for (double x : {0.0, 0.5, 1.0, 2.0}) {
    EXPECT_NEAR(std::abs(potential(q, x)(0, 0) - 2.0 * sech(2.0 * x)), 0.0,
                1e-12);
  }
  EXPECT_NEAR(potential(q, 0.0)(0, 0).real(), 2.0, 1e-15);
  // 2 sech 2 = 0.5316044577...
  EXPECT_NEAR(potential(q, 1.0)(0, 0).real(), 0.53160446, 1e-8);
  EXPECT_NEAR(potential_alt(q, 1.0)(0, 0).real(), 0.53160446, 1e-8);
}

GTEST_TEST(PotentialTest, ZeroTheta) {
  const auto q = zero_theta_quadruple(3, 2, 1);
  for (double x : {0.0, 1.0, 7.5}) {
    EXPECT_EQ(potential(q, x).norm(), 0.0);
    EXPECT_EQ(potential_alt(q, x).norm(), 0.0);
  }
  const auto e = AdmissibleQuadruple::empty(2, 3);
  EXPECT_EQ(potential(e, 1.0).rows(), 2);
  EXPECT_EQ(potential(e, 1.0).cols(), 3);
}

GTEST_TEST(PotentialTest, AtOriginBothFormulas) {
  Rng rng(201);
  const auto q = random_admissible(rng, 4, 2, 3);
  const Matrix direct = 2.0 * q.theta1().adjoint() * q.s0_solve(q.theta2());
  EXPECT_LT(opnorm(potential(q, 0.0) - direct), 1e-14);
  EXPECT_LT(opnorm(potential_alt(q, 0.0) - direct), 1e-12);
}

GTEST_TEST(PotentialTest, TwoFormulasAgree) {
  Rng rng(202);
  for (int trial = 0; trial < 25; ++trial) {
    const auto s = testing::random_shape(rng, 8, 3, trial);
    const auto q = random_admissible(rng, s.n, s.m1, s.m2);
    for (double x : uniform_grid(0.0, 10.0, 19)) {
      const Matrix a = potential(q, x);
      const Matrix b = potential_alt(q, x);
      EXPECT_LT(opnorm(a - b), 1e-10 * std::max(1.0, opnorm(a)))
          << "trial " << trial << " x " << x;
    }
  }
}

GTEST_TEST(PotentialTest, BoundedOnHalfLine) {
  Rng rng(203);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = testing::random_shape(rng, 5, 3, trial);
    const auto q = random_admissible(rng, s.n, s.m1, s.m2);
    const double sup = potential_sup(q, 50.0, 500);
    EXPECT_TRUE(std::isfinite(sup));
    EXPECT_LT(sup, 1e3);
  }
}

GTEST_TEST(SamplePotentialTest, MatchesPointwise) {
  const auto q = soliton_quadruple();
  const auto g = sample_potential(q, uniform_grid(0.0, 3.0, 30));
  ASSERT_EQ(g.values.size(), 31u);
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    EXPECT_LT(opnorm(g.values[i] - potential(q, g.abscissae[i])), 1e-13);
  }
}

GTEST_TEST(FundamentalTest, Normalization) {
  Rng rng(204);
  const auto q = random_admissible(rng, 3, 2, 1);
  const Matrix u = fundamental(q, 0.0, Complex(0.3, 2.5));
  EXPECT_LT(opnorm(u - identity(3)), 1e-13);
}

GTEST_TEST(FundamentalTest, ZeroThetaIsFreeEvolution) {
  const auto q = zero_theta_quadruple(2, 1, 2);
  const Complex z(0.4, 1.3);
  const double x = 0.7;
  Matrix expected = Matrix::Zero(3, 3);
  expected(0, 0) = std::exp(kI * x * z);
  expected(1, 1) = std::exp(-kI * x * z);
  expected(2, 2) = std::exp(-kI * x * z);
  EXPECT_LT(opnorm(fundamental(q, x, z) - expected), 1e-14);
}

GTEST_TEST(FundamentalTest, SolitonSolvesSystem) {
  const auto q = soliton_quadruple();
  for (double x : {0.5, 1.0}) {
    EXPECT_LT(ode_residual(q, x, Complex(0.0, 2.0), 1e-4), 1e-6);
  }
}

GTEST_TEST(FundamentalTest, RandomSolvesSystemToSecondOrder) {
  Rng rng(205);
  for (int trial = 0; trial < 6; ++trial) {
    const auto s = testing::random_shape(rng, 4, 2, trial);
    const auto q = random_admissible(rng, s.n, s.m1, s.m2);
    const Complex z(0.5, 3.0);
    const double coarse = ode_residual(q, 0.8, z, 2e-3);
    const double fine = ode_residual(q, 0.8, z, 1e-3);
    EXPECT_LT(fine, 1e-4);
    EXPECT_GT(coarse / fine, 3.0);
    EXPECT_LT(coarse / fine, 5.0);
  }
}

GTEST_TEST(FundamentalTest, Pole) {
  ExpectCode(ErrorCode::kPole,
             [] { fundamental(soliton_quadruple(), 0.5, kI); });
}

GTEST_TEST(WeylTest, SolitonFixture) {
  const auto phi = weyl(soliton_quadruple());
  EXPECT_EQ(phi.convention(), Convention::kContinuous);
  for (double im : {2.0, 5.0, 10.0}) {
    for (int re = -3; re <= 3; ++re) {
      const Complex z(re, im);
      EXPECT_LT(std::abs(phi(z)(0, 0) - kI / z), 1e-15);
      EXPECT_LE(opnorm(phi(z)), 1.0);
    }
  }
  EXPECT_EQ(opnorm(weyl(zero_theta_quadruple(2, 1, 1))(Complex(0.0, 3.0))),
            0.0);
}

GTEST_TEST(WeylTest, StrictlyProperAndContractive) {
  Rng rng(206);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = testing::random_shape(rng, 4, 3, trial);
    const auto q = random_admissible(rng, s.n, s.m1, s.m2);
    const auto phi = weyl(q);
    EXPECT_EQ(phi.rows(), s.m2);
    EXPECT_EQ(phi.cols(), s.m1);
    double prev = opnorm(phi(Complex(10.0, 10.0)));
    for (double re : {1e2, 1e4, 1e6}) {
      const double now = opnorm(phi(Complex(re, 10.0)));
      EXPECT_LT(now, prev + 1e-15);
      prev = now;
    }
    EXPECT_LT(prev, 1e-4);
    const double bound = weyl_halfplane_bound(q, 20.0);
    for (double re : {-3.0, 0.0, 3.0}) {
      EXPECT_LE(opnorm(phi(Complex(re, bound))), 1.0 + 1e-12);
    }
  }
}

GTEST_TEST(WeylCertificateTest, SolitonConverges) {
  const auto q = soliton_quadruple();
  const Complex z(0.0, 2.0);
  const WeylCertificate c = weyl_certificate(q, z, 30.0);
  EXPECT_TRUE(c.converged);
  EXPECT_GT(c.integral, 0.0);
  EXPECT_NEAR(c.decay_rate, 2.0 * z.imag(), 0.05 * 2.0 * z.imag());
}

GTEST_TEST(WeylCertificateTest, WrongCandidateDiverges) {
  const auto q = soliton_quadruple();
  const Complex z(0.0, 2.0);
  const WeylCertificate c =
      weyl_certificate(q, z, 30.0, 2000, testing::scalar(-kI / z));
  EXPECT_FALSE(c.converged);
  EXPECT_LT(c.decay_rate, 0.0);
}

GTEST_TEST(WeylCertificateTest, ZeroTheta) {
  const WeylCertificate c =
      weyl_certificate(zero_theta_quadruple(1, 1, 1), kI, 30.0);
  EXPECT_TRUE(c.converged);
  EXPECT_NEAR(c.integral, 0.5, 1e-3);  // int_0^inf e^{-2x} dx
}

GTEST_TEST(WeylCertificateTest, RandomQuadruples) {
  Rng rng(207);
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = testing::random_shape(rng, 3, 2, trial);
    const auto q = random_admissible(rng, s.n, s.m1, s.m2);
    const double m = weyl_halfplane_bound(q, 20.0);
    const Complex z(0.3, m);
    EXPECT_TRUE(weyl_certificate(q, z, 30.0, 1500).converged);
    const Matrix wrong = weyl(q)(z) + 0.5 * Matrix::Ones(s.m2, s.m1);
    EXPECT_FALSE(weyl_certificate(q, z, 30.0, 1500, wrong).converged);
  }
}

GTEST_TEST(WeylCertificateTest, CandidateShape) {
  ExpectCode(ErrorCode::kDimensionMismatch, [] {
    weyl_certificate(soliton_quadruple(), Complex(0.0, 2.0), 5.0, 100,
                     Matrix::Zero(2, 1));
  });
}

}  // namespace
}  // namespace skewdirac
