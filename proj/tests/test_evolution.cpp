#include <cmath>

#include <gtest/gtest.h>

#include "skewdirac/continuous.hpp"
#include "skewdirac/discrete.hpp"
#include "skewdirac/error.hpp"
#include "skewdirac/evolution.hpp"
#include "expect_code.hpp"
#include "test_support.hpp"

namespace skewdirac {
namespace {

using testing::ExpectCode;
using testing::lattice_quadruple;
using testing::Rng;
using testing::soliton_quadruple;

double sech(double x) { return 1.0 / std::cosh(x); }

Matrix lattice_c0(double t) {
  const Complex ph = std::exp(-4.0 * kI * t / 3.0);
  Matrix c(2, 2);
  c << -0.6, 0.8 * ph, 0.8 * std::conj(ph), 0.6;
  return c;
}

// Strong quadruples with spectra kept away from i.
AdmissibleQuadruple random_evolvable(Rng& rng, Index n, Index m1, Index m2) {
  for (;;) {
    const auto q = testing::random_strong(rng, n, m1, m2);
    Eigen::ComplexEigenSolver<Matrix> es(q.alpha());
    bool ok = true;
    for (Index i = 0; i < n; ++i) {
      ok = ok && std::abs(es.eigenvalues()(i) - kI) > 0.2;
    }
    if (ok) return q;
  }
}

GTEST_TEST(StateTest, ZeroTimeIsLatticeStep) {
  Rng rng(501);
  const auto q = random_evolvable(rng, 3, 2, 1);
  const EvolvedState st = state(q, 0.0, 2);
  const auto ref = propagate_k(q, 2);
  EXPECT_LT(opnorm(st.sigma.s0() - ref.s0()), 1e-12 * opnorm(ref.s0()));
  EXPECT_LT(opnorm(st.sigma.theta1() - ref.theta1()), 1e-12);
  EXPECT_LT(opnorm(st.w_plus_i - transfer(ref, kI)), 1e-10);
}

GTEST_TEST(StateTest, LatticeGramStaysOne) {
  for (double t : {0.3, 1.0, -2.0}) {
    const EvolvedState st = state(lattice_quadruple(), t, 0);
    EXPECT_LT(std::abs(st.sigma.s0()(0, 0) - 1.0), 1e-14);
    EXPECT_LT(std::abs(st.sigma.theta1()(0, 0) -
                       std::sqrt(2.0) * std::exp(2.0 * kI * t)),
              1e-14);
    EXPECT_LT(std::abs(st.sigma.theta2()(0, 0) -
                       std::sqrt(2.0) * std::exp(2.0 * kI * t / 3.0)),
              1e-14);
  }
}

GTEST_TEST(StateTest, OrderIndependenceAndAdmissibility) {
  Rng rng(502);
  for (int trial = 0; trial < 15; ++trial) {
    const auto s = testing::random_shape(rng, 5, 3, trial);
    const auto q = random_evolvable(rng, s.n, s.m1, s.m2);
    EXPECT_LT(order_discrepancy(q, 0.7, 3), 1e-10) << "trial " << trial;
    for (double t : {0.3, 1.0}) {
      const EvolvedState st = state(q, t, 2);
      EXPECT_TRUE(validate(st.sigma, 1e-9).passed);
      EXPECT_TRUE(is_strong(st.sigma).controllable);
    }
  }
}

GTEST_TEST(StateTest, Preconditions) {
  ExpectCode(ErrorCode::kPrecondition, [] { state(soliton_quadruple(), 0.5, 0); });
  ExpectCode(ErrorCode::kPrecondition, [] { state(lattice_quadruple(), 0.5, -1); });
  ExpectCode(ErrorCode::kPrecondition,
             [] { state(testing::zero_theta_quadruple(1, 1, 1), 0.5, 0); });
}

GTEST_TEST(GdhmCTest, LatticePhase) {
  for (double t : {0.0, 0.25, 0.5, 1.5}) {
    const Matrix c = gdhm_C(lattice_quadruple(), t, 0);
    EXPECT_LT(opnorm(c - lattice_c0(t)), 1e-12) << "t " << t;
    EXPECT_LT(opnorm(c * c - identity(2)), 1e-12);
  }
}

GTEST_TEST(GdhmCTest, RandomInvolutionsAndZeroTime) {
  Rng rng(503);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = testing::random_shape(rng, 4, 3, trial);
    const auto q = random_evolvable(rng, s.n, s.m1, s.m2);
    const auto seq = potential_seq(q, 4);
    for (int k = 0; k <= 4; ++k) {
      EXPECT_LT(opnorm(gdhm_C(q, 0.0, k) - seq.potential(k)), 1e-9);
      EXPECT_TRUE(involution_check(gdhm_C(q, 0.8, k), s.m1).passed)
          << "trial " << trial << " k " << k;
    }
  }
}

GTEST_TEST(GdhmHTest, LatticeIdentities) {
  const auto q = lattice_quadruple();
  const Matrix id = identity(2);
  const double t = 0.5;
  const Matrix c = gdhm_C(q, t, 0);
  const HPair h0 = gdhm_H(q, t, 0);
  const HPair h1 = gdhm_H(q, t, 1);
  EXPECT_LT(opnorm((id - c) * h0.plus), 1e-12);
  EXPECT_LT(opnorm(h1.plus * (id - c)), 1e-12);
  EXPECT_LT(opnorm((id + c) * h0.minus), 1e-12);
  EXPECT_LT(opnorm(h1.minus * (id + c)), 1e-12);
  EXPECT_LT(opnorm(h0.plus + h0.minus.adjoint() - 2.0 * id), 1e-12);
  const HPair base = h_pm(q, 0);
  const HPair at0 = gdhm_H(q, 0.0, 0);
  EXPECT_LT(opnorm(at0.plus - base.plus), 1e-12);
  EXPECT_LT(opnorm(at0.minus - base.minus), 1e-12);
}

GTEST_TEST(GdhmHTest, RandomIdentities) {
  Rng rng(504);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = testing::random_shape(rng, 4, 3, trial);
    const auto q = random_evolvable(rng, s.n, s.m1, s.m2);
    const Matrix id = identity(q.m());
    for (int k = 0; k <= 3; ++k) {
      const Matrix c = gdhm_C(q, 0.3, k);
      const HPair hk = gdhm_H(q, 0.3, k);
      const HPair hk1 = gdhm_H(q, 0.3, k + 1);
      EXPECT_LT(opnorm((id - c) * hk.plus), 1e-11);
      EXPECT_LT(opnorm(hk1.plus * (id - c)), 1e-11);
      EXPECT_LT(opnorm((id + c) * hk.minus), 1e-11);
      EXPECT_LT(opnorm(hk1.minus * (id + c)), 1e-11);
      EXPECT_LT(opnorm(hk.minus - (2.0 * id - hk.plus.adjoint())), 1e-11);
    }
  }
}

GTEST_TEST(AuxTest, Shapes) {
  const auto q = lattice_quadruple();
  EXPECT_LT(opnorm(aux_G(q, 0.3, 0, Complex(0.0, 1e9)) - identity(2)), 1e-8);
  for (const Complex z : {Complex(100.0, 0.0), Complex(1.0, 0.5), Complex(0.0, 2.0)}) {
    EXPECT_TRUE(aux_F(q, 0.3, 0, z).allFinite());
    EXPECT_TRUE(aux_G(q, 0.3, 0, z).allFinite());
  }
  ExpectCode(ErrorCode::kPole, [&] { aux_G(q, 0.3, 0, 0.0); });
  ExpectCode(ErrorCode::kPole, [&] { aux_F(q, 0.3, 0, kI); });
  ExpectCode(ErrorCode::kPole, [&] { aux_F(q, 0.3, 0, -kI); });
}

GTEST_TEST(YTest, LatticeChain) {
  const auto q = lattice_quadruple();
  const Complex z(0.0, 3.0);
  EXPECT_LT(opnorm(y_explicit(q, 0.0, 0, z) - transfer(q, -z)), 1e-15);
  const double t = 0.4;
  for (int k = 0; k < 5; ++k) {
    const Matrix yk = y_explicit(q, t, k, z);
    const Matrix yk1 = y_explicit(q, t, k + 1, z);
    EXPECT_LT(opnorm(yk1 - aux_G(q, t, k, z) * yk), 1e-10 * opnorm(yk1));
    const double h = 1e-4;
    const Matrix dy =
        (y_explicit(q, t + h, k, z) - y_explicit(q, t - h, k, z)) / (2.0 * h);
    EXPECT_LT(opnorm(dy - aux_F(q, t, k, z) * yk), 1e-6);
  }
  ExpectCode(ErrorCode::kPole, [&] { y_explicit(q, t, 0, kI); });
  ExpectCode(ErrorCode::kPole, [&] { y_explicit(q, t, 0, 0.0); });
}

GTEST_TEST(YTest, RandomChains) {
  Rng rng(505);
  for (int trial = 0; trial < 8; ++trial) {
    const auto s = testing::random_shape(rng, 4, 2, trial);
    const auto q = random_evolvable(rng, s.n, s.m1, s.m2);
    for (const Complex& z : testing::sample_points(rng, 3, 1.5, 3.0)) {
      for (int k = 0; k < 10; ++k) {
        const Matrix yk = y_explicit(q, 0.5, k, z);
        const Matrix yk1 = y_explicit(q, 0.5, k + 1, z);
        EXPECT_LT(opnorm(yk1 - aux_G(q, 0.5, k, z) * yk), 1e-10 * opnorm(yk1));
        EXPECT_GT(std::abs(yk.determinant()), 1e-8);
      }
    }
  }
}

GTEST_TEST(GdhmResidualTest, LatticeSecondOrder) {
  const auto q = lattice_quadruple();
  EXPECT_LT(gdhm_residual(q, 0.5, 0, 1e-4), 1e-6);
  const double coarse = gdhm_residual(q, 0.5, 0, 1e-2);
  const double fine = gdhm_residual(q, 0.5, 0, 5e-3);
  EXPECT_GT(coarse / fine, 3.5);
  EXPECT_LT(coarse / fine, 4.5);
  ExpectCode(ErrorCode::kPrecondition, [&] { gdhm_residual(q, 0.5, 0, 0.0); });
}

GTEST_TEST(GdhmResidualTest, Random) {
  Rng rng(506);
  for (int trial = 0; trial < 8; ++trial) {
    const auto s = testing::random_shape(rng, 4, 3, trial);
    const auto q = random_evolvable(rng, s.n, s.m1, s.m2);
    for (int k = 0; k <= 4; ++k) {
      EXPECT_LT(gdhm_residual(q, 0.3, k), 1e-5) << "trial " << trial;
    }
  }
}

GTEST_TEST(ZccResidualTest, LatticeSecondOrder) {
  const auto q = lattice_quadruple();
  const Complex z(0.0, 2.0);
  EXPECT_LT(zcc_residual(q, 0.5, 0, z, 1e-4), 1e-6);
  const double coarse = zcc_residual(q, 0.5, 0, z, 1e-2);
  const double fine = zcc_residual(q, 0.5, 0, z, 5e-3);
  EXPECT_GT(coarse / fine, 3.5);
  EXPECT_LT(coarse / fine, 4.5);
  ExpectCode(ErrorCode::kPole, [&] { zcc_residual(q, 0.5, 0, kI, 1e-4); });
}

GTEST_TEST(ZccResidualTest, EmptyQuadrupleIsStatic) {
  const auto e = AdmissibleQuadruple::empty(2, 1);
  EXPECT_LT(zcc_residual(e, 0.5, 3, Complex(0.4, 2.0)), 1e-12);
  EXPECT_LT(gdhm_residual(e, 0.5, 3), 1e-12);
}

GTEST_TEST(WeylEvolutionTest, LatticeClosedForm) {
  const auto q = lattice_quadruple();
  for (double t : {0.0, 0.4, 1.3}) {
    const auto phi = weyl_evolution(q, t);
    for (const Complex z : {Complex(0.0, 2.0), Complex(1.0, 0.5)}) {
      const Complex expected = -2.0 * kI * std::exp(-4.0 * kI * t / 3.0) / z;
      EXPECT_LT(std::abs(phi(z)(0, 0) - expected), 1e-12) << "t " << t;
    }
  }
}

GTEST_TEST(WeylEvolutionTest, MatchesFlowedWeyl) {
  Rng rng(507);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = testing::random_shape(rng, 4, 3, trial);
    const auto q = random_evolvable(rng, s.n, s.m1, s.m2);
    const auto zs = testing::sample_points(rng, 10, 1.0, 3.0);
    EXPECT_LT(max_discrepancy(weyl_evolution(q, 0.0), weyl_d(q), zs), 1e-10);
    for (double t : {0.3, 0.8}) {
      EXPECT_LT(max_discrepancy(weyl_evolution(q, t), weyl_d(flow_gdhm(q, t)), zs),
                1e-10)
          << "trial " << trial << " t " << t;
    }
  }
}

GTEST_TEST(VxtTest, SolitonClosedForm) {
  const auto q = soliton_quadruple();
  for (double x : {0.0, 0.5, 1.0, 2.0}) {
    EXPECT_LT(opnorm(vxt(q, x, 0.0, 2) - potential(q, x)), 1e-12);
    for (double t : {0.0, 0.3, 1.7}) {
      const Complex expected = 2.0 * std::exp(-2.0 * kI * t) * sech(2.0 * x);
      EXPECT_LT(std::abs(vxt(q, x, t, 2)(0, 0) - expected), 1e-12);
      EXPECT_NEAR(std::abs(vxt(q, x, t, 2)(0, 0)), 2.0 * sech(2.0 * x), 1e-12);
    }
  }
  ExpectCode(ErrorCode::kPrecondition, [&] { vxt(q, 0.0, 0.0, 4); });
  EXPECT_EQ(vxt(AdmissibleQuadruple::empty(1, 2), 0.5, 0.5, 3).cols(), 2);
}

GTEST_TEST(VxtTest, RandomZeroTime) {
  Rng rng(508);
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = testing::random_shape(rng, 4, 3, trial);
    const auto q = testing::random_strong(rng, s.n, s.m1, s.m2);
    for (double x : {0.0, 0.5, 1.5}) {
      const Matrix v = potential(q, x);
      EXPECT_LT(opnorm(vxt(q, x, 0.0, 3) - v), 1e-12 * std::max(1.0, opnorm(v)));
    }
  }
}

GTEST_TEST(NlsResidualTest, Soliton) {
  const auto q = soliton_quadruple();
  EXPECT_LT(nls_residual(q, 0.5, 0.3, 1e-3), 1e-5);
  const double coarse = nls_residual(q, 0.5, 0.3, 2e-2);
  const double fine = nls_residual(q, 0.5, 0.3, 1e-2);
  EXPECT_GT(coarse / fine, 3.5);
  EXPECT_LT(coarse / fine, 4.5);
}

GTEST_TEST(NlsResidualTest, Random) {
  Rng rng(509);
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = testing::random_shape(rng, 3, 2, trial);
    const auto q = testing::random_strong(rng, s.n, s.m1, s.m2);
    // Truncation scales like rho(alpha)^4 h^2; 1e-3 is too coarse once the
    // spectral radius reaches ~3.
    for (double x : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      EXPECT_LT(nls_residual(q, x, 0.3, 2.5e-4), 1e-4) << "trial " << trial;
    }
    const double coarse = nls_residual(q, 0.5, 0.3, 2e-3);
    const double fine = nls_residual(q, 0.5, 0.3, 1e-3);
    EXPECT_GT(coarse / fine, 3.5);
    EXPECT_LT(coarse / fine, 4.5);
  }
}

GTEST_TEST(MkdvResidualTest, Soliton) {
  const auto q = soliton_quadruple();
  EXPECT_LT(mkdv_residual(q, 0.5, 0.2), 1e-3);
  // The 4-point third-derivative stencil alone contributes about 1.4e-2 at
  // h = 1e-2 on this profile; the residual is pure truncation.
  const double at_1e2 = mkdv_residual(q, 0.5, 0.2, 1e-2);
  EXPECT_NEAR(at_1e2 / 1e-4, mkdv_residual(q, 0.5, 0.2, 5e-3) / 2.5e-5,
              0.05 * at_1e2 / 1e-4);
  const double coarse = mkdv_residual(q, 0.5, 0.2, 4e-3);
  const double fine = mkdv_residual(q, 0.5, 0.2, 2e-3);
  EXPECT_GT(coarse / fine, 3.0);
  EXPECT_LT(coarse / fine, 5.0);
}

GTEST_TEST(MkdvResidualTest, StaticProfileIsNotASolution) {
  // At t = 0 the x-terms alone do not vanish; only the combination does.
  const auto q = soliton_quadruple();
  const double h = 2e-3;
  const Matrix v = vxt(q, 0.5, 0.0, 3);
  const Matrix vxxx = (vxt(q, 0.5 + 2 * h, 0.0, 3) - 2.0 * vxt(q, 0.5 + h, 0.0, 3) +
                       2.0 * vxt(q, 0.5 - h, 0.0, 3) - vxt(q, 0.5 - 2 * h, 0.0, 3)) /
                      (2.0 * h * h * h);
  EXPECT_GT(opnorm(vxxx), 1.0);
  EXPECT_LT(mkdv_residual(q, 0.5, 0.0), 1e-3);
}

}  // namespace
}  // namespace skewdirac
