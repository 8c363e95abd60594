#include "skewdirac/evolution.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Dense>

#include "skewdirac/error.hpp"

namespace skewdirac {
namespace {

void require_regular_z(Complex z) {
  if (z == Complex(0.0, 0.0) || z == kI || z == -kI) {
    fail(ErrorCode::kPole, "z must avoid 0, i and -i");
  }
}

void require_step(double h) {
  if (!(h > 0.0)) fail(ErrorCode::kPrecondition, "step h must be positive");
}

AdmissibleQuadruple evolved(const AdmissibleQuadruple& q, double t, int k) {
  return propagate_k(flow_gdhm(q, t), k);
}

// Congruent to evolved(q, t, k) with S = I; everything built from W, C or H
// goes through this one.
AdmissibleQuadruple evolved_normalized(const AdmissibleQuadruple& q, double t,
                                       int k) {
  return propagate_k_normalized(flow_gdhm(q, t), k);
}

Matrix diag_blocks(const AdmissibleQuadruple& q, Complex top, Complex bottom) {
  Matrix d = Matrix::Zero(q.m(), q.m());
  for (Index i = 0; i < q.m1(); ++i) d(i, i) = top;
  for (Index i = q.m1(); i < q.m(); ++i) d(i, i) = bottom;
  return d;
}

double blockwise_gap(const Matrix& a, const Matrix& b) {
  return opnorm(a - b) / (1.0 + opnorm(a));
}

}  // namespace

EvolvedState state(const AdmissibleQuadruple& q, double t, int k) {
  if (k < 0) fail(ErrorCode::kPrecondition, "k must be >= 0");
  AdmissibleQuadruple sigma = evolved(q, t, k);
  Matrix wp = transfer(sigma, kI);
  Matrix wm = transfer(sigma, -kI);
  return {q, t, k, std::move(sigma), std::move(wp), std::move(wm)};
}

double order_discrepancy(const AdmissibleQuadruple& q, double t, int k) {
  const AdmissibleQuadruple a = evolved(q, t, k);
  const AdmissibleQuadruple b = flow_gdhm(propagate_k(q, k), t);
  return std::max({blockwise_gap(a.s0(), b.s0()),
                   blockwise_gap(a.theta1(), b.theta1()),
                   blockwise_gap(a.theta2(), b.theta2())});
}

Matrix gdhm_C(const AdmissibleQuadruple& q, double t, int k) {
  if (k < 0) fail(ErrorCode::kPrecondition, "k must be >= 0");
  return potential_term(evolved_normalized(q, t, k));
}

HPair gdhm_H(const AdmissibleQuadruple& q, double t, int k) {
  if (k < 0) fail(ErrorCode::kPrecondition, "k must be >= 0");
  return h_pm_of(evolved_normalized(q, t, k));
}

Matrix aux_G(const AdmissibleQuadruple& q, double t, int k, Complex z) {
  if (z == Complex(0.0, 0.0)) fail(ErrorCode::kPole, "z = 0 is excluded");
  return identity(q.m()) + (kI / z) * gdhm_C(q, t, k);
}

Matrix aux_F(const AdmissibleQuadruple& q, double t, int k, Complex z) {
  if (z == kI || z == -kI) fail(ErrorCode::kPole, "z = +-i is excluded");
  const HPair h = gdhm_H(q, t, k);
  return -h.plus / (z + kI) - h.minus / (z - kI);
}

Matrix y_explicit(const AdmissibleQuadruple& q, double t, int k, Complex z) {
  require_regular_z(z);
  if (k < 0) fail(ErrorCode::kPrecondition, "k must be >= 0");
  const AdmissibleQuadruple sigma = evolved_normalized(q, t, k);
  const Matrix steps = diag_blocks(q, std::pow(1.0 + kI / z, k),
                                   std::pow(1.0 - kI / z, k));
  const Matrix time = diag_blocks(q, std::exp(-2.0 * t / (z + kI)),
                                  std::exp(-2.0 * t / (z - kI)));
  return transfer(sigma, -z) * steps * time;
}

double gdhm_residual(const AdmissibleQuadruple& q, double t, int k, double h) {
  require_step(h);
  const Matrix dc = (gdhm_C(q, t + h, k) - gdhm_C(q, t - h, k)) / (2.0 * h);
  const AdmissibleQuadruple sigma = evolved_normalized(q, t, k);
  const AdmissibleQuadruple next = propagate_k(sigma, 1);
  const Matrix c = potential_term(sigma);
  const HPair hk = h_pm_of(sigma);
  const HPair hk1 = h_pm_of(next);
  const Matrix rhs = (hk1.minus - hk1.plus) * c - c * (hk.minus - hk.plus);
  return opnorm(kI * dc - rhs);
}

double zcc_residual(const AdmissibleQuadruple& q, double t, int k, Complex z,
                    double h) {
  require_step(h);
  require_regular_z(z);
  const Matrix dg = (aux_G(q, t + h, k, z) - aux_G(q, t - h, k, z)) / (2.0 * h);
  const Matrix g = aux_G(q, t, k, z);
  const Matrix f0 = aux_F(q, t, k, z);
  const Matrix f1 = aux_F(q, t, k + 1, z);
  return opnorm(dg - (f1 * g - g * f0));
}

StateSpaceRealization weyl_evolution(const AdmissibleQuadruple& q, double t) {
  require_strong(q, true);
  const Index n = q.n();
  if (n == 0) return phi2(q);
  const Matrix e1 = mat_exp(Matrix(
      -2.0 * t * (q.alpha() - kI * identity(n)).partialPivLu().inverse()));
  const Matrix e2 = mat_exp(Matrix(
      -2.0 * t * (q.alpha() + kI * identity(n)).partialPivLu().inverse()));
  const Matrix t1 = e1 * q.theta1();
  const Matrix t2 = e2 * q.theta2();
  Matrix l(n, q.m());
  l << t1, t2;
  const Matrix s = s_from_identity(q.alpha(), l);
  Eigen::LLT<Matrix> llt(s);
  if (llt.info() != Eigen::Success) {
    fail(ErrorCode::kNotPositiveDefinite, "evolved S(t) is not definite");
  }
  const Matrix s_inv_t1 = llt.solve(t1);
  const Matrix s_inv_t2 = llt.solve(t2);
  Matrix beta = q.alpha() - kI * t2 * s_inv_t2.adjoint();
  return StateSpaceRealization(std::move(beta), t2, s_inv_t1.adjoint(),
                               Convention::kDiscrete);
}

Matrix vxt(const AdmissibleQuadruple& q, double x, double t, int p) {
  if (p != 2 && p != 3) {
    fail(ErrorCode::kPrecondition, "flow power must be 2 or 3");
  }
  if (!std::isfinite(x) || !std::isfinite(t)) {
    fail(ErrorCode::kNonFinite, "x and t must be finite");
  }
  require_strong(q, false);
  const Index n = q.n();
  if (n == 0) return Matrix::Zero(q.m1(), q.m2());
  Matrix ap = q.alpha();
  for (int i = 1; i < p; ++i) ap = ap * q.alpha();
  const Matrix gen = x * q.alpha() + t * ap;
  const Matrix t1 = mat_exp(Matrix(-kI * gen)) * q.theta1();
  const Matrix t2 = mat_exp(Matrix(kI * gen)) * q.theta2();
  Matrix l(n, q.m());
  l << t1, t2;
  const Matrix s = s_from_identity(q.alpha(), l);
  Eigen::LLT<Matrix> llt(s);
  if (llt.info() != Eigen::Success) {
    fail(ErrorCode::kNotPositiveDefinite, "S(x, t) is not definite");
  }
  return 2.0 * t1.adjoint() * llt.solve(t2);
}

double nls_residual(const AdmissibleQuadruple& q, double x, double t,
                    double h) {
  require_step(h);
  const Matrix v = vxt(q, x, t, 2);
  const Matrix vt = (vxt(q, x, t + h, 2) - vxt(q, x, t - h, 2)) / (2.0 * h);
  const Matrix vxx =
      (vxt(q, x + h, t, 2) - 2.0 * v + vxt(q, x - h, t, 2)) / (h * h);
  return opnorm(2.0 * vt + kI * vxx + 2.0 * kI * v * v.adjoint() * v);
}

double mkdv_residual(const AdmissibleQuadruple& q, double x, double t,
                     double h) {
  require_step(h);
  const Matrix v = vxt(q, x, t, 3);
  const Matrix vt = (vxt(q, x, t + h, 3) - vxt(q, x, t - h, 3)) / (2.0 * h);
  const Matrix p1 = vxt(q, x + h, t, 3);
  const Matrix m1 = vxt(q, x - h, t, 3);
  const Matrix vx = (p1 - m1) / (2.0 * h);
  const Matrix vxxx = (vxt(q, x + 2.0 * h, t, 3) - 2.0 * p1 + 2.0 * m1 -
                       vxt(q, x - 2.0 * h, t, 3)) /
                      (2.0 * h * h * h);
  return opnorm(4.0 * vt + vxxx +
                3.0 * (vx * v.adjoint() * v + v * v.adjoint() * vx));
}

}  // namespace skewdirac
