#include "skewdirac/quadruple.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "skewdirac/error.hpp"

namespace skewdirac {
namespace {

Matrix s_integrand(const AdmissibleQuadruple& q, double t) {
  const Matrix t1 = mat_exp(Matrix(-kI * t * q.alpha())) * q.theta1();
  const Matrix t2 = mat_exp(Matrix(kI * t * q.alpha())) * q.theta2();
  return t1 * t1.adjoint() - t2 * t2.adjoint();
}

using MatrixFn = std::function<Matrix(double)>;

Matrix simpson_step(const MatrixFn& f, double a, double b, const Matrix& fa,
                    const Matrix& fm, const Matrix& fb, const Matrix& whole,
                    double tol, int depth) {
  const double m = 0.5 * (a + b);
  const Matrix flm = f(0.5 * (a + m));
  const Matrix frm = f(0.5 * (m + b));
  const Matrix left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const Matrix right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const Matrix delta = left + right - whole;
  if (depth <= 0 || opnorm(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

Matrix adaptive_simpson(const MatrixFn& f, double a, double b, double tol) {
  const Matrix fa = f(a);
  const Matrix fb = f(b);
  const Matrix fm = f(0.5 * (a + b));
  const Matrix whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

Matrix require_invertible_alpha_inverse(const Matrix& alpha) {
  const Index n = alpha.rows();
  if (n == 0) return alpha;
  Eigen::JacobiSVD<Matrix> svd(alpha);
  const auto& s = svd.singularValues();
  if (s(n - 1) <= 1e-14 * std::max(s(0), 1e-300)) {
    fail(ErrorCode::kSingular,
         "alpha is singular; discrete propagation needs a strongly "
         "admissible quadruple");
  }
  return alpha.partialPivLu().inverse();
}

}  // namespace

AdmissibleQuadruple::AdmissibleQuadruple(Matrix alpha, Matrix s0,
                                         Matrix theta1, Matrix theta2)
    : alpha_(std::move(alpha)),
      s0_(std::move(s0)),
      theta1_(std::move(theta1)),
      theta2_(std::move(theta2)) {
  require_square(alpha_, "alpha");
  const Index n = alpha_.rows();
  if (s0_.rows() != n || s0_.cols() != n || theta1_.rows() != n ||
      theta2_.rows() != n) {
    fail(ErrorCode::kDimensionMismatch,
         "quadruple blocks do not conform to n = " + std::to_string(n));
  }
  require_finite(alpha_, "alpha");
  require_finite(s0_, "S0");
  require_finite(theta1_, "theta1");
  require_finite(theta2_, "theta2");
}

AdmissibleQuadruple AdmissibleQuadruple::empty(Index m1, Index m2) {
  return AdmissibleQuadruple(Matrix(0, 0), Matrix(0, 0), Matrix(0, m1),
                             Matrix(0, m2));
}

Matrix AdmissibleQuadruple::lambda() const {
  Matrix l(n(), m());
  l << theta1_, theta2_;
  return l;
}

Matrix AdmissibleQuadruple::signature() const {
  Matrix j = identity(m());
  j.bottomRightCorner(m2(), m2()) *= -1.0;
  return j;
}

Matrix AdmissibleQuadruple::s0_solve(const Matrix& rhs) const {
  if (n() == 0) return Matrix(0, rhs.cols());
  Eigen::LLT<Matrix> llt(hermitian_part(s0_));
  if (llt.info() != Eigen::Success) {
    fail(ErrorCode::kNotPositiveDefinite, "S0 has no Cholesky factor");
  }
  return llt.solve(rhs);
}

double admissibility_residual(const Matrix& alpha, const Matrix& s,
                              const Matrix& lambda) {
  const Matrix r = alpha * s - s * alpha.adjoint() -
                   kI * (lambda * lambda.adjoint());
  return opnorm(r) / (1.0 + opnorm(alpha) * opnorm(s));
}

ValidationReport validate(const AdmissibleQuadruple& q, double tol) {
  ValidationReport rep;
  rep.tol = tol;
  const double s_norm = opnorm(q.s0());
  rep.hermitian_residual =
      q.n() == 0 ? 0.0
                 : opnorm(q.s0() - q.s0().adjoint()) / std::max(s_norm, 1e-300);
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  if (q.n() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(q.s0()),
                                             Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = es.eigenvalues()(0);
  }
  rep.admissibility_residual =
      admissibility_residual(q.alpha(), q.s0(), q.lambda());

  // Hermitian symmetry is held an order of magnitude tighter than the
  // identity itself.
  if (rep.hermitian_residual > 0.1 * tol) {
    rep.messages.push_back("S0 is not Hermitian");
  }
  if (!(rep.min_eigenvalue > 0.0)) {
    rep.messages.push_back("not positive definite");
  }
  if (!(rep.admissibility_residual <= tol)) {
    rep.messages.push_back("admissibility identity violated");
  }
  rep.passed = rep.messages.empty();
  return rep;
}

void require_valid(const AdmissibleQuadruple& q, double tol) {
  const ValidationReport rep = validate(q, tol);
  if (rep.passed) return;
  if (rep.hermitian_residual > 0.1 * tol) {
    fail(ErrorCode::kNotHermitian, "S0 is not Hermitian");
  }
  if (!(rep.min_eigenvalue > 0.0)) {
    fail(ErrorCode::kNotPositiveDefinite, "S0 is not positive definite");
  }
  fail(ErrorCode::kPrecondition,
       "admissibility residual " + std::to_string(rep.admissibility_residual));
}

StrongFlag is_strong(const AdmissibleQuadruple& q,
                     const KernelConfig& config) {
  StrongFlag f;
  if (q.n() == 0) {
    f.controllable = true;
    f.spectrum_in_upper_half_plane = true;
    f.i_not_eigenvalue = true;
    return f;
  }
  f.controllable =
      controllability_rank(q.alpha(), q.theta1(), config) == q.n();
  const SpectrumReport s = spectrum(q.alpha());
  f.spectrum_in_upper_half_plane = s.min_imag > 1e-10;
  f.i_not_eigenvalue =
      distance_to_spectrum(s, kI) > 1e-10 * (1.0 + opnorm(q.alpha()));
  return f;
}

void require_strong(const AdmissibleQuadruple& q, bool need_i_regular,
                    const KernelConfig& config) {
  const StrongFlag f = is_strong(q, config);
  if (!f.controllable) {
    fail(ErrorCode::kPrecondition, "pair (alpha, theta1) is not controllable");
  }
  if (!f.spectrum_in_upper_half_plane) {
    fail(ErrorCode::kPrecondition,
         "spectrum of alpha is not in the open upper half-plane");
  }
  if (need_i_regular && !f.i_not_eigenvalue) {
    fail(ErrorCode::kPrecondition, "i is an eigenvalue of alpha");
  }
}

Matrix transfer(const AdmissibleQuadruple& q, Complex z) {
  const Index n = q.n();
  if (n == 0) return identity(q.m());
  const SpectrumReport s = spectrum(q.alpha());
  if (distance_to_spectrum(s, z) < 1e-12 * (1.0 + opnorm(q.alpha()))) {
    fail(ErrorCode::kPole, "transfer function evaluated at an eigenvalue");
  }
  const Matrix l = q.lambda();
  const Matrix r = (z * identity(n) - q.alpha()).partialPivLu().solve(l);
  // Lambda^* S0^{-1} = (S0^{-1} Lambda)^*.
  return identity(q.m()) + kI * (q.s0_solve(l).adjoint() * r);
}

StateSpaceRealization phi1(const AdmissibleQuadruple& q) {
  const Matrix s_inv_t1 = q.s0_solve(q.theta1());
  const Matrix s_inv_t2 = q.s0_solve(q.theta2());
  Matrix beta = q.alpha() - kI * q.theta1() * s_inv_t1.adjoint();
  return StateSpaceRealization(std::move(beta), q.theta1(),
                               s_inv_t2.adjoint(), Convention::kContinuous);
}

StateSpaceRealization phi2(const AdmissibleQuadruple& q) {
  const Matrix s_inv_t1 = q.s0_solve(q.theta1());
  const Matrix s_inv_t2 = q.s0_solve(q.theta2());
  Matrix beta = q.alpha() - kI * q.theta2() * s_inv_t2.adjoint();
  return StateSpaceRealization(std::move(beta), q.theta2(),
                               s_inv_t1.adjoint(), Convention::kDiscrete);
}

AdmissibleQuadruple associate(const AdmissibleQuadruple& q) {
  return AdmissibleQuadruple(q.alpha(), q.s0(), q.theta2(), q.theta1());
}

Matrix shifted_s_closed_form(const AdmissibleQuadruple& q, double x) {
  const Index n = q.n();
  if (n == 0) return Matrix(0, 0);
  Matrix a = Matrix::Zero(2 * n, 2 * n);
  a.topLeftCorner(n, n) = q.alpha().adjoint();
  a.bottomLeftCorner(n, n) = -q.theta1() * q.theta1().adjoint();
  a.bottomRightCorner(n, n) = q.alpha();
  const Matrix e = mat_exp(Matrix(-2.0 * kI * x * a));
  return q.s0() * e.topLeftCorner(n, n) - kI * e.bottomLeftCorner(n, n);
}

Matrix s_by_quadrature(const AdmissibleQuadruple& q, double x, double tol) {
  if (q.n() == 0) return Matrix(0, 0);
  if (x == 0.0) return q.s0();
  const double scale = std::max(1.0, opnorm(q.lambda()) * opnorm(q.lambda()));
  const Matrix integral = adaptive_simpson(
      [&q](double t) { return s_integrand(q, t); }, 0.0, x, tol * scale);
  return q.s0() + integral;
}

AdmissibleQuadruple propagate_x(const AdmissibleQuadruple& q, double x,
                                const XPropagationOptions& options) {
  if (!std::isfinite(x)) fail(ErrorCode::kNonFinite, "x is not finite");
  if (x < 0.0) fail(ErrorCode::kPrecondition, "x must be non-negative");
  if (q.n() == 0 || x == 0.0) return q;
  const Matrix ex = mat_exp(Matrix(kI * x * q.alpha()));
  const Matrix ex_inv = mat_exp(Matrix(-kI * x * q.alpha()));
  const Matrix ex_star = mat_exp(Matrix(kI * x * q.alpha().adjoint()));
  Matrix s = hermitian_part(ex * shifted_s_closed_form(q, x) * ex_star);
  if (options.quadrature_check) {
    const Matrix sq = s_by_quadrature(q, x);
    const double gap = opnorm(s - sq) / std::max(1.0, opnorm(s));
    if (gap > 1e-6) {
      fail(ErrorCode::kConsistency,
           "closed-form S(x) disagrees with quadrature by " +
               std::to_string(gap));
    }
  }
  return AdmissibleQuadruple(q.alpha(), std::move(s), ex_inv * q.theta1(),
                             ex * q.theta2());
}

namespace {

AdmissibleQuadruple to_identity_gram(const AdmissibleQuadruple& q) {
  Eigen::LLT<Matrix> llt(q.s0());
  if (llt.info() != Eigen::Success) {
    fail(ErrorCode::kNotPositiveDefinite, "S(x) lost definiteness");
  }
  const auto l = llt.matrixL();
  return AdmissibleQuadruple(l.solve(Matrix(q.alpha() * Matrix(l))),
                             identity(q.n()), l.solve(q.theta1()),
                             l.solve(q.theta2()));
}

// cond S grows at most like e^{2 h ||alpha||} over one step.
double max_step(const AdmissibleQuadruple& q) {
  return 2.0 / (1.0 + opnorm(q.alpha()));
}

AdmissibleQuadruple march(AdmissibleQuadruple q, double length) {
  if (length == 0.0) return q;
  const int steps =
      std::max(1, static_cast<int>(std::ceil(length / max_step(q))));
  const double h = length / steps;
  for (int i = 0; i < steps; ++i) q = to_identity_gram(propagate_x(q, h));
  return q;
}

}  // namespace

AdmissibleQuadruple propagate_x_normalized(const AdmissibleQuadruple& q,
                                           double x) {
  if (!std::isfinite(x)) fail(ErrorCode::kNonFinite, "x is not finite");
  if (x < 0.0) fail(ErrorCode::kPrecondition, "x must be non-negative");
  if (q.n() == 0) return q;
  return march(to_identity_gram(q), x);
}

std::vector<AdmissibleQuadruple> propagate_x_normalized(
    const AdmissibleQuadruple& q, const std::vector<double>& xs) {
  std::vector<AdmissibleQuadruple> out;
  out.reserve(xs.size());
  double at = 0.0;
  for (double x : xs) {
    if (!std::isfinite(x)) fail(ErrorCode::kNonFinite, "x is not finite");
    if (x < at) fail(ErrorCode::kPrecondition, "grid must be non-decreasing");
    if (q.n() == 0) {
      out.push_back(q);
    } else if (out.empty()) {
      out.push_back(march(to_identity_gram(q), x));
    } else {
      out.push_back(march(out.back(), x - at));
    }
    at = x;
  }
  return out;
}

AdmissibleQuadruple propagate_k(const AdmissibleQuadruple& q, int k) {
  if (k < 0) fail(ErrorCode::kPrecondition, "k must be non-negative");
  if (q.n() == 0 || k == 0) return q;
  const Matrix ainv = require_invertible_alpha_inverse(q.alpha());
  const Index n = q.n();
  Matrix t1 = q.theta1();
  Matrix t2 = q.theta2();
  Matrix s = q.s0();
  const Matrix fwd = identity(n) + kI * ainv;
  const Matrix bwd = identity(n) - kI * ainv;
  // Same step as S + a(S + Lambda j Lambda^*)a^* once the identity is
  // substituted, but a sum of two positive terms.
  for (int step = 0; step < k; ++step) {
    const Matrix at1 = ainv * t1;
    s = hermitian_part(bwd * s * bwd.adjoint() + 2.0 * at1 * at1.adjoint());
    t1 = fwd * t1;
    t2 = bwd * t2;
  }
  return AdmissibleQuadruple(q.alpha(), std::move(s), std::move(t1),
                             std::move(t2));
}

AdmissibleQuadruple propagate_k_normalized(const AdmissibleQuadruple& q,
                                           int k) {
  if (k < 0) fail(ErrorCode::kPrecondition, "k must be non-negative");
  if (q.n() == 0) return q;
  AdmissibleQuadruple s = to_identity_gram(q);
  for (int step = 0; step < k; ++step) s = to_identity_gram(propagate_k(s, 1));
  return s;
}

Matrix s_from_identity(const Matrix& alpha, const Matrix& lambda) {
  if (alpha.rows() == 0) return Matrix(0, 0);
  const Matrix rhs = kI * (lambda * lambda.adjoint());
  return hermitian_part(
      sylvester_solve(alpha, Matrix(-alpha.adjoint()), rhs));
}

AdmissibleQuadruple flow_gdhm(const AdmissibleQuadruple& q, double t) {
  if (!std::isfinite(t)) fail(ErrorCode::kNonFinite, "t is not finite");
  require_strong(q, true);
  if (q.n() == 0 || t == 0.0) return q;
  const Index n = q.n();
  const Matrix minus = (q.alpha() - kI * identity(n)).partialPivLu().inverse();
  const Matrix plus = (q.alpha() + kI * identity(n)).partialPivLu().inverse();
  Matrix t1 = mat_exp(Matrix(-2.0 * t * minus)) * q.theta1();
  Matrix t2 = mat_exp(Matrix(-2.0 * t * plus)) * q.theta2();
  Matrix l(n, q.m());
  l << t1, t2;
  Matrix s = s_from_identity(q.alpha(), l);
  return AdmissibleQuadruple(q.alpha(), std::move(s), std::move(t1),
                             std::move(t2));
}

AdmissibleQuadruple flow_zs(const AdmissibleQuadruple& q, double t, int p) {
  if (p != 2 && p != 3) {
    fail(ErrorCode::kPrecondition, "flow power must be 2 or 3");
  }
  if (!std::isfinite(t)) fail(ErrorCode::kNonFinite, "t is not finite");
  require_strong(q, false);
  if (q.n() == 0 || t == 0.0) return q;
  Matrix ap = q.alpha();
  for (int i = 1; i < p; ++i) ap = ap * q.alpha();
  Matrix t1 = mat_exp(Matrix(-kI * t * ap)) * q.theta1();
  Matrix t2 = mat_exp(Matrix(kI * t * ap)) * q.theta2();
  Matrix l(q.n(), q.m());
  l << t1, t2;
  Matrix s = s_from_identity(q.alpha(), l);
  return AdmissibleQuadruple(q.alpha(), std::move(s), std::move(t1),
                             std::move(t2));
}

}  // namespace skewdirac
