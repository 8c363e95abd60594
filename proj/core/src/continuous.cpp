#include "skewdirac/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "skewdirac/error.hpp"

namespace skewdirac {
namespace {

// sx is Sigma(x) up to congruence, with S = I.
Matrix potential_from(const AdmissibleQuadruple& sx) {
  return 2.0 * sx.theta1().adjoint() * sx.theta2();
}

Matrix exp_signature(const AdmissibleQuadruple& q, Complex w) {
  Matrix d = Matrix::Zero(q.m(), q.m());
  for (Index i = 0; i < q.m1(); ++i) d(i, i) = std::exp(w);
  for (Index i = q.m1(); i < q.m(); ++i) d(i, i) = std::exp(-w);
  return d;
}

}  // namespace

void check_grid(const GridSeries& g) {
  if (g.abscissae.size() != g.values.size()) {
    fail(ErrorCode::kPrecondition, "grid and values differ in length");
  }
  for (std::size_t i = 1; i < g.abscissae.size(); ++i) {
    if (!(g.abscissae[i] > g.abscissae[i - 1])) {
      fail(ErrorCode::kPrecondition, "grid is not strictly increasing");
    }
  }
}

std::vector<double> uniform_grid(double x0, double x1, int steps) {
  if (steps < 1 || !(x1 > x0)) {
    fail(ErrorCode::kPrecondition, "grid needs x1 > x0 and steps >= 1");
  }
  std::vector<double> xs(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    xs[static_cast<std::size_t>(i)] =
        i == steps ? x1 : x0 + (x1 - x0) * i / steps;
  }
  return xs;
}

Matrix potential(const AdmissibleQuadruple& q, double x) {
  if (q.n() == 0) return Matrix::Zero(q.m1(), q.m2());
  return potential_from(propagate_x_normalized(q, x));
}

Matrix potential_alt(const AdmissibleQuadruple& q, double x) {
  if (q.n() == 0) return Matrix::Zero(q.m1(), q.m2());
  if (!(x >= 0.0)) fail(ErrorCode::kPrecondition, "x must be non-negative");
  const Matrix inner = shifted_s_closed_form(q, x);
  Eigen::PartialPivLU<Matrix> lu(inner);
  if (!(lu.rcond() > 1e-15)) {
    fail(ErrorCode::kSingular,
         "block formula matrix is singular (quadruple is not admissible?)");
  }
  return 2.0 * q.theta1().adjoint() * lu.solve(q.theta2());
}

GridSeries sample_potential(const AdmissibleQuadruple& q,
                            const std::vector<double>& xs) {
  GridSeries g;
  g.abscissae = xs;
  g.values.resize(xs.size());
  check_grid(g);
  if (q.n() == 0) {
    for (Matrix& v : g.values) v = Matrix::Zero(q.m1(), q.m2());
    return g;
  }
  const auto sigma = propagate_x_normalized(q, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    g.values[i] = potential_from(sigma[i]);
  }
  return g;
}

double potential_sup(const AdmissibleQuadruple& q, double x_max, int steps) {
  double sup = 0.0;
  const auto g = sample_potential(q, uniform_grid(0.0, x_max, steps));
  for (const Matrix& v : g.values) sup = std::max(sup, opnorm(v));
  return sup;
}

Matrix fundamental(const AdmissibleQuadruple& q, double x, Complex z) {
  const Matrix w0 = transfer(q, z);
  Eigen::PartialPivLU<Matrix> lu(w0);
  if (!(lu.rcond() > 1e-14)) {
    fail(ErrorCode::kSingular, "W(z) is not invertible at this z");
  }
  const Matrix wx = transfer(propagate_x_normalized(q, x), z);
  return wx * exp_signature(q, kI * x * z) * lu.inverse();
}

StateSpaceRealization weyl(const AdmissibleQuadruple& q) { return phi1(q); }

double weyl_halfplane_bound(const AdmissibleQuadruple& q, double x_max) {
  return potential_sup(q, x_max) + 1.0;
}

WeylCertificate weyl_certificate(const AdmissibleQuadruple& q, Complex z,
                                 double x_max, int steps,
                                 const std::optional<Matrix>& candidate) {
  const Matrix phi = candidate ? *candidate : weyl(q)(z);
  if (phi.rows() != q.m2() || phi.cols() != q.m1()) {
    fail(ErrorCode::kDimensionMismatch, "candidate Weyl value must be m2 x m1");
  }
  Matrix head(q.m(), q.m1());
  head << identity(q.m1()), phi;

  const Matrix w0 = transfer(q, z);
  Eigen::PartialPivLU<Matrix> lu(w0);
  if (!(lu.rcond() > 1e-14)) {
    fail(ErrorCode::kSingular, "W(z) is not invertible at this z");
  }
  // Coefficients in the e^{ixzj} modes. Entries at rounding level are
  // zeroed, otherwise the growing mode is seeded by round-off.
  Matrix y0 = lu.solve(head);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::max(opnorm(y0), 1.0);
  for (Index i = 0; i < y0.size(); ++i) {
    if (std::abs(y0(i)) <= floor) y0(i) = 0.0;
  }

  const std::vector<double> xs = uniform_grid(0.0, x_max, steps);
  const auto sigma = propagate_x_normalized(q, xs);
  std::vector<double> f(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Matrix wx = transfer(sigma[i], z);
    const Matrix y = wx * exp_signature(q, kI * xs[i] * z) * y0;
    f[i] = y.squaredNorm();
  }

  const std::size_t tail_start = xs.size() - 1 - (xs.size() - 1) / 5;
  WeylCertificate c;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double piece = 0.5 * (xs[i] - xs[i - 1]) * (f[i] + f[i - 1]);
    c.integral += piece;
    if (i > tail_start) c.tail += piece;
  }

  // Least-squares slope of log f over the tail.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = tail_start; i < xs.size(); ++i) {
    if (!(f[i] > 0.0) || !std::isfinite(f[i])) continue;
    const double ly = std::log(f[i]);
    sx += xs[i];
    sy += ly;
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ly;
    ++cnt;
  }
  if (cnt >= 2) {
    const double den = cnt * sxx - sx * sx;
    if (den != 0.0) c.decay_rate = -(cnt * sxy - sx * sy) / den;
  }
  c.converged = std::isfinite(c.integral) && c.tail < 0.01 * c.integral;
  return c;
}

}  // namespace skewdirac
