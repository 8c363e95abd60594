#include "skewdirac/matkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "skewdirac/error.hpp"

namespace skewdirac {
namespace {

std::string dims(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

// Back substitution for (T + shift I) y = f with T upper triangular.
void shifted_upper_solve(const Matrix& t, Complex shift, double guard,
                         Eigen::Ref<Eigen::VectorXcd> y) {
  const Index n = t.rows();
  for (Index i = n - 1; i >= 0; --i) {
    Complex acc = y(i);
    for (Index k = i + 1; k < n; ++k) acc -= t(i, k) * y(k);
    const Complex d = t(i, i) + shift;
    if (std::abs(d) <= guard) {
      fail(ErrorCode::kNoUniqueSolution,
           "Sylvester operator is singular (spectra of A and -B overlap)");
    }
    y(i) = acc / d;
  }
}

double log_abs_det(const Eigen::PartialPivLU<Matrix>& lu) {
  const Matrix& u = lu.matrixLU();
  double s = 0.0;
  for (Index i = 0; i < u.rows(); ++i) s += std::log(std::abs(u(i, i)));
  return s;
}

// Standard-form residual A^* X + X A - X G X + Q.
Matrix care_residual(const Matrix& a, const Matrix& g, const Matrix& q,
                     const Matrix& x) {
  return a.adjoint() * x + x * a - x * g * x + q;
}

}  // namespace

double opnorm(const Matrix& m) {
  const Eigen::VectorXd s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

Matrix identity(Index n) { return Matrix::Identity(n, n); }

Matrix hermitian_part(const Matrix& m) {
  return (m + m.adjoint()) * 0.5;
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

void require_square(const Matrix& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    fail(ErrorCode::kDimensionMismatch,
         std::string(what) + " must be square, got " + dims(m));
  }
}

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    fail(ErrorCode::kNonFinite, std::string(what) + " has NaN/Inf entries");
  }
}

Matrix mat_exp(const Matrix& a) {
  require_square(a, "exponent");
  require_finite(a, "exponent");
  if (a.size() == 0) return a;
  Matrix e = a.exp();
  require_finite(e, "matrix exponential");
  return e;
}

namespace {

struct PdEigen {
  Eigen::VectorXd values;
  Matrix vectors;
};

PdEigen pd_decompose(const Matrix& s) {
  require_square(s, "positive definite argument");
  require_finite(s, "positive definite argument");
  const double scale = opnorm(s);
  if (opnorm(s - s.adjoint()) > 1e-10 * std::max(scale, 1e-300)) {
    fail(ErrorCode::kNotHermitian, "matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(s));
  if (es.info() != Eigen::Success) {
    fail(ErrorCode::kNonConvergence, "Hermitian eigensolver failed");
  }
  if (s.rows() > 0 && es.eigenvalues()(0) <= 0.0) {
    fail(ErrorCode::kNotPositiveDefinite,
         "smallest eigenvalue " + std::to_string(es.eigenvalues()(0)));
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

Matrix pd_power(const Matrix& s, double p) {
  if (s.size() == 0) return s;
  const PdEigen e = pd_decompose(s);
  Eigen::VectorXcd d(e.values.size());
  for (Index i = 0; i < d.size(); ++i) d(i) = std::pow(e.values(i), p);
  return hermitian_part(e.vectors * d.asDiagonal() * e.vectors.adjoint());
}

}  // namespace

Matrix pd_sqrt(const Matrix& s) { return pd_power(s, 0.5); }

Matrix pd_inverse_sqrt(const Matrix& s) { return pd_power(s, -0.5); }

Matrix sylvester_solve(const Matrix& a, const Matrix& b, const Matrix& c) {
  require_square(a, "Sylvester A");
  require_square(b, "Sylvester B");
  if (c.rows() != a.rows() || c.cols() != b.rows()) {
    fail(ErrorCode::kDimensionMismatch,
         "Sylvester C is " + dims(c) + ", expected " +
             std::to_string(a.rows()) + "x" + std::to_string(b.rows()));
  }
  require_finite(a, "Sylvester A");
  require_finite(b, "Sylvester B");
  require_finite(c, "Sylvester C");
  if (c.size() == 0) return Matrix::Zero(c.rows(), c.cols());

  Eigen::ComplexSchur<Matrix> sa(a);
  Eigen::ComplexSchur<Matrix> sb(b);
  if (sa.info() != Eigen::Success || sb.info() != Eigen::Success) {
    fail(ErrorCode::kNonConvergence, "Schur decomposition failed");
  }
  const Matrix& t = sa.matrixT();
  const Matrix& r = sb.matrixT();
  const Matrix& u = sa.matrixU();
  const Matrix& v = sb.matrixU();

  const double scale = std::max({opnorm(a), opnorm(b), 1.0});
  const double guard = 1e-13 * scale;

  // T Y + Y R = F, R upper triangular: solve column by column.
  Matrix y = u.adjoint() * c * v;
  for (Index j = 0; j < y.cols(); ++j) {
    for (Index i = 0; i < j; ++i) y.col(j) -= r(i, j) * y.col(i);
    shifted_upper_solve(t, r(j, j), guard, y.col(j));
  }
  Matrix x = u * y * v.adjoint();
  require_finite(x, "Sylvester solution");
  return x;
}

double riccati_residual(const Matrix& gamma, const Matrix& b, const Matrix& q,
                        const Matrix& x) {
  return opnorm(gamma * x - x * gamma.adjoint() -
                kI * x * b * b.adjoint() * x + kI * q);
}

RiccatiSolution care_solve_detailed(const Matrix& gamma, const Matrix& b,
                                    const Matrix& q,
                                    const RiccatiOptions& options) {
  require_square(gamma, "Riccati gamma");
  require_square(q, "Riccati Q");
  const Index n = gamma.rows();
  if (b.rows() != n || q.rows() != n) {
    fail(ErrorCode::kDimensionMismatch,
         "Riccati data: gamma " + dims(gamma) + ", B " + dims(b) + ", Q " +
             dims(q));
  }
  require_finite(gamma, "Riccati gamma");
  require_finite(b, "Riccati B");
  require_finite(q, "Riccati Q");

  RiccatiSolution out;
  if (n == 0) {
    out.x = Matrix(0, 0);
    return out;
  }

  const Matrix a = kI * gamma.adjoint();
  const Matrix g = b * b.adjoint();
  const Matrix qh = hermitian_part(q);

  Matrix x;
  if (options.newton_start) {
    x = *options.newton_start;
    if (x.rows() != n || x.cols() != n) {
      fail(ErrorCode::kDimensionMismatch, "Newton start is " + dims(x));
    }
  } else {
    const Index n2 = 2 * n;
    Matrix z(n2, n2);
    z << a, -g, -qh, -a.adjoint();
    bool scaling = true;
    bool converged = false;
    double prev_delta = std::numeric_limits<double>::infinity();
    for (int it = 0; it < options.max_sign_iterations; ++it) {
      Eigen::PartialPivLU<Matrix> lu(z);
      const Matrix zinv = lu.inverse();
      double c = 1.0;
      if (scaling) {
        c = std::exp(log_abs_det(lu) / static_cast<double>(n2));
        if (!std::isfinite(c) || c <= 0.0) c = 1.0;
      }
      Matrix next = (z / c + c * zinv) * 0.5;
      if (!next.allFinite()) {
        fail(ErrorCode::kRiccatiFailure,
             "sign iteration broke down (Hamiltonian has imaginary-axis "
             "eigenvalues)");
      }
      const double delta = (next - z).cwiseAbs().colwise().sum().maxCoeff();
      const double size = next.cwiseAbs().colwise().sum().maxCoeff();
      z = std::move(next);
      out.sign_iterations = it + 1;
      if (delta < 1e-2 * size) scaling = false;
      // Quadratic convergence stalls at round-off; Newton polishes the rest.
      if (delta <= 1e-13 * size ||
          (delta <= 1e-8 * size && delta >= 0.5 * prev_delta)) {
        converged = true;
        break;
      }
      prev_delta = delta;
    }
    if (!converged) {
      fail(ErrorCode::kNonConvergence, "matrix sign iteration did not settle");
    }
    // Stable subspace = range of (I - sign H)... columns of [I; X] satisfy
    // (W + I)[I; X] = 0.
    const Matrix w11 = z.topLeftCorner(n, n);
    const Matrix w12 = z.topRightCorner(n, n);
    const Matrix w21 = z.bottomLeftCorner(n, n);
    const Matrix w22 = z.bottomRightCorner(n, n);
    Matrix lhs(n2, n);
    lhs << w12, w22 + identity(n);
    Matrix rhs(n2, n);
    rhs << w11 + identity(n), w21;
    x = lhs.completeOrthogonalDecomposition().solve(Matrix(-rhs));
  }
  x = hermitian_part(x);

  // Kleinman-Newton refinement: (A - G X)^* X' + X' (A - G X) = -(Q + X G X).
  const double target = 1e-15 * (1.0 + opnorm(x) * opnorm(x)) *
                        std::max({opnorm(a), opnorm(g), opnorm(qh), 1.0});
  for (int step = 0; step < options.max_newton_steps; ++step) {
    const Matrix res = care_residual(a, g, qh, x);
    if (opnorm(res) <= target) break;
    const Matrix ac = a - g * x;
    Matrix next;
    try {
      next = sylvester_solve(ac.adjoint(), ac, Matrix(-(qh + x * g * x)));
    } catch (const Error&) {
      fail(ErrorCode::kRiccatiFailure,
           "closed-loop matrix lost stability during Newton refinement");
    }
    next = hermitian_part(next);
    if (!next.allFinite()) {
      fail(ErrorCode::kRiccatiFailure, "Newton refinement diverged");
    }
    x = std::move(next);
    out.newton_steps = step + 1;
  }
  require_finite(x, "Riccati solution");

  Eigen::SelfAdjointEigenSolver<Matrix> es(x, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) <= 1e-12 * (1.0 + opnorm(x))) {
    fail(ErrorCode::kRiccatiFailure,
         "no positive definite solution (input realization is not minimal?)");
  }
  out.residual = riccati_residual(gamma, b, q, x);
  const double xn = opnorm(x);
  if (out.residual >= 1e-10 * (1.0 + xn * xn)) {
    fail(ErrorCode::kNonConvergence,
         "Riccati residual " + std::to_string(out.residual) +
             " after refinement");
  }
  out.x = std::move(x);
  return out;
}

Matrix care_solve(const Matrix& gamma, const Matrix& b, const Matrix& q) {
  return care_solve_detailed(gamma, b, q).x;
}

SpectrumReport spectrum(const Matrix& a) {
  require_square(a, "spectrum argument");
  require_finite(a, "spectrum argument");
  SpectrumReport r;
  r.max_imag = -std::numeric_limits<double>::infinity();
  r.min_imag = std::numeric_limits<double>::infinity();
  if (a.size() == 0) return r;
  Eigen::ComplexEigenSolver<Matrix> es(a, false);
  if (es.info() != Eigen::Success) {
    fail(ErrorCode::kNonConvergence, "eigenvalue iteration failed");
  }
  const Eigen::VectorXcd& ev = es.eigenvalues();
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  for (const Complex& l : r.eigenvalues) {
    r.max_imag = std::max(r.max_imag, l.imag());
    r.min_imag = std::min(r.min_imag, l.imag());
  }
  return r;
}

double distance_to_spectrum(const SpectrumReport& s, Complex z) {
  double d = std::numeric_limits<double>::infinity();
  for (const Complex& l : s.eigenvalues) d = std::min(d, std::abs(z - l));
  return d;
}

int numerical_rank(const Matrix& m, const KernelConfig& config) {
  const Eigen::VectorXd s = singular_values(m);
  if (s.size() == 0) return 0;
  const double tau =
      static_cast<double>(std::max(m.rows(), m.cols())) * s(0) *
      config.rank_factor;
  int r = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > tau) ++r;
  }
  return r;
}

Matrix reachable_basis(const Matrix& a, const Matrix& b,
                       const KernelConfig& config) {
  require_square(a, "state matrix");
  const Index n = a.rows();
  if (b.rows() != n) {
    fail(ErrorCode::kDimensionMismatch,
         "input map is " + dims(b) + " for state dimension " +
             std::to_string(n));
  }
  Matrix basis(n, 0);
  if (n == 0 || b.cols() == 0) return basis;

  const double tau = static_cast<double>(n) *
                     std::max(opnorm(a), opnorm(b)) * config.rank_factor;
  Matrix block = b;
  while (basis.cols() < n) {
    // Two passes of Gram-Schmidt against the basis found so far.
    for (int pass = 0; pass < 2 && basis.cols() > 0; ++pass) {
      block -= basis * (basis.adjoint() * block);
    }
    if (block.cols() == 0) break;
    Eigen::JacobiSVD<Matrix> svd(block, Eigen::ComputeThinU);
    const Eigen::VectorXd& s = svd.singularValues();
    Index r = 0;
    while (r < s.size() && s(r) > tau) ++r;
    r = std::min(r, n - basis.cols());
    if (r == 0) break;
    const Matrix fresh = svd.matrixU().leftCols(r);
    Matrix grown(n, basis.cols() + r);
    grown << basis, fresh;
    basis = std::move(grown);
    block = a * fresh;
  }
  return basis;
}

int controllability_rank(const Matrix& a, const Matrix& b,
                         const KernelConfig& config) {
  return static_cast<int>(reachable_basis(a, b, config).cols());
}

int observability_rank(const Matrix& a, const Matrix& c,
                       const KernelConfig& config) {
  return controllability_rank(a.adjoint(), c.adjoint(), config);
}

MinimalTriple minimal_realization(const Matrix& gamma, const Matrix& input,
                                  const Matrix& output,
                                  const KernelConfig& config) {
  require_square(gamma, "state matrix");
  if (output.cols() != gamma.rows()) {
    fail(ErrorCode::kDimensionMismatch,
         "output map is " + dims(output) + " for state dimension " +
             std::to_string(gamma.rows()));
  }
  require_finite(gamma, "state matrix");
  require_finite(input, "input map");
  require_finite(output, "output map");

  // Restrict to the reachable subspace, then to the observable part of it.
  const Matrix v = reachable_basis(gamma, input, config);
  const Matrix gc = v.adjoint() * gamma * v;
  const Matrix bc = v.adjoint() * input;
  const Matrix cc = output * v;

  const Matrix u = reachable_basis(gc.adjoint(), cc.adjoint(), config);
  MinimalTriple m;
  m.gamma = u.adjoint() * gc * u;
  m.input = u.adjoint() * bc;
  m.output = cc * u;
  m.degree = static_cast<int>(u.cols());
  return m;
}

}  // namespace skewdirac
