#include "skewdirac/discrete.hpp"

#include <string>

#include <Eigen/Dense>

#include "skewdirac/error.hpp"

namespace skewdirac {
namespace {

Matrix step_factor(const AdmissibleQuadruple& q, Complex z, int k) {
  // (I + (i/z) j)^k, diagonal.
  Matrix d = Matrix::Zero(q.m(), q.m());
  const Complex up = std::pow(1.0 + kI / z, k);
  const Complex down = std::pow(1.0 - kI / z, k);
  for (Index i = 0; i < q.m1(); ++i) d(i, i) = up;
  for (Index i = q.m1(); i < q.m(); ++i) d(i, i) = down;
  return d;
}

void require_nonzero(Complex z) {
  if (z == Complex(0.0, 0.0)) {
    fail(ErrorCode::kPole, "z = 0 is excluded");
  }
}

}  // namespace

DiscretePotentialSequence::DiscretePotentialSequence(
    AdmissibleQuadruple source, int horizon)
    : source_(std::move(source)) {
  if (horizon < 0) fail(ErrorCode::kPrecondition, "horizon must be >= 0");
  require_strong(source_, false);
  const Matrix j = source_.signature();
  sigma_.reserve(static_cast<std::size_t>(horizon) + 2);
  sigma_.push_back(propagate_k_normalized(source_, 0));
  for (int k = 0; k <= horizon; ++k) {
    sigma_.push_back(propagate_k_normalized(sigma_.back(), 1));
  }
  // S_k = I, so Lambda_k^* S_k^{-1} Lambda_k is Lambda_k^* Lambda_k.
  std::vector<Matrix> gram(sigma_.size());
  for (std::size_t k = 0; k < sigma_.size(); ++k) {
    const Matrix l = sigma_[k].lambda();
    gram[k] = l.adjoint() * l;
  }
  c_.reserve(static_cast<std::size_t>(horizon) + 1);
  for (int k = 0; k <= horizon; ++k) {
    c_.push_back(j + gram[static_cast<std::size_t>(k)] -
                 gram[static_cast<std::size_t>(k) + 1]);
  }
}

const Matrix& DiscretePotentialSequence::potential(int k) const {
  if (k < 0 || k > horizon()) {
    fail(ErrorCode::kPrecondition,
         "k = " + std::to_string(k) + " outside the computed horizon");
  }
  return c_[static_cast<std::size_t>(k)];
}

DiscretePotentialSequence potential_seq(const AdmissibleQuadruple& q,
                                        int k_max) {
  return DiscretePotentialSequence(q, k_max);
}

Matrix potential_term(const AdmissibleQuadruple& sigma) {
  const AdmissibleQuadruple next = propagate_k(sigma, 1);
  const Matrix l0 = sigma.lambda();
  const Matrix l1 = next.lambda();
  return sigma.signature() + l0.adjoint() * sigma.s0_solve(l0) -
         l1.adjoint() * next.s0_solve(l1);
}

Matrix fundamental_w(const AdmissibleQuadruple& q, int k, Complex z) {
  require_nonzero(z);
  if (k < 0) fail(ErrorCode::kPrecondition, "k must be >= 0");
  const Matrix w0 = transfer(q, -z);
  Eigen::PartialPivLU<Matrix> lu(w0);
  if (!(lu.rcond() > 1e-14)) {
    fail(ErrorCode::kSingular, "W(-z) is not invertible at this z");
  }
  const Matrix wk = k == 0 ? w0 : transfer(propagate_k_normalized(q, k), -z);
  return wk * step_factor(q, z, k) * lu.inverse();
}

Matrix fundamental_w_steps(const DiscretePotentialSequence& seq, int k,
                           Complex z) {
  require_nonzero(z);
  if (k < 0 || k > seq.horizon() + 1) {
    fail(ErrorCode::kPrecondition, "k outside the computed horizon");
  }
  const Index m = seq.source().m();
  Matrix w = identity(m);
  for (int i = 0; i < k; ++i) {
    w = (identity(m) + (kI / z) * seq.potential(i)) * w;
  }
  return w;
}

StateSpaceRealization weyl_d(const AdmissibleQuadruple& q) {
  require_strong(q, false);
  return phi2(q);
}

std::vector<double> summability_partial_sums(const AdmissibleQuadruple& q,
                                             Complex z, const Matrix& phi,
                                             int k_max) {
  require_nonzero(z);
  if (phi.rows() != q.m1() || phi.cols() != q.m2()) {
    fail(ErrorCode::kDimensionMismatch, "phi must be m1 x m2");
  }
  const DiscretePotentialSequence seq(q, k_max);
  Matrix y(q.m(), q.m2());
  y << phi, identity(q.m2());
  std::vector<double> sums;
  sums.reserve(static_cast<std::size_t>(k_max) + 1);
  double total = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    total += y.squaredNorm();
    sums.push_back(total);
    y = (identity(q.m()) + (kI / z) * seq.potential(k)) * y;
  }
  return sums;
}

HPair h_pm_of(const AdmissibleQuadruple& sigma_k) {
  require_strong(sigma_k, true);
  const Matrix j = sigma_k.signature();
  const Index m = sigma_k.m();
  const Matrix p1 = (identity(m) + j) * 0.5;
  const Matrix p2 = (identity(m) - j) * 0.5;
  const Matrix wp = transfer(sigma_k, kI);
  const Matrix wm = transfer(sigma_k, -kI);
  return {2.0 * wp * p1 * wm.adjoint(), 2.0 * wm * p2 * wp.adjoint()};
}

HPair h_pm(const AdmissibleQuadruple& q, int k) {
  require_strong(q, true);
  return h_pm_of(propagate_k_normalized(q, k));
}

InvolutionReport involution_check(const Matrix& c, std::optional<Index> m1,
                                  const KernelConfig& config) {
  require_square(c, "potential matrix");
  InvolutionReport r;
  const Index m = c.rows();
  r.hermitian_residual = opnorm(c - c.adjoint());
  r.involution_residual = opnorm(c * c - identity(m));
  r.rank_plus = numerical_rank(identity(m) + c, config);
  r.rank_minus = numerical_rank(identity(m) - c, config);
  const bool ranks =
      m1 ? (r.rank_plus == *m1 && r.rank_minus == m - *m1)
         : (r.rank_plus + r.rank_minus == m);
  r.passed = r.hermitian_residual <= 1e-10 && r.involution_residual <= 1e-9 &&
             ranks;
  return r;
}

}  // namespace skewdirac
