#include "skewdirac/inverse.hpp"

#include "skewdirac/continuous.hpp"
#include "skewdirac/discrete.hpp"

namespace skewdirac {

namespace {

// With S = I the identity fixes the skew part of alpha to (i/2) Lambda Lambda^*.
// Taking it from there instead of from X^{-1/2} gamma X^{1/2} keeps the
// residual at rounding level when X is badly conditioned.
Matrix project_alpha(const Matrix& alpha, const Matrix& t1, const Matrix& t2) {
  return hermitian_part(alpha) +
         (0.5 * kI) * (t1 * t1.adjoint() + t2 * t2.adjoint());
}

}  // namespace

InverseSolution reconstruct_continuous(const StateSpaceRealization& phi,
                                       const KernelConfig& config) {
  // phi(z) = i theta2^* (zI - gamma)^{-1} theta1.
  const StateSpaceRealization red =
      phi.as(Convention::kContinuous).minimal(config);
  const Index m1 = phi.cols();
  const Index m2 = phi.rows();
  if (red.state_dim() == 0) {
    return {AdmissibleQuadruple::empty(m1, m2), Matrix(0, 0), 0.0, red};
  }
  const Matrix& gamma = red.gamma();
  const Matrix& th1 = red.input();
  const Matrix th2 = red.output().adjoint();

  const RiccatiSolution rs =
      care_solve_detailed(gamma, th2, Matrix(th1 * th1.adjoint()));
  const Matrix root = pd_sqrt(rs.x);
  const Matrix inv_root = pd_inverse_sqrt(rs.x);
  Matrix t1 = inv_root * th1;
  Matrix t2 = root * th2;
  Matrix alpha =
      project_alpha(inv_root * gamma * root + kI * t1 * t1.adjoint(), t1, t2);
  const Index n = gamma.rows();
  return {AdmissibleQuadruple(std::move(alpha), identity(n), std::move(t1),
                              std::move(t2)),
          rs.x, rs.residual, red};
}

InverseSolution reconstruct_discrete(const StateSpaceRealization& phi,
                                     const KernelConfig& config) {
  // phi(z) = -i theta1^* (zI + gamma)^{-1} theta2.
  const StateSpaceRealization red =
      phi.as(Convention::kDiscrete).minimal(config);
  const Index m1 = phi.rows();
  const Index m2 = phi.cols();
  if (red.state_dim() == 0) {
    return {AdmissibleQuadruple::empty(m1, m2), Matrix(0, 0), 0.0, red};
  }
  const Matrix& gamma = red.gamma();
  const Matrix& th2 = red.input();
  const Matrix th1 = red.output().adjoint();

  const RiccatiSolution rs =
      care_solve_detailed(gamma, th1, Matrix(th2 * th2.adjoint()));
  const Matrix root = pd_sqrt(rs.x);
  const Matrix inv_root = pd_inverse_sqrt(rs.x);
  Matrix t1 = root * th1;
  Matrix t2 = inv_root * th2;
  Matrix alpha =
      project_alpha(inv_root * gamma * root + kI * t2 * t2.adjoint(), t1, t2);
  const Index n = gamma.rows();
  return {AdmissibleQuadruple(std::move(alpha), identity(n), std::move(t1),
                              std::move(t2)),
          rs.x, rs.residual, red};
}

AdmissibleQuadruple invert_continuous(const StateSpaceRealization& phi) {
  return reconstruct_continuous(phi).quadruple;
}

AdmissibleQuadruple invert_discrete(const StateSpaceRealization& phi) {
  return reconstruct_discrete(phi).quadruple;
}

double roundtrip_error(const StateSpaceRealization& phi, Convention mode,
                       const std::vector<Complex>& samples) {
  if (mode == Convention::kContinuous) {
    return max_discrepancy(phi, weyl(invert_continuous(phi)), samples);
  }
  return max_discrepancy(phi, weyl_d(invert_discrete(phi)), samples);
}

}  // namespace skewdirac
