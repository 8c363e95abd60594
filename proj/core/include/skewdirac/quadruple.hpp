#pragma once

#include <string>
#include <vector>

#include "skewdirac/matkernel.hpp"
#include "skewdirac/realization.hpp"

namespace skewdirac {

/// {alpha, S0, theta1, theta2} with alpha S0 - S0 alpha^* =
/// i (theta1 theta1^* + theta2 theta2^*). The constructor only checks shapes
/// and finiteness; use validate() for the identity itself.
class AdmissibleQuadruple {
 public:
  AdmissibleQuadruple(Matrix alpha, Matrix s0, Matrix theta1, Matrix theta2);

  /// n = 0 quadruple with block sizes m1, m2 (generates the zero potential).
  static AdmissibleQuadruple empty(Index m1, Index m2);

  Index n() const { return alpha_.rows(); }
  Index m1() const { return theta1_.cols(); }
  Index m2() const { return theta2_.cols(); }
  Index m() const { return m1() + m2(); }

  const Matrix& alpha() const { return alpha_; }
  const Matrix& s0() const { return s0_; }
  const Matrix& theta1() const { return theta1_; }
  const Matrix& theta2() const { return theta2_; }

  /// [theta1 theta2], n x m.
  Matrix lambda() const;
  /// diag(I_{m1}, -I_{m2}).
  Matrix signature() const;

  /// S0^{-1} M via Cholesky; throws kNotPositiveDefinite.
  Matrix s0_solve(const Matrix& rhs) const;

 private:
  Matrix alpha_;
  Matrix s0_;
  Matrix theta1_;
  Matrix theta2_;
};

struct ValidationReport {
  // ||S0 - S0^*|| / ||S0||.
  double hermitian_residual = 0.0;
  double min_eigenvalue = 0.0;
  // ||alpha S0 - S0 alpha^* - i Lambda Lambda^*|| / (1 + ||alpha|| ||S0||).
  double admissibility_residual = 0.0;
  double tol = 0.0;
  bool passed = false;
  std::vector<std::string> messages;
};

struct StrongFlag {
  bool controllable = false;
  bool spectrum_in_upper_half_plane = false;
  bool i_not_eigenvalue = false;

  bool strong() const { return controllable && spectrum_in_upper_half_plane; }
};

inline constexpr double kDefaultTolerance = 1e-9;

/// Relative admissibility residual of (alpha, S, Lambda).
double admissibility_residual(const Matrix& alpha, const Matrix& s,
                              const Matrix& lambda);

ValidationReport validate(const AdmissibleQuadruple& q,
                          double tol = kDefaultTolerance);
/// Throws the first failure of validate() as an Error.
void require_valid(const AdmissibleQuadruple& q,
                   double tol = kDefaultTolerance);

StrongFlag is_strong(const AdmissibleQuadruple& q,
                     const KernelConfig& config = {});
/// Throws kPrecondition unless strongly admissible (and, if requested,
/// i is not an eigenvalue of alpha).
void require_strong(const AdmissibleQuadruple& q, bool need_i_regular,
                    const KernelConfig& config = {});

/// W(z) = I + i Lambda^* S0^{-1} (zI - alpha)^{-1} Lambda.
Matrix transfer(const AdmissibleQuadruple& q, Complex z);

/// i theta2^* S0^{-1} (zI - beta1)^{-1} theta1, beta1 = alpha -
/// i theta1 theta1^* S0^{-1}. Continuous convention, m2 x m1.
StateSpaceRealization phi1(const AdmissibleQuadruple& q);

/// -i theta1^* S0^{-1} (zI + beta2)^{-1} theta2, beta2 = alpha -
/// i theta2 theta2^* S0^{-1}. Discrete convention, m1 x m2.
StateSpaceRealization phi2(const AdmissibleQuadruple& q);

/// {alpha, S0, theta2, theta1}.
AdmissibleQuadruple associate(const AdmissibleQuadruple& q);

struct XPropagationOptions {
  // Compare the closed form with adaptive quadrature of the defining
  // integral; disagreement above 1e-6 raises kConsistency.
  bool quadrature_check = false;
};

/// Sigma(x) = {alpha, S(x), e^{-ix alpha} theta1, e^{ix alpha} theta2}.
AdmissibleQuadruple propagate_x(const AdmissibleQuadruple& q, double x,
                                const XPropagationOptions& options = {});

/// Sigma(x) moved to S = I by a congruence {T alpha T^{-1}, T S T^*, T Lambda}.
/// The potential and the transfer function are unchanged. Computed by
/// short closed-form steps with renormalization, so it stays well
/// conditioned where S(x) itself is not representable.
AdmissibleQuadruple propagate_x_normalized(const AdmissibleQuadruple& q,
                                           double x);
/// The same along a non-decreasing grid, each point continuing from the
/// previous one.
std::vector<AdmissibleQuadruple> propagate_x_normalized(
    const AdmissibleQuadruple& q, const std::vector<double>& xs);

/// e^{-ix alpha} S(x) e^{-ix alpha^*} = [S0  -iI] e^{-2ixA} [I; 0] with
/// A = [[alpha^*, 0], [-theta1 theta1^*, alpha]].
Matrix shifted_s_closed_form(const AdmissibleQuadruple& q, double x);

/// S0 + int_0^x Lambda(t) j Lambda(t)^* dt by adaptive Simpson.
Matrix s_by_quadrature(const AdmissibleQuadruple& q, double x,
                       double tol = 1e-11);

/// Sigma_k: Lambda_{k+1} = Lambda_k + i alpha^{-1} Lambda_k j,
/// S_{k+1} = S_k + alpha^{-1} (S_k + Lambda_k j Lambda_k^*) alpha^{-*}.
/// Throws kSingular if alpha is singular.
AdmissibleQuadruple propagate_k(const AdmissibleQuadruple& q, int k);

/// Sigma_k moved to S = I by a congruence after every step (the discrete
/// analogue of propagate_x_normalized). Same transfer function, C_k and
/// H_k^{+-} as Sigma_k.
AdmissibleQuadruple propagate_k_normalized(const AdmissibleQuadruple& q,
                                           int k);

/// Sigma_t: theta1(t) = e^{-2t(alpha - iI)^{-1}} theta1,
/// theta2(t) = e^{-2t(alpha + iI)^{-1}} theta2, S(t) by Sylvester solve.
/// Requires strong admissibility and i not in sigma(alpha).
AdmissibleQuadruple flow_gdhm(const AdmissibleQuadruple& q, double t);

/// theta1(t) = e^{-it alpha^p} theta1, theta2(t) = e^{it alpha^p} theta2,
/// p in {2, 3}, S(t) by Sylvester solve. Requires strong admissibility.
AdmissibleQuadruple flow_zs(const AdmissibleQuadruple& q, double t, int p);

/// Unique S with alpha S - S alpha^* = i Lambda Lambda^* (sigma(alpha) in
/// the open upper half-plane), Hermitized.
Matrix s_from_identity(const Matrix& alpha, const Matrix& lambda);

}  // namespace skewdirac
