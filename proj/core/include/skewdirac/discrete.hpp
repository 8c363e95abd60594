#pragma once

#include <optional>
#include <vector>

#include "skewdirac/quadruple.hpp"

namespace skewdirac {

/// C_0 ... C_K generated by a strongly admissible quadruple. The propagated
/// Sigma_0 ... Sigma_{K+1} are kept in normalized form (S_k = I after a
/// congruence), which leaves C_k, w_k and H_k^{+-} unchanged.
class DiscretePotentialSequence {
 public:
  DiscretePotentialSequence(AdmissibleQuadruple source, int horizon);

  const AdmissibleQuadruple& source() const { return source_; }
  int horizon() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Matrix>& potentials() const { return c_; }
  const Matrix& potential(int k) const;
  /// Normalized Sigma_0 ... Sigma_{K+1}.
  const std::vector<AdmissibleQuadruple>& sigma() const { return sigma_; }

 private:
  AdmissibleQuadruple source_;
  std::vector<AdmissibleQuadruple> sigma_;
  std::vector<Matrix> c_;
};

/// Requires strong admissibility (i in sigma(alpha) is allowed here).
DiscretePotentialSequence potential_seq(const AdmissibleQuadruple& q, int k_max);

/// C = j + Lambda^* S^{-1} Lambda - Lambda'^* S'^{-1} Lambda' for the pair
/// (sigma, one discrete step of sigma). No strongness check.
Matrix potential_term(const AdmissibleQuadruple& sigma);

/// w_k(z) = W_{Sigma_k}(-z) (I + (i/z) j)^k W_{Sigma_0}(-z)^{-1}.
Matrix fundamental_w(const AdmissibleQuadruple& q, int k, Complex z);

/// (I + (i/z) C_{k-1}) ... (I + (i/z) C_0).
Matrix fundamental_w_steps(const DiscretePotentialSequence& seq, int k,
                           Complex z);

/// -i theta1^* S0^{-1} (zI + alpha - i theta2 theta2^* S0^{-1})^{-1} theta2
/// (m1 x m2). Requires strong admissibility.
StateSpaceRealization weyl_d(const AdmissibleQuadruple& q);

/// Partial sums over k = 0..k_max of trace([phi^* I] w_k^* w_k [phi; I]).
std::vector<double> summability_partial_sums(const AdmissibleQuadruple& q,
                                             Complex z, const Matrix& phi,
                                             int k_max);

struct HPair {
  Matrix plus;
  Matrix minus;
};

/// H_k^+ = 2 W(i) P1 W(-i)^*, H_k^- = 2 W(-i) P2 W(i)^* with W the transfer
/// function of Sigma_k. Requires strong admissibility and i not in
/// sigma(alpha).
HPair h_pm(const AdmissibleQuadruple& q, int k);
/// Same, from an already propagated Sigma_k.
HPair h_pm_of(const AdmissibleQuadruple& sigma_k);

struct InvolutionReport {
  double hermitian_residual = 0.0;
  double involution_residual = 0.0;  // ||C^2 - I||
  int rank_plus = 0;                 // rank(I + C)
  int rank_minus = 0;                // rank(I - C)
  bool passed = false;
};

/// Hermitian to 1e-10, ||C^2 - I|| <= 1e-9 and, if given, rank(I + C) = m1,
/// rank(I - C) = m2 (otherwise the ranks must add up to the size).
InvolutionReport involution_check(const Matrix& c,
                                  std::optional<Index> m1 = std::nullopt,
                                  const KernelConfig& config = {});

}  // namespace skewdirac
