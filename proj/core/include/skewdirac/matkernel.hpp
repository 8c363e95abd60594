#pragma once

// Dense complex linear-algebra kernels shared by every other module.

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace skewdirac {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

// Rank decisions use tau = dim * sigma_max * rank_factor.
struct KernelConfig {
  double rank_factor = 1e-12;
};

// Induced 2-norm (largest singular value); zero for empty matrices.
double opnorm(const Matrix& m);

Matrix identity(Index n);
Matrix hermitian_part(const Matrix& m);
bool all_finite(const Matrix& m);

void require_square(const Matrix& m, std::string_view what);
void require_finite(const Matrix& m, std::string_view what);

/// Matrix exponential by scaling and squaring with a degree-13 Padé
/// approximant.
Matrix mat_exp(const Matrix& a);

/// Hermitian positive definite square root R = R^*, R R = S.
/// Throws kNotHermitian / kNotPositiveDefinite.
Matrix pd_sqrt(const Matrix& s);
/// Inverse of pd_sqrt(s), computed from the same eigendecomposition.
Matrix pd_inverse_sqrt(const Matrix& s);

/// Solves A X + X B = C (Bartels-Stewart on complex Schur forms). Throws
/// kNoUniqueSolution when sigma(A) and sigma(-B) (numerically) intersect.
Matrix sylvester_solve(const Matrix& a, const Matrix& b, const Matrix& c);

struct RiccatiOptions {
  // When set, the sign-function stage is skipped and Newton refinement
  // starts from this matrix.
  std::optional<Matrix> newton_start;
  int max_newton_steps = 5;
  int max_sign_iterations = 100;
};

struct RiccatiSolution {
  Matrix x;
  double residual = 0.0;
  int sign_iterations = 0;
  int newton_steps = 0;
};

/// Positive definite solution of
///   gamma X - X gamma^* - i X B B^* X + i Q = 0,
/// i.e. the standard CARE A^* X + X A - X B B^* X + Q = 0 with A = i gamma^*.
/// The stable invariant subspace of the Hamiltonian is extracted with the
/// determinant-scaled matrix sign function, then polished by Newton steps.
RiccatiSolution care_solve_detailed(const Matrix& gamma, const Matrix& b,
                                    const Matrix& q,
                                    const RiccatiOptions& options = {});
Matrix care_solve(const Matrix& gamma, const Matrix& b, const Matrix& q);

/// ||gamma X - X gamma^* - i X B B^* X + i Q||.
double riccati_residual(const Matrix& gamma, const Matrix& b, const Matrix& q,
                        const Matrix& x);

struct SpectrumReport {
  std::vector<Complex> eigenvalues;
  // -inf / +inf for the empty spectrum, so "all Im > c" checks are vacuous.
  double max_imag = 0.0;
  double min_imag = 0.0;
};

SpectrumReport spectrum(const Matrix& a);

/// Smallest distance from z to the eigenvalues in `s` (+inf when empty).
double distance_to_spectrum(const SpectrumReport& s, Complex z);

int numerical_rank(const Matrix& m, const KernelConfig& config = {});

/// Orthonormal basis of span{B, AB, ..., A^{n-1}B}, built block by block
/// (controllability staircase).
Matrix reachable_basis(const Matrix& a, const Matrix& b,
                       const KernelConfig& config = {});

/// rank [B, AB, ..., A^{n-1}B]; the pair is controllable iff this equals n.
int controllability_rank(const Matrix& a, const Matrix& b,
                         const KernelConfig& config = {});
int observability_rank(const Matrix& a, const Matrix& c,
                       const KernelConfig& config = {});

struct MinimalTriple {
  Matrix gamma;
  Matrix input;
  Matrix output;
  int degree = 0;
};

/// Kalman reduction of output (zI - gamma)^{-1} input to a controllable and
/// observable triple realizing the same function. The (zI + gamma)
/// convention reduces identically.
MinimalTriple minimal_realization(const Matrix& gamma, const Matrix& input,
                                  const Matrix& output,
                                  const KernelConfig& config = {});

}  // namespace skewdirac
