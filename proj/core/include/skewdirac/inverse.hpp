#pragma once

#include <vector>

#include "skewdirac/quadruple.hpp"

namespace skewdirac {

struct InverseSolution {
  AdmissibleQuadruple quadruple;
  Matrix riccati;                 // X
  double riccati_residual = 0.0;
  StateSpaceRealization minimal;  // reduced input, in the mode's convention
};

/// Recovers {alpha, I, theta1, theta2} whose continuous Weyl function is
/// phi (m2 x m1). The input is always Kalman-reduced first; the zero
/// function yields the n = 0 quadruple.
InverseSolution reconstruct_continuous(const StateSpaceRealization& phi,
                                       const KernelConfig& config = {});
/// Same for the discrete Weyl function (phi is m1 x m2).
InverseSolution reconstruct_discrete(const StateSpaceRealization& phi,
                                     const KernelConfig& config = {});

AdmissibleQuadruple invert_continuous(const StateSpaceRealization& phi);
AdmissibleQuadruple invert_discrete(const StateSpaceRealization& phi);

/// max over samples of ||phi(z) - phi_rec(z)|| where phi_rec is the Weyl
/// function (of the given mode) of the reconstructed quadruple.
double roundtrip_error(const StateSpaceRealization& phi, Convention mode,
                       const std::vector<Complex>& samples);

}  // namespace skewdirac
