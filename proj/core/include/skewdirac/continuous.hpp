#pragma once

#include <optional>
#include <vector>

#include "skewdirac/quadruple.hpp"

namespace skewdirac {

/// Samples of a matrix-valued function on a strictly increasing grid.
struct GridSeries {
  std::vector<double> abscissae;
  std::vector<Matrix> values;
};

/// Checks equal lengths and strict monotonicity; throws kPrecondition.
void check_grid(const GridSeries& g);

/// Uniform grid x0, x0 + (x1 - x0)/steps, ..., x1 (steps + 1 points).
std::vector<double> uniform_grid(double x0, double x1, int steps);

/// v(x) = 2 theta1(x)^* S(x)^{-1} theta2(x), m1 x m2, evaluated on the
/// normalized Sigma(x) (see propagate_x_normalized).
Matrix potential(const AdmissibleQuadruple& q, double x);

/// v(x) = 2 theta1^* ([S0  -iI] e^{-2ixA} [I; 0])^{-1} theta2.
Matrix potential_alt(const AdmissibleQuadruple& q, double x);

/// potential() over a grid, marching from one abscissa to the next.
GridSeries sample_potential(const AdmissibleQuadruple& q,
                            const std::vector<double>& xs);

/// max ||v(x)|| over a uniform grid on [0, x_max].
double potential_sup(const AdmissibleQuadruple& q, double x_max,
                     int steps = 400);

/// u(x, z) = W_{Sigma(x)}(z) e^{ixzj} W_{Sigma(0)}(z)^{-1}.
Matrix fundamental(const AdmissibleQuadruple& q, double x, Complex z);

/// The Weyl function i theta2^* S0^{-1} (zI - alpha + i theta1 theta1^*
/// S0^{-1})^{-1} theta1 (m2 x m1).
StateSpaceRealization weyl(const AdmissibleQuadruple& q);

/// Smallest Im z the certificate is meant for: sup ||v|| + 1 on [0, x_max].
double weyl_halfplane_bound(const AdmissibleQuadruple& q, double x_max);

struct WeylCertificate {
  double integral = 0.0;       // trapezoid value on [0, x_max]
  double tail = 0.0;           // contribution of the last 20% of the grid
  double decay_rate = 0.0;     // fitted r in integrand ~ e^{-r x} on the tail
  bool converged = false;      // tail < 1% of integral
};

/// Integrates trace([I phi^*] u^* u [I; phi]) in x. `candidate` replaces the
/// computed phi(z) (used to show that a wrong value diverges).
WeylCertificate weyl_certificate(const AdmissibleQuadruple& q, Complex z,
                                 double x_max, int steps = 2000,
                                 const std::optional<Matrix>& candidate = {});

}  // namespace skewdirac
