#include "skewdirac/realization.hpp"

#include <algorithm>
#include <string>

#include <Eigen/LU>

#include "skewdirac/error.hpp"

namespace skewdirac {

StateSpaceRealization::StateSpaceRealization(Matrix gamma, Matrix input,
                                             Matrix output,
                                             Convention convention)
    : gamma_(std::move(gamma)),
      input_(std::move(input)),
      output_(std::move(output)),
      convention_(convention) {
  require_square(gamma_, "state matrix");
  if (input_.rows() != gamma_.rows() || output_.cols() != gamma_.rows()) {
    fail(ErrorCode::kDimensionMismatch,
         "realization maps do not conform to state dimension " +
             std::to_string(gamma_.rows()));
  }
  require_finite(gamma_, "state matrix");
  require_finite(input_, "input map");
  require_finite(output_, "output map");
}

StateSpaceRealization StateSpaceRealization::zero(Index rows, Index cols,
                                                  Convention convention) {
  return StateSpaceRealization(Matrix(0, 0), Matrix(0, cols),
                               Matrix(rows, 0), convention);
}

Matrix StateSpaceRealization::operator()(Complex z) const {
  const Index n = state_dim();
  if (n == 0) return Matrix::Zero(rows(), cols());
  const bool cont = convention_ == Convention::kContinuous;
  const Matrix shifted = cont ? Matrix(z * identity(n) - gamma_)
                              : Matrix(z * identity(n) + gamma_);
  const SpectrumReport s = spectrum(cont ? gamma_ : Matrix(-gamma_));
  if (distance_to_spectrum(s, z) < 1e-12 * (1.0 + opnorm(gamma_))) {
    fail(ErrorCode::kPole, "evaluation point is a pole of the realization");
  }
  const Matrix r = shifted.partialPivLu().solve(input_);
  return (cont ? kI : -kI) * (output_ * r);
}

StateSpaceRealization StateSpaceRealization::as(Convention convention) const {
  if (convention == convention_) return *this;
  // i C (zI - g)^{-1} B = -i C (zI + (-g))^{-1} (-B).
  return StateSpaceRealization(-gamma_, -input_, output_, convention);
}

StateSpaceRealization StateSpaceRealization::minimal(
    const KernelConfig& config) const {
  MinimalTriple m = minimal_realization(gamma_, input_, output_, config);
  return StateSpaceRealization(std::move(m.gamma), std::move(m.input),
                               std::move(m.output), convention_);
}

const char* to_string(Convention convention) {
  return convention == Convention::kContinuous ? "continuous" : "discrete";
}

double max_discrepancy(const StateSpaceRealization& f,
                       const StateSpaceRealization& g,
                       const std::vector<Complex>& samples) {
  if (f.rows() != g.rows() || f.cols() != g.cols()) {
    fail(ErrorCode::kDimensionMismatch, "functions have different shapes");
  }
  double worst = 0.0;
  for (const Complex& z : samples) worst = std::max(worst, opnorm(f(z) - g(z)));
  return worst;
}

}  // namespace skewdirac
