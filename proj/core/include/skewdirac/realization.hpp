#pragma once

#include <vector>

#include "skewdirac/matkernel.hpp"

namespace skewdirac {

enum class Convention {
  kContinuous,  // phi(z) =  i * output * (zI - gamma)^{-1} * input
  kDiscrete,    // phi(z) = -i * output * (zI + gamma)^{-1} * input
};

/// Strictly proper rational matrix function stored as a state-space triple.
class StateSpaceRealization {
 public:
  StateSpaceRealization(Matrix gamma, Matrix input, Matrix output,
                        Convention convention);

  /// The zero function with given output/input sizes (empty state).
  static StateSpaceRealization zero(Index rows, Index cols,
                                    Convention convention);

  Index state_dim() const { return gamma_.rows(); }
  Index rows() const { return output_.rows(); }
  Index cols() const { return input_.cols(); }
  const Matrix& gamma() const { return gamma_; }
  const Matrix& input() const { return input_; }
  const Matrix& output() const { return output_; }
  Convention convention() const { return convention_; }

  /// Evaluates the function; throws kPole within 1e-12 (1 + ||gamma||) of a
  /// pole.
  Matrix operator()(Complex z) const;

  /// Same function written in the other convention.
  StateSpaceRealization as(Convention convention) const;

  /// Kalman-reduced copy (same convention).
  StateSpaceRealization minimal(const KernelConfig& config = {}) const;

 private:
  Matrix gamma_;
  Matrix input_;
  Matrix output_;
  Convention convention_;
};

const char* to_string(Convention convention);

/// max_k || f(z_k) - g(z_k) ||.
double max_discrepancy(const StateSpaceRealization& f,
                       const StateSpaceRealization& g,
                       const std::vector<Complex>& samples);

}  // namespace skewdirac
