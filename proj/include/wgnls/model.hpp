#pragma once

#include "wgnls/rational.hpp"

namespace wgnls {

// Dimension of the Euclidean factor and the nonlinearity exponent, restricted
// to the intercritical window 4/d < alpha < 4/(d-1).
struct ModelParams {
  int d = 1;
  Rational alpha_q{6};
  double alpha = 6.0;

  static ModelParams make(int d, double alpha);
  static ModelParams make(int d, Rational alpha);

  // alpha * d / 2, the x-scaling exponent of the potential energy.
  double pot_exponent() const { return 0.5 * alpha * d; }
  // alpha d / (2 (alpha + 2)), coefficient of pot in K.
  double k_coeff() const { return alpha * d / (2.0 * (alpha + 2.0)); }
  // |z|^e given |z|^2, using repeated products when e/2 is a small integer.
  double abs_pow(double abs_sq, double e) const;
};

// Validates the window for 1 <= d <= 4 (used by the exponent table).
void check_intercritical(int d, const Rational& alpha);

}  // namespace wgnls
