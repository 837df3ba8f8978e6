#include "wgnls/model.hpp"

#include <cmath>
#include <string>

#include "wgnls/error.hpp"

namespace wgnls {

void check_intercritical(int d, const Rational& alpha) {
  if (d < 1 || d > 4) throw InvalidArgument("ModelParams: d must be in 1..4");
  if (!(Rational(4, d) < alpha))
    throw InvalidArgument("ModelParams: alpha=" + alpha.str() + " must exceed 4/d for d=" + std::to_string(d));
  if (d > 1 && !(alpha < Rational(4, d - 1)))
    throw InvalidArgument("ModelParams: alpha=" + alpha.str() + " must be below 4/(d-1) for d=" + std::to_string(d));
}

ModelParams ModelParams::make(int d, Rational alpha) {
  if (d != 1 && d != 2) throw InvalidArgument("ModelParams: d must be 1 or 2");
  check_intercritical(d, alpha);
  ModelParams p;
  p.d = d;
  p.alpha_q = alpha;
  p.alpha = alpha.to_double();
  return p;
}

ModelParams ModelParams::make(int d, double alpha) {
  if (!std::isfinite(alpha)) throw InvalidArgument("ModelParams: alpha must be finite");
  return make(d, Rational::from_double(alpha));
}

double ModelParams::abs_pow(double abs_sq, double e) const {
  const double half = 0.5 * e;
  const double r = std::round(half);
  if (r == half && r >= 0 && r <= 8) {
    double v = 1.0;
    for (int i = 0; i < static_cast<int>(r); ++i) v *= abs_sq;
    return v;
  }
  return std::pow(abs_sq, half);
}

}  // namespace wgnls
