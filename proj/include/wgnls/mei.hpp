#pragma once

#include <vector>

namespace wgnls {

// Sampled threshold curve c -> m_c, piecewise linear between knots.
class MeiCurve {
 public:
  // c strictly increasing and >= 0, m > 0; err (optional) per-knot uncertainty.
  MeiCurve(std::vector<double> c, std::vector<double> m, std::vector<double> err = {});

  const std::vector<double>& c() const { return c_; }
  const std::vector<double>& m() const { return m_; }
  const std::vector<double>& err() const { return err_; }
  double c_min() const { return c_.front(); }
  double c_max() const { return c_.back(); }
  // Throws ExtrapolationError outside [c_min, c_max].
  double operator()(double c) const;
  MeiCurve shifted(double sign) const;

 private:
  std::vector<double> c_, m_, err_;
};

// D(c, h) = h + (h + c) / dist((c, h), complement of Omega) on Omega, +inf
// otherwise. The complement is the up-set bounded by the knot polyline, a
// vertical ray above the first knot and a flat ray right of the last knot.
double mei(double c, double h, const MeiCurve& curve);

struct MeiBand {
  double value, lower, upper;
};
// D on the curve; lower uses the curve shifted up by err, upper shifted down.
MeiBand mei_band(double c, double h, const MeiCurve& curve);

}  // namespace wgnls
