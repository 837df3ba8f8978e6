#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "wgnls/bifurcation.hpp"
#include "wgnls/error.hpp"
#include "wgnls/euclidean.hpp"

namespace wgnls {

namespace {
constexpr double pi = std::numbers::pi;

double slope_of(const ModelParams& p) { return std::pow((p.alpha + 3.0) / 3.0, 1.0 / p.alpha); }

template <class F>
double integrate(F f, double lo, double hi) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-15);
}
}  // namespace

double rho_window_lower(const ModelParams& p) {
  return pi - 3.0 * pi * std::pow(3.0 / (p.alpha + 3.0), 2.0 / p.alpha);
}

double rho_profile(double y, double a, const ModelParams& p) {
  const double h = slope_of(p) / (pi - a);
  if (y <= a || y >= 2.0 * pi - a) return 0.0;
  return y <= pi ? h * (y - a) : h * (2.0 * pi - a - y);
}

RhoCertificate rho_certificate(const ModelParams& p, std::optional<double> a_opt) {
  const double lo = std::max(rho_window_lower(p), 0.0);
  const double a = a_opt ? *a_opt : 0.5 * (lo + pi);
  if (!(a > lo) || !(a < pi))
    throw InvalidArgument("rho_certificate: a = " + std::to_string(a) + " outside the window (" +
                          std::to_string(lo) + ", pi)");
  RhoCertificate r;
  r.a = a;
  r.slope = slope_of(p);
  const double e = p.alpha + 2.0;
  auto rho = [&](double y) { return rho_profile(y, a, p); };
  // rho vanishes off [a, 2 pi - a] and is linear on the two halves.
  for (double s : {1.0, -1.0}) {
    const double x0 = s > 0 ? a : pi, x1 = s > 0 ? pi : 2.0 * pi - a;
    r.l2_sq += integrate([&](double y) { return rho(y) * rho(y); }, x0, x1);
    r.lp_pow += integrate([&](double y) { return std::pow(rho(y), e); }, x0, x1);
  }
  r.l2_sq_exact = 2.0 * r.slope * r.slope * (pi - a) / 3.0;
  const int ns = 257;
  for (int i = 0; i < ns; ++i) {
    const double y = 2.0 * pi * i / (ns - 1);
    r.y.push_back(y);
    r.rho.push_back(rho(y));
  }

  // psi = rho(y) P(x) with P the Euclidean ground state of mass 1/||rho||^2.
  const EuclideanReference P = euclidean_reference(1.0 / r.l2_sq, p);
  const double kx = r.l2_sq * P.gradx_sq;
  const double kp = p.k_coeff() * r.lp_pow * P.pot;
  r.K_psi = (kx - kp) / (kx + kp);
  r.psi_energy = 0.5 * r.l2_sq * P.gradx_sq - r.lp_pow * P.pot / e;
  r.reference = 2.0 * pi * euclidean_reference(0.5 / pi, p).wm;
  r.margin = r.reference - r.psi_energy;
  return r;
}

}  // namespace wgnls
