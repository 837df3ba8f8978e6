#include "wgnls/functionals.hpp"

#include <cmath>

#include "wgnls/error.hpp"
#include "wgnls/spectral.hpp"

namespace wgnls {

namespace {
void check_dims(const Field& u, const ModelParams& p) {
  if (u.grid().d() != p.d) throw InvalidArgument("field dimension does not match ModelParams.d");
}
}  // namespace

FunctionalReport make_report(double mass, double gradx_sq, double grady_sq, double pot,
                             const ModelParams& p) {
  FunctionalReport r;
  r.mass = mass;
  r.gradx_sq = gradx_sq;
  r.grady_sq = grady_sq;
  r.pot = pot;
  r.energy = 0.5 * (gradx_sq + grady_sq) - pot / (p.alpha + 2.0);
  r.semivirial = gradx_sq - p.k_coeff() * pot;
  r.action = r.energy - 0.5 * r.semivirial;
  return r;
}

double potential(const Field& u, const ModelParams& p) {
  double s = 0.0;
  const double e = p.alpha + 2.0;
  for (const auto& z : u.values()) s += p.abs_pow(std::norm(z), e);
  return s * u.grid().cell();
}

FunctionalReport evaluate(const Field& u, const ModelParams& p) {
  check_dims(u, p);
  const auto dn = derivative_norms(u);
  const double m = std::pow(lp_norm(u, 2.0), 2.0);
  return make_report(m, dn.gradx_sq, dn.grady_sq, potential(u, p), p);
}

LambdaEnergy energy_lambda(const FunctionalReport& r, double lambda, const ModelParams& p) {
  if (!(lambda > 0.0)) throw InvalidArgument("energy_lambda: lambda must be positive");
  const double a = p.alpha;
  LambdaEnergy e;
  e.energy = 0.5 * lambda * r.grady_sq + 0.5 * r.gradx_sq - r.pot / (a + 2.0);
  e.action = 0.5 * lambda * r.grady_sq + (a * p.d - 4.0) / (4.0 * (a + 2.0)) * r.pot;
  return e;
}

LambdaEnergy energy_lambda(const Field& u, double lambda, const ModelParams& p) {
  if (!(lambda > 0.0)) throw InvalidArgument("energy_lambda: lambda must be positive");
  return energy_lambda(evaluate(u, p), lambda, p);
}

Field scale_ut(const Field& u, double t, double leak_tol) { return resample_scale(u, t, leak_tol); }

Field scale_Tlambda(const Field& u, double lambda, const ModelParams& p, double leak_tol) {
  check_dims(u, p);
  if (!(lambda > 0.0)) throw InvalidArgument("scale_Tlambda: lambda must be positive");
  if (lambda == 1.0) return u;
  // T_lambda u = lambda^{2/alpha - d/2} u^lambda.
  const Field v = resample_scale(u, lambda, leak_tol);
  return v.scaled(std::pow(lambda, 2.0 / p.alpha - 0.5 * p.d));
}

double tstar(double gradx_sq, double pot, const ModelParams& p) {
  if (!(gradx_sq > 0.0) || !(pot > 0.0))
    throw DegenerateFieldError("tstar: needs gradx_sq > 0 and pot > 0");
  const double ad = p.alpha * p.d;
  return std::pow(2.0 * (p.alpha + 2.0) * gradx_sq / (ad * pot), 2.0 / (ad - 4.0));
}

double tstar(const Field& u, const ModelParams& p) {
  const auto r = evaluate(u, p);
  return tstar(r.gradx_sq, r.pot, p);
}

double gn_ratio(const FunctionalReport& r, const ModelParams& p) {
  if (!(r.mass > 0.0)) throw DegenerateFieldError("gn_ratio: zero field");
  const double a = p.alpha;
  const double d = p.d;
  const double den = std::pow(r.gradx_sq, a * d / 4.0) * std::pow(r.mass, (4.0 - a * (d - 1.0)) / 4.0) *
                     (std::pow(r.mass, a / 4.0) + std::pow(r.grady_sq, a / 4.0));
  if (!(den > 0.0)) throw DegenerateFieldError("gn_ratio: vanishing x-gradient");
  return r.pot / den;
}

double gn_ratio(const Field& u, const ModelParams& p) { return gn_ratio(evaluate(u, p), p); }

}  // namespace wgnls
