#include "wgnls/euclidean.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "wgnls/error.hpp"
#include "wgnls/spectral.hpp"

namespace wgnls {

namespace {

double sech(double z) { return 1.0 / std::cosh(z); }

double amplitude(double omega, const ModelParams& p) {
  return std::pow(0.5 * (p.alpha + 2.0) * omega, 1.0 / p.alpha);
}

// Integral over R of an even integrand given on [0, inf).
template <class F>
double even_integral(F f) {
  boost::math::quadrature::exp_sinh<double> q;
  return 2.0 * q.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

struct SolitonNorms {
  double mass, gradx_sq, pot;
};

SolitonNorms soliton_norms(double omega, const ModelParams& p) {
  const double a = p.alpha;
  const double amp = amplitude(omega, p);
  const double k = 0.5 * a * std::sqrt(omega);
  SolitonNorms s;
  s.mass = amp * amp * even_integral([&](double x) { return std::pow(sech(k * x), 4.0 / a); });
  s.gradx_sq = amp * amp * omega * even_integral([&](double x) {
                 const double z = k * x;
                 const double th = std::tanh(z);
                 return std::pow(sech(z), 4.0 / a) * th * th;
               });
  s.pot = std::pow(amp, a + 2.0) * even_integral([&](double x) { return std::pow(sech(k * x), 2.0 * (a + 2.0) / a); });
  return s;
}

}  // namespace

double soliton_profile(double x, double omega, const ModelParams& p) {
  return amplitude(omega, p) * std::pow(sech(0.5 * p.alpha * std::sqrt(omega) * x), 2.0 / p.alpha);
}

Field soliton_field(const Grid& g, double omega, const ModelParams& p) {
  if (g.d() != 1) throw InvalidArgument("soliton_field: closed form exists for d = 1 only");
  return Field::sample(g, [&](double x, double, double) { return cplx(soliton_profile(x, omega, p)); });
}

Field EuclideanReference::embed(const Grid& g, const ModelParams& p) const {
  if (g.d() != d) throw InvalidArgument("EuclideanReference::embed: dimension mismatch");
  if (d == 1) return soliton_field(g, omega, p);
  const Grid& pg = *profile_grid;
  const Grid src = make_grid(2, pg.Lx(), pg.Nx(), g.Ny());
  std::vector<cplx> v(src.size());
  for (std::size_t i = 0; i < src.nx_total(); ++i)
    for (std::size_t k = 0; k < src.Ny(); ++k) v[i * src.Ny() + k] = profile[i];
  return regrid(Field(src, std::move(v)), g);
}

EuclideanReference euclidean_reference(double c, const ModelParams& p, const Grid* d2_grid,
                                       const SolverConfig& cfg) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("euclidean_reference: c must be positive");
  EuclideanReference ref;
  ref.d = p.d;
  ref.c = c;
  if (p.d == 1) {
    // mass(omega) is a strictly monotone power of omega; bracket in log omega.
    auto f = [&](double lw) { return std::log(soliton_norms(std::exp(lw), p).mass / c); };
    double lo = -40.0, hi = 40.0;
    if (f(lo) * f(hi) > 0) throw BracketError("euclidean_reference: mass(omega) = c not bracketed");
    std::uintmax_t iters = 200;
    const auto tol = boost::math::tools::eps_tolerance<double>(52);
    const auto br = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
    ref.omega = std::exp(0.5 * (br.first + br.second));
    const auto s = soliton_norms(ref.omega, p);
    ref.gradx_sq = s.gradx_sq;
    ref.pot = s.pot;
    ref.semivirial = s.gradx_sq - p.k_coeff() * s.pot;
    ref.wm = 0.5 * s.gradx_sq - s.pot / (p.alpha + 2.0);
    return ref;
  }
  // d = 2: y-independent solve at waveguide mass 2 pi c.
  SolverConfig sc = cfg;
  sc.init = InitMode::symmetric;
  sc.initial.reset();
  Grid g = d2_grid ? *d2_grid : make_grid(2, 10.0, 128, 8);
  if (!d2_grid) sc.auto_domain = true;
  const auto sol = minimize_mc(2.0 * std::numbers::pi * c, 1.0, p, g, sc);
  if (!sol.converged) throw Error("euclidean_reference: reference solve did not converge: " + sol.status);
  const double tp = 2.0 * std::numbers::pi;
  ref.omega = sol.beta;
  ref.wm = sol.m / tp;
  ref.gradx_sq = sol.report.gradx_sq / tp;
  ref.pot = sol.report.pot / tp;
  ref.semivirial = sol.report.semivirial / tp;
  const Grid& sg = sol.u.grid();
  ref.profile_grid = sg;
  ref.profile.resize(sg.nx_total());
  for (std::size_t i = 0; i < sg.nx_total(); ++i) ref.profile[i] = sol.u[i * sg.Ny()].real();
  return ref;
}

EuclideanComparison compare_with_euclidean(const GroundStateSolution& sol, const ModelParams& p) {
  const double tp = 2.0 * std::numbers::pi;
  const Grid& g = sol.u.grid();
  const auto ref = euclidean_reference(sol.c / tp, p, p.d == 2 ? &g : nullptr);
  EuclideanComparison cmp;
  cmp.reference = tp * ref.wm;
  cmp.gap = cmp.reference - sol.m;
  cmp.relative_gap = cmp.gap / std::abs(sol.m);
  return cmp;
}

}  // namespace wgnls
