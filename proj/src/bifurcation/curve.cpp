#include <cmath>
#include <numbers>

#include "wgnls/bifurcation.hpp"
#include "wgnls/error.hpp"
#include "wgnls/euclidean.hpp"
#include "wgnls/parallel.hpp"

namespace wgnls {

CurveResult mc_curve(const std::vector<double>& cs, const ModelParams& p, const CurveConfig& cfg) {
  if (cs.empty()) throw InvalidArgument("mc_curve: empty mass list");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!(cs[i] > 0.0) || !std::isfinite(cs[i])) throw InvalidArgument("mc_curve: masses must be positive");
    if (i > 0 && !(cs[i] > cs[i - 1])) throw InvalidArgument("mc_curve: masses must be strictly increasing");
  }
  const BifurcationConfig& b = cfg.base;
  const Grid g = make_grid(p.d, b.Lx, b.Nx, b.Ny);
  // Two jobs per knot when the rescaling check runs: (c, 1) and (1, lambda(c)).
  const std::size_t per = cfg.check_rescaling ? 2 : 1;
  const auto sols = parallel_map(cs.size() * per, b.workers, [&](std::size_t j) {
    const double c = cs[j / per];
    if (j % per == 0) return minimize_mc(c, 1.0, p, g, b.solver);
    return minimize_mc(1.0, lambda_from_c(c, p), p, g, b.solver);
  });

  std::vector<CurveKnot> knots;
  std::vector<double> ms, errs;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const GroundStateSolution& s = sols[i * per];
    CurveKnot k;
    k.c = cs[i];
    k.m = s.m;
    k.beta = s.beta;
    k.grady_fraction = s.grady_fraction;
    k.converged = s.converged;
    k.branch = s.branch;
    k.reference = 2.0 * std::numbers::pi * euclidean_reference(cs[i] / (2.0 * std::numbers::pi), p).wm;
    if (cfg.check_rescaling) {
      const GroundStateSolution& r = sols[i * per + 1];
      const double lambda = lambda_from_c(cs[i], p);
      k.m1_lambda = r.m;
      k.rescaling_error = std::abs(k.m - cs[i] / lambda * r.m) / k.m;
    }
    if (!(k.m > 0.0)) throw Error("mc_curve: non-positive energy " + std::to_string(k.m) + " at c = " + std::to_string(k.c));
    if (!knots.empty()) {
      const double prev = knots.back().m;
      if (k.m > prev + 10.0 * b.energy_tol * std::abs(prev))
        throw Error("mc_curve: m rises from " + std::to_string(prev) + " to " + std::to_string(k.m) + " at c = " +
                    std::to_string(k.c) + "; a solve failed");
    }
    ms.push_back(k.m);
    errs.push_back(b.energy_tol * std::abs(k.m));
    knots.push_back(std::move(k));
  }
  return CurveResult{MeiCurve(cs, ms, errs), std::move(knots)};
}

}  // namespace wgnls
