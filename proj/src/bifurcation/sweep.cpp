#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wgnls/bifurcation.hpp"
#include "wgnls/error.hpp"
#include "wgnls/euclidean.hpp"
#include "wgnls/parallel.hpp"

namespace wgnls {

namespace {

SweepPoint solve_point(double lambda, const ModelParams& p, const BifurcationConfig& cfg) {
  SweepPoint pt;
  pt.lambda = lambda;
  try {
    const Grid g = make_grid(p.d, cfg.Lx, cfg.Nx, cfg.Ny);
    const GroundStateSolution s = minimize_mc(1.0, lambda, p, g, cfg.solver);
    pt.m = s.m;
    pt.grady_fraction = s.grady_fraction;
    const double gy = lambda * s.report.grady_sq;
    pt.y_share = gy / (s.report.gradx_sq + gy);
    pt.converged = s.converged;
    pt.branch = s.branch;
    pt.status = s.status;
  } catch (const Error& e) {
    pt.status = e.what();
  }
  return pt;
}

std::string describe(const SweepPoint& pt, double reference) {
  std::ostringstream os;
  os << "lambda=" << pt.lambda << " m=" << pt.m << " reference=" << reference
     << " grady_fraction=" << pt.grady_fraction << " y_share=" << pt.y_share << " branch=" << pt.branch
     << " status=" << pt.status;
  return os.str();
}

Regime checked(const SweepPoint& pt, double reference, const BifurcationConfig& cfg) {
  if (!pt.converged) throw BracketError("find_lambda_star: solve did not converge: " + describe(pt, reference));
  const Classification k = classify(pt, reference, cfg);
  if (!k.agree())
    throw BracketError("find_lambda_star: energy and shape classifiers disagree: " + describe(pt, reference));
  return k.energy;
}

}  // namespace

std::vector<SweepPoint> sweep_m1_lambda(const std::vector<double>& lambdas, const ModelParams& p,
                                        const BifurcationConfig& cfg) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0) || !std::isfinite(lambdas[i]))
      throw InvalidArgument("sweep_m1_lambda: lambda values must be positive");
    if (i > 0 && lambdas[i] < lambdas[i - 1]) throw InvalidArgument("sweep_m1_lambda: lambda list must be sorted");
  }
  return parallel_map(lambdas.size(), cfg.workers, [&](std::size_t i) { return solve_point(lambdas[i], p, cfg); });
}

Classification classify(const SweepPoint& pt, double reference, const BifurcationConfig& cfg) {
  Classification k{};
  k.energy = pt.m < reference * (1.0 - 3.0 * cfg.energy_tol) ? Regime::y_dependent : Regime::y_independent;
  k.shape = pt.y_share > cfg.share_tol ? Regime::y_dependent : Regime::y_independent;
  return k;
}

double c_from_lambda(double lambda, const ModelParams& p) {
  if (!(lambda > 0.0)) throw InvalidArgument("c_from_lambda: lambda must be positive");
  return std::pow(lambda, 0.5 * (p.d - 4.0 / p.alpha));
}

double lambda_from_c(double c, const ModelParams& p) {
  if (!(c > 0.0)) throw InvalidArgument("lambda_from_c: c must be positive");
  return std::pow(c, 2.0 / (p.d - 4.0 / p.alpha));
}

Interval c_star_from_lambda(const Interval& lambda_star, const ModelParams& p) {
  if (!(lambda_star.lo > 0.0) || !(lambda_star.lo < lambda_star.hi))
    throw InvalidArgument("c_star_from_lambda: need 0 < lo < hi");
  // d > 4/alpha in the intercritical window, so the map is increasing.
  return {c_from_lambda(lambda_star.lo, p), c_from_lambda(lambda_star.hi, p)};
}

BifurcationResult find_lambda_star(const ModelParams& p, const BifurcationConfig& cfg) {
  if (!(cfg.lambda_min > 0.0) || !(cfg.lambda_min < cfg.lambda_max) || cfg.sweep_points < 2)
    throw InvalidArgument("find_lambda_star: need 0 < lambda_min < lambda_max and at least 2 sweep points");
  if (!(cfg.bracket_tol > 0.0)) throw InvalidArgument("find_lambda_star: bracket_tol must be positive");

  BifurcationResult out;
  out.reference = 2.0 * std::numbers::pi * euclidean_reference(0.5 / std::numbers::pi, p).wm;

  std::vector<double> grid(static_cast<std::size_t>(cfg.sweep_points));
  const double ratio = std::log(cfg.lambda_max / cfg.lambda_min) / (cfg.sweep_points - 1);
  for (int i = 0; i < cfg.sweep_points; ++i) grid[static_cast<std::size_t>(i)] = cfg.lambda_min * std::exp(ratio * i);
  grid.back() = cfg.lambda_max;
  out.sweep = sweep_m1_lambda(grid, p, cfg);

  std::vector<Regime> cls;
  for (const auto& pt : out.sweep) cls.push_back(checked(pt, out.reference, cfg));
  std::size_t lo = cls.size();
  for (std::size_t i = 0; i + 1 < cls.size(); ++i)
    if (cls[i] == Regime::y_dependent && cls[i + 1] == Regime::y_independent) {
      lo = i;
      break;
    }
  if (lo == cls.size()) {
    const bool all_dep = std::all_of(cls.begin(), cls.end(), [](Regime r) { return r == Regime::y_dependent; });
    const bool all_ind = std::all_of(cls.begin(), cls.end(), [](Regime r) { return r == Regime::y_independent; });
    if (all_dep)
      throw BracketError("find_lambda_star: every sweep point is y-dependent; raise lambda_max (currently " +
                         std::to_string(cfg.lambda_max) + ")");
    if (all_ind)
      throw BracketError("find_lambda_star: every sweep point is y-independent; lower lambda_min (currently " +
                         std::to_string(cfg.lambda_min) + ")");
    throw BracketError("find_lambda_star: no y-dependent to y-independent transition in the sweep");
  }

  SweepPoint a = out.sweep[lo], b = out.sweep[lo + 1];
  for (int k = 0; b.lambda / a.lambda - 1.0 > cfg.bracket_tol; ++k) {
    if (k >= cfg.max_bisections) throw BracketError("find_lambda_star: bisection budget exhausted");
    const double mid = std::sqrt(a.lambda * b.lambda);
    SweepPoint pt = solve_point(mid, p, cfg);
    out.sweep.push_back(pt);
    (checked(pt, out.reference, cfg) == Regime::y_dependent ? a : b) = pt;
  }
  std::sort(out.sweep.begin(), out.sweep.end(),
            [](const SweepPoint& x, const SweepPoint& y) { return x.lambda < y.lambda; });
  out.lower = a;
  out.upper = b;
  out.lambda_star = {a.lambda, b.lambda};
  out.c_star = c_star_from_lambda(out.lambda_star, p);
  return out;
}

}  // namespace wgnls
