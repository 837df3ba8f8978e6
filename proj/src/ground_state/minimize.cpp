#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "wgnls/error.hpp"
#include "wgnls/ground_state.hpp"
#include "wgnls/rng.hpp"
#include "wgnls/spectral.hpp"

namespace wgnls {

namespace {

using Profile = std::function<cplx(double, double, double)>;

struct Problem {
  double c;
  double lambda;
  ModelParams p;
  bool symmetric;
};

struct DescentResult {
  std::vector<cplx> u;
  int iterations = 0;
  std::string stop;  // "gradient", "stall", "line-search", "max-iters", "leak", "drift"
  double leak_ts = 1.0;
  std::vector<double> energy, mass;
};

double dot_re(std::span<const cplx> a, std::span<const cplx> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  return s;
}

double sq_norm(std::span<const cplx> a) { return dot_re(a, a); }

// Zero every mode with k != 0 (layout: y fastest).
void keep_k0(std::vector<cplx>& vh, std::size_t ny) {
  for (std::size_t i = 0; i < vh.size(); ++i)
    if (i % ny != 0) vh[i] = 0.0;
}

// Energy along the fibre through u, maximized in t.
struct Fibre {
  double energy, ts;
};

Fibre fibre(double gx, double gy, double pot, const Problem& pr) {
  const double ts = tstar(gx, pot, pr.p);
  const double e = 0.5 * pr.lambda * gy + 0.5 * ts * ts * gx -
                   std::pow(ts, pr.p.pot_exponent()) * pot / (pr.p.alpha + 2.0);
  return {e, ts};
}

DescentResult descend(const Grid& g, std::vector<cplx> u, const Problem& pr, const SolverConfig& cfg) {
  auto ws = workspace_for(g);
  const std::size_t n = g.size();
  const double cell = g.cell();
  const double inv_n = 1.0 / static_cast<double>(n);
  const auto xs = ws->xi_sq();
  const auto ks = ws->k_sq();
  const double a = pr.p.alpha;
  const double pe = pr.p.pot_exponent();
  const double lam = pr.lambda;

  std::vector<cplx> uh(n), nl(n), nh(n), gh(n), r(n), z(n), d(n), dd(n), r_prev(n), d_prev(n);
  std::vector<double> pinv(n);

  auto sync_from_physical = [&] {
    ws->forward(u, uh);
    if (pr.symmetric) {
      keep_k0(uh, g.Ny());
      ws->backward(uh, u);
    }
  };
  auto normalize = [&] {
    const double m = sq_norm(u) * cell;
    const double s = std::sqrt(pr.c / m);
    for (auto& v : u) v *= s;
    for (auto& v : uh) v *= s;
  };
  auto pot_of = [&](std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& q : v) s += pr.p.abs_pow(std::norm(q), a + 2.0);
    return s * cell;
  };

  sync_from_physical();
  normalize();

  DescentResult out;
  double tau = cfg.step0;
  bool have_prev = false;
  double rz_prev = 0.0;
  int stall = 0;
  int since_refresh = 0;
  int reprojections = 0;
  out.stop = "max-iters";

  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    if (++since_refresh >= 50) {
      sync_from_physical();
      since_refresh = 0;
    }
    double m = 0.0, gx = 0.0, gy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double q = std::norm(uh[i]);
      m += q;
      gx += xs[i] * q;
      gy += ks[i] * q;
    }
    const double fs = cell * inv_n;
    m *= fs;
    gx *= fs;
    gy *= fs;
    const double pot = pot_of(u);
    const Fibre fb = fibre(gx, gy, pot, pr);
    out.energy.push_back(fb.energy);
    out.mass.push_back(sq_norm(u) * cell);

    // Keep the iterate close to K = 0 so the fibre stays well resolved.
    if (std::abs(std::log(fb.ts)) > 0.05) {
      // Steady drift off K = 0 means the grid cannot resolve the iterate.
      if (++reprojections > 50) {
        out.stop = "drift";
        break;
      }
      Field moved = Field::zeros(g);
      try {
        moved = resample_scale(adopt_values(g, u), fb.ts, cfg.leak_tol);
      } catch (const MassLeakError&) {
        out.stop = "leak";
        out.leak_ts = fb.ts;
        break;
      }
      u.assign(moved.values().begin(), moved.values().end());
      sync_from_physical();
      normalize();
      have_prev = false;
      continue;
    }

    const double t2 = fb.ts * fb.ts;
    const double tp = std::pow(fb.ts, pe);
    for (std::size_t i = 0; i < n; ++i) nl[i] = pr.p.abs_pow(std::norm(u[i]), a) * u[i];
    ws->forward(nl, nh);
    for (std::size_t i = 0; i < n; ++i) gh[i] = (t2 * xs[i] + lam * ks[i]) * uh[i] - tp * nh[i];
    if (pr.symmetric) keep_k0(gh, g.Ny());

    const double uu = sq_norm(uh);
    const double mu = dot_re(gh, uh) / uu;
    double lin = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = gh[i] - mu * uh[i];
      lin += std::norm((t2 * xs[i] + lam * ks[i] + std::abs(mu)) * uh[i]);
    }
    const double scale = std::sqrt(lin) + tp * std::sqrt(sq_norm(nh));
    const double gnorm = std::sqrt(sq_norm(r)) / scale;
    if (gnorm < cfg.grad_tol) {
      out.stop = "gradient";
      break;
    }

    // Sobolev preconditioner; sigma tracks the current frequency estimate.
    const double sigma = std::max(-mu, 0.25 * (t2 * gx + lam * gy) / m);
    for (std::size_t i = 0; i < n; ++i) pinv[i] = 1.0 / (sigma + t2 * xs[i] + lam * ks[i]);
    double zg_u = 0.0, zu_u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      zg_u += pinv[i] * (gh[i].real() * uh[i].real() + gh[i].imag() * uh[i].imag());
      zu_u += pinv[i] * std::norm(uh[i]);
    }
    const double mu_p = zg_u / zu_u;
    for (std::size_t i = 0; i < n; ++i) z[i] = pinv[i] * (gh[i] - mu_p * uh[i]);
    const double rz = dot_re(r, z);

    bool used_cg = false;
    if (cfg.conjugate && have_prev && rz_prev > 0) {
      const double bpr = std::max(0.0, (rz - dot_re(z, r_prev)) / rz_prev);
      const double pu = dot_re(d_prev, uh) / uu;
      for (std::size_t i = 0; i < n; ++i) d[i] = -z[i] + bpr * (d_prev[i] - pu * uh[i]);
      used_cg = bpr > 0;
    } else {
      for (std::size_t i = 0; i < n; ++i) d[i] = -z[i];
    }
    double slope = dot_re(gh, d) * cell * inv_n;
    if (!(slope < 0)) {
      for (std::size_t i = 0; i < n; ++i) d[i] = -z[i];
      slope = dot_re(gh, d) * cell * inv_n;
      used_cg = false;
    }
    if (!(slope < 0)) {
      out.stop = "stall";
      break;
    }
    ws->backward(d, dd);

    // Backtracking (Armijo) on the mass-renormalized trial point. Trial
    // norms come from linear combinations, so no transform is needed here.
    auto trial_energy = [&](double t, double& s_out) {
      double tm = 0.0, tgx = 0.0, tgy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double q = std::norm(uh[i] + t * d[i]);
        tm += q;
        tgx += xs[i] * q;
        tgy += ks[i] * q;
      }
      const double s2 = pr.c / (tm * cell * inv_n);
      double tpot = 0.0;
      for (std::size_t i = 0; i < n; ++i) tpot += pr.p.abs_pow(std::norm(u[i] + t * dd[i]), a + 2.0);
      tpot *= cell * std::pow(s2, 0.5 * (a + 2.0));
      s_out = std::sqrt(s2);
      return fibre(tgx * cell * inv_n * s2, tgy * cell * inv_n * s2, tpot, pr).energy;
    };
    // The preconditioner matches the Hessian at high wavenumbers, where a
    // step above 1 would amplify grid-scale modes.
    double t = std::min(2.0 * tau, 1.0);
    double s = 1.0, e_new = 0.0;
    bool ok = false;
    while (t > 1e-14) {
      e_new = trial_energy(t, s);
      if (e_new <= fb.energy + 1e-4 * t * slope) {
        ok = true;
        break;
      }
      t *= 0.5;
    }
    if (!ok) {
      if (used_cg) {
        have_prev = false;
        continue;
      }
      out.stop = "line-search";
      break;
    }
    tau = t;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = s * (u[i] + t * dd[i]);
      uh[i] = s * (uh[i] + t * d[i]);
    }
    const double dec = (fb.energy - e_new) / std::max(std::abs(e_new), std::numeric_limits<double>::min());
    stall = dec < cfg.energy_rtol ? stall + 1 : 0;
    r_prev = r;
    d_prev = d;
    rz_prev = rz;
    have_prev = true;
    if (stall >= cfg.stall_window) {
      out.stop = "stall";
      ++it;
      break;
    }
  }
  out.iterations = it;
  if (out.stop == "leak") {
    out.u = std::move(u);
    return out;
  }

  // Final projection onto K = 0.
  for (int pass = 0; pass < 3; ++pass) {
    Field f = adopt_values(g, u);
    const auto rep = evaluate(f, pr.p);
    const double ts = tstar(rep.gradx_sq, rep.pot, pr.p);
    if (std::abs(ts - 1.0) < 1e-14) break;
    try {
      f = resample_scale(f, ts, cfg.leak_tol);
    } catch (const MassLeakError&) {
      out.stop = "leak";
      out.leak_ts = ts;
      break;
    }
    u.assign(f.values().begin(), f.values().end());
    const double s = std::sqrt(pr.c / (sq_norm(u) * cell));
    for (auto& v : u) v *= s;
  }
  out.u = std::move(u);
  return out;
}

// Samples t^{d/2} f(t x, y), normalized to mass c, with t chosen so K = 0.
std::vector<cplx> projected_samples(const Grid& g, const Profile& f, const Problem& pr, double& t) {
  t = 1.0;
  std::vector<cplx> v;
  for (int it = 0; it < 40; ++it) {
    const Field s = Field::sample(g, [&](double x1, double x2, double y) { return f(t * x1, t * x2, y); });
    const auto rep = evaluate(s, pr.p);
    if (!(rep.mass > 0.0)) throw DegenerateFieldError("initial profile vanishes on the grid");
    const double amp = std::sqrt(pr.c / rep.mass);
    const double pot = rep.pot * std::pow(amp, pr.p.alpha + 2.0);
    const double ts = tstar(rep.gradx_sq * amp * amp, pot, pr.p);
    v.assign(s.values().begin(), s.values().end());
    for (auto& q : v) q *= amp;
    if (std::abs(ts - 1.0) < 1e-12) break;
    t *= std::clamp(ts, 0.25, 4.0);
  }
  return v;
}

Profile initial_profile(InitMode mode, double sigma, double blob, const Problem& pr, const SolverConfig& cfg) {
  const int d = pr.p.d;
  // A y-dependent start is no narrower than the blob scale.
  const double width = mode == InitMode::symmetric ? sigma : std::max(sigma, blob);
  auto gauss = [width, d](double x1, double x2) {
    const double r2 = x1 * x1 + (d == 2 ? x2 * x2 : 0.0);
    return std::exp(-0.5 * r2 / (width * width));
  };
  switch (mode) {
    case InitMode::symmetric:
      return [gauss](double x1, double x2, double) { return cplx(gauss(x1, x2)); };
    case InitMode::broken: {
      const CounterRng rng(cfg.seed, 0x62726f6b656eULL);
      const double amp2 = 0.05 * cfg.epsilon * rng.uniform(0);
      const double ph2 = 2.0 * std::numbers::pi * rng.uniform(1);
      const double eps = cfg.epsilon;
      return [gauss, eps, amp2, ph2](double x1, double x2, double y) {
        return cplx(gauss(x1, x2) * (1.0 + eps * std::cos(y) + amp2 * std::cos(2.0 * y + ph2)));
      };
    }
    case InitMode::localized: {
      // Blob of comparable width in x and y; capped so it stays y-dependent.
      const double w = std::min(blob, 1.2);
      const double sx = std::max(blob, 1e-300);
      return [w, sx, d](double x1, double x2, double y) {
        double s = 0.0;
        for (int k = -3; k <= 3; ++k) {
          const double dy = y - std::numbers::pi - 2.0 * std::numbers::pi * k;
          s += std::exp(-0.5 * dy * dy / (w * w));
        }
        const double r2 = x1 * x1 + (d == 2 ? x2 * x2 : 0.0);
        return cplx(std::exp(-0.5 * r2 / (sx * sx)) * s);
      };
    }
    case InitMode::best: break;
  }
  throw InvalidArgument("initial_profile: mode 'best' has no single profile");
}

// Width of a Gaussian blob isotropic in (x, y) with mass c on K = 0; the
// natural scale of y-localized states at small mass.
double blob_width(double c, const ModelParams& p) {
  const double a = p.alpha, d = p.d, pi = std::numbers::pi;
  const double e = (d + 1.0) * a / 2.0 - 2.0;
  const double rhs = a / (a + 2.0) * std::pow(c, 0.5 * a) * std::pow(pi, -(d + 1.0) * a / 4.0) *
                     std::pow(2.0 / (a + 2.0), 0.5 * (d + 1.0));
  return std::pow(rhs, 1.0 / e);
}

Grid with_lx(const Grid& g, double lx) { return make_grid(g.d(), lx, g.Nx(), g.Ny()); }

struct BranchOutcome {
  GroundStateSolution sol;
  bool ok = false;
  std::string error;
};

GroundStateSolution finish(const Grid& g, DescentResult&& dr, const Problem& pr, const SolverConfig& cfg,
                           const std::string& branch) {
  Field u = recenter(adopt_values(g, std::move(dr.u)));
  GroundStateSolution s{u};
  s.c = pr.c;
  s.lambda = pr.lambda;
  s.report = evaluate(u, pr.p);
  s.m = energy_lambda(s.report, pr.lambda, pr.p).energy;
  const auto b = extract_beta(u, pr.lambda, pr.p);
  s.beta = b.beta;
  s.residual_cross = b.residual_cross;
  const auto res = pde_residual(u, s.beta, pr.lambda, pr.p);
  s.residual_pde = res.residual;
  s.residual_scaled = res.scaled;
  s.residual_K = std::abs(s.report.semivirial) / (s.report.gradx_sq + s.report.pot);
  s.grady_fraction = s.report.grady_sq / (s.report.gradx_sq + s.report.grady_sq + s.report.mass);
  s.iterations = dr.iterations;
  s.branch = branch;
  s.energy_history = std::move(dr.energy);
  s.mass_history = std::move(dr.mass);
  const bool beta_pos = s.beta > 1e-8 * s.report.pot / s.report.mass;
  s.converged = dr.stop != "max-iters" && dr.stop != "drift" && s.residual_scaled <= cfg.pde_tol && s.residual_K <= cfg.k_tol && beta_pos;
  s.status = dr.stop;
  if (!s.converged) {
    if (dr.stop == "max-iters") s.status = "iteration cap reached";
    else if (dr.stop == "drift") s.status = "drift off K = 0; grid too coarse";
    else if (s.residual_scaled > cfg.pde_tol) s.status = dr.stop + "; pde residual above tolerance";
    else if (s.residual_K > cfg.k_tol) s.status = dr.stop + "; K residual above tolerance";
    else s.status = dr.stop + "; non-positive beta";
  }
  return s;
}

// One branch, with optional adaptation of Lx to the state's extent.
GroundStateSolution solve_branch(InitMode mode, const Problem& base, const Grid& grid, const SolverConfig& cfg) {
  Problem pr = base;
  pr.symmetric = mode == InitMode::symmetric;
  // The symmetric branch is exactly y-independent; solve it on a coarse y-grid.
  const std::size_t ny = pr.symmetric ? 8 : grid.Ny();
  const double sigma = reference_width(pr.c, pr.p);
  const double blob = pr.symmetric ? 0.0 : blob_width(pr.c, pr.p);
  double lx = cfg.auto_domain ? 20.0 * std::max(sigma, blob) : grid.Lx();
  Grid g = make_grid(grid.d(), lx, grid.Nx(), ny);

  std::vector<cplx> u0;
  if (cfg.initial) {
    const Field& f0 = *cfg.initial;
    if (f0.grid().d() != grid.d()) throw InvalidArgument("initial field dimension mismatch");
    Field f = f0.grid().Ny() == ny ? f0 : Field::zeros(g);
    if (f0.grid().Ny() != ny) {
      // Average over y when moving onto the coarse symmetric grid.
      if (!pr.symmetric) throw InvalidArgument("initial field must share Ny with the grid");
      std::vector<cplx> v(g.size());
      const Grid gm = make_grid(grid.d(), f0.grid().Lx(), f0.grid().Nx(), ny);
      const std::size_t nyo = f0.grid().Ny();
      std::vector<cplx> w(gm.size());
      for (std::size_t i = 0; i < gm.nx_total(); ++i) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < nyo; ++k) acc += f0[i * nyo + k];
        for (std::size_t k = 0; k < ny; ++k) w[i * ny + k] = acc / static_cast<double>(nyo);
      }
      f = Field(gm, std::move(w));
    }
    f = regrid(f, g);
    u0.assign(f.values().begin(), f.values().end());
  } else {
    const Profile prof = initial_profile(mode, sigma, blob, pr, cfg);
    if (cfg.auto_domain) {
      // Stretch the box with the profile: the samples stay put and K = 0 is
      // reached exactly by the change of spacing.
      const Field s = Field::sample(g, prof);
      const auto rep = evaluate(s, pr.p);
      const double amp = std::sqrt(pr.c / rep.mass);
      const double ts = tstar(rep.gradx_sq * amp * amp, rep.pot * std::pow(amp, pr.p.alpha + 2.0), pr.p);
      g = with_lx(g, g.Lx() / ts);
      const double amp2 = amp * std::pow(ts, 0.5 * pr.p.d);
      u0.assign(s.values().begin(), s.values().end());
      for (auto& q : u0) q *= amp2;
    } else {
      double t_rel = 1.0;
      // A profile much wider than the box flattens out and loses its gradient.
      try {
        u0 = projected_samples(g, prof, pr, t_rel);
      } catch (const DegenerateFieldError&) {
        throw MassLeakError("minimize_mc: the state at this mass does not fit in the box; raise Lx or use auto_domain", 1.0);
      }
      const double edge = domain_diagnostics(adopt_values(g, u0)).edge_fraction;
      if (edge > cfg.leak_tol)
        throw MassLeakError("minimize_mc: the state at this mass does not fit in the box; raise Lx or use auto_domain", edge);
    }
  }

  // Far from the core every branch decays like exp(-sqrt(beta)|x|), so the box
  // is sized from beta. Early rounds run a short descent to estimate it.
  DescentResult dr;
  bool settled = false;
  for (int adapt = 0;; ++adapt) {
    const bool last = !cfg.auto_domain || adapt >= cfg.max_domain_adapt;
    SolverConfig rc = cfg;
    bool probing = false;
    if (!last && !settled && adapt < cfg.max_domain_adapt - 1) {
      rc.max_iters = std::min(cfg.max_iters, 400);
      probing = true;
    }
    dr = descend(g, std::move(u0), pr, rc);
    const Field uf = adopt_values(g, dr.u);
    if (dr.stop == "leak" && last)
      throw MassLeakError("minimize_mc: iterate leaves the box while rescaling", domain_diagnostics(uf).edge_fraction);
    if (last) break;
    Grid ng = g;
    if (dr.stop == "leak") {
      ng = with_lx(g, dr.leak_ts > 1.0 ? g.Lx() / dr.leak_ts : g.Lx() * std::max(1.5, 1.5 / dr.leak_ts));
    } else {
      const double beta = extract_beta(uf, pr.lambda, pr.p).beta;
      if (beta > 0.0) {
        const double target = cfg.domain_factor / std::sqrt(beta);
        if (std::abs(std::log(target / g.Lx())) > std::log(1.1)) ng = with_lx(g, target);
      }
    }
    if (ng == g && !(probing && dr.stop == "max-iters")) break;
    settled = ng == g;
    const Field moved = ng == g ? uf : regrid(uf, ng);
    g = ng;
    u0.assign(moved.values().begin(), moved.values().end());
  }
  {
    const auto diag = domain_diagnostics(adopt_values(g, dr.u));
    if (diag.edge_fraction > cfg.leak_tol)
      throw MassLeakError("minimize_mc: minimizer reaches the box boundary (edge mass fraction " +
                              std::to_string(diag.edge_fraction) + ")",
                          diag.edge_fraction);
    GroundStateSolution s = finish(g, std::move(dr), pr, cfg, to_string(mode));
    if (pr.symmetric && ny != grid.Ny()) {
      // Embed the y-constant solution on the requested y-grid.
      const Grid gf = make_grid(grid.d(), g.Lx(), grid.Nx(), grid.Ny());
      std::vector<cplx> v(gf.size());
      for (std::size_t i = 0; i < gf.nx_total(); ++i)
        for (std::size_t k = 0; k < gf.Ny(); ++k) v[i * gf.Ny() + k] = s.u[i * ny];
      s.u = Field(gf, std::move(v));
    }
    return s;
  }
}

}  // namespace

GroundStateSolution minimize_mc(double c, double lambda, const ModelParams& p, const Grid& grid,
                                const SolverConfig& cfg) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("minimize_mc: c must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("minimize_mc: lambda must be positive");
  if (grid.d() != p.d) throw InvalidArgument("minimize_mc: grid dimension does not match ModelParams.d");
  const Problem pr{c, lambda, p, false};
  if (cfg.init != InitMode::best) return solve_branch(cfg.init, pr, grid, cfg);

  std::vector<GroundStateSolution> sols;
  std::string errors;
  for (InitMode m : {InitMode::symmetric, InitMode::broken, InitMode::localized}) {
    try {
      sols.push_back(solve_branch(m, pr, grid, cfg));
    } catch (const MassLeakError& e) {
      errors += to_string(m) + ": " + e.what() + "; ";
    } catch (const DegenerateFieldError& e) {
      errors += to_string(m) + ": " + e.what() + "; ";
    }
  }
  if (sols.empty()) throw MassLeakError("minimize_mc: every branch failed: " + errors, 1.0);
  // Lowest energy wins; near-ties go to the earlier (more symmetric) branch.
  std::size_t best = 0;
  for (std::size_t i = 1; i < sols.size(); ++i) {
    const double ref = sols[best].m;
    const bool better = sols[i].m < ref - cfg.tie_rtol * std::abs(ref);
    if ((better && sols[i].converged) || (!sols[best].converged && sols[i].converged)) best = i;
  }
  return sols[best];
}

}  // namespace wgnls
