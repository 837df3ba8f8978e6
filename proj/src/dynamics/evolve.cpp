#include <cmath>

#include "wgnls/dynamics.hpp"
#include "wgnls/error.hpp"
#include "wgnls/spectral.hpp"

namespace wgnls {

namespace {

// chi on [1, 2] as a polynomial in r = s - 1.
constexpr double q3 = -25.0, q4 = 34.0, q5 = -13.0;

std::vector<cplx> linear_multiplier(const SpectralWorkspace& ws, double tau) {
  const auto xs = ws.xi_sq();
  const auto ks = ws.k_sq();
  std::vector<cplx> m(xs.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::polar(1.0, -tau * (xs[i] + ks[i]));
  return m;
}

// Returns sum |xi|^2 |uh|^2 (unnormalized), which the multiplier leaves intact.
double apply_linear(SpectralWorkspace& ws, std::vector<cplx>& u, std::vector<cplx>& uh, const std::vector<cplx>& mult) {
  ws.forward(u, uh);
  const auto xs = ws.xi_sq();
  const auto ks = ws.k_sq();
  double g = 0.0;
  for (std::size_t i = 0; i < uh.size(); ++i) {
    g += (xs[i] + ks[i]) * std::norm(uh[i]);
    uh[i] *= mult[i];
  }
  ws.backward(uh, u);
  return g;
}

// Returns false when the phase overflows.
bool apply_nonlinear(std::vector<cplx>& u, double dt, const ModelParams& p) {
  for (auto& v : u) {
    const double ph = dt * p.abs_pow(std::norm(v), p.alpha);
    if (!std::isfinite(ph)) return false;
    v *= std::polar(1.0, ph);
  }
  return true;
}

bool finite_sample(const TraceSample& s) {
  return std::isfinite(s.M) && std::isfinite(s.H) && std::isfinite(s.gradnorm_sq) && std::isfinite(s.V);
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::global_scattering_consistent: return "global_scattering_consistent";
    case Outcome::blowup_detected: return "blowup_detected";
    case Outcome::undetermined: return "undetermined";
  }
  return "undetermined";
}

double chi(double s) {
  s = std::abs(s);
  if (s <= 1.0) return s * s;
  if (s >= 2.0) return 0.0;
  const double r = s - 1.0;
  return 1.0 + r * (2.0 + r * (1.0 + r * (q3 + r * (q4 + r * q5))));
}

double chi_d1(double s) {
  const double sg = s < 0 ? -1.0 : 1.0;
  s = std::abs(s);
  if (s <= 1.0) return sg * 2.0 * s;
  if (s >= 2.0) return 0.0;
  const double r = s - 1.0;
  return sg * (2.0 + r * (2.0 + r * (3.0 * q3 + r * (4.0 * q4 + r * 5.0 * q5))));
}

double chi_d2(double s) {
  s = std::abs(s);
  if (s <= 1.0) return 2.0;
  if (s >= 2.0) return 0.0;
  const double r = s - 1.0;
  return 2.0 + r * (6.0 * q3 + r * (12.0 * q4 + r * 20.0 * q5));
}

double chi_d3(double s) {
  const double sg = s < 0 ? -1.0 : 1.0;
  s = std::abs(s);
  if (s <= 1.0 || s >= 2.0) return 0.0;
  const double r = s - 1.0;
  return sg * (6.0 * q3 + r * (24.0 * q4 + r * 60.0 * q5));
}

Field strang_step(const Field& u, double dt, const ModelParams& p) {
  if (u.grid().d() != p.d) throw InvalidArgument("strang_step: field dimension does not match ModelParams.d");
  auto ws = workspace_for(u.grid());
  const auto half = linear_multiplier(*ws, 0.5 * dt);
  std::vector<cplx> v(u.values().begin(), u.values().end()), vh(v.size());
  apply_linear(*ws, v, vh, half);
  if (!apply_nonlinear(v, dt, p)) throw Error("strang_step: nonlinear phase overflow");
  apply_linear(*ws, v, vh, half);
  return Field(u.grid(), std::move(v));
}

EvolutionTrace evolve(const Field& u0, const ModelParams& p, const EvolutionConfig& cfg) {
  const Grid& g = u0.grid();
  if (g.d() != p.d) throw InvalidArgument("evolve: field dimension does not match ModelParams.d");
  if (!(cfg.dt > 0.0)) throw InvalidArgument("evolve: dt must be positive");
  if (!(cfg.t_end >= 0.0)) throw InvalidArgument("evolve: t_end must be non-negative");
  if (!(cfg.R > 0.0) || !(cfg.R < g.Lx())) throw InvalidArgument("evolve: need 0 < R < Lx");
  if (cfg.record_every < 1) throw InvalidArgument("evolve: record_every must be at least 1");

  auto ws = workspace_for(g);
  const auto half = linear_multiplier(*ws, 0.5 * cfg.dt);
  const auto full = linear_multiplier(*ws, cfg.dt);
  std::vector<cplx> u(u0.values().begin(), u0.values().end()), uh(u.size());

  EvolutionTrace tr;
  const TraceSample s0 = measure(u0, 0.0, cfg.R, p);
  tr.samples.push_back(s0);
  const long nsteps = std::lround(cfg.t_end / cfg.dt);
  const double escale = 0.5 * s0.gradnorm_sq + s0.pot / (p.alpha + 2.0);

  if (s0.M == 0.0) {
    // Zero data stays zero.
    for (long s = cfg.record_every; s <= nsteps; s += cfg.record_every) {
      TraceSample z;
      z.t = static_cast<double>(s) * cfg.dt;
      tr.samples.push_back(z);
    }
    tr.steps = static_cast<int>(nsteps);
    tr.classification = Outcome::global_scattering_consistent;
    tr.reason = "zero data";
    tr.final_field = u0;
    return tr;
  }

  auto V_concave = [&] {
    const auto& sm = tr.samples;
    if (sm.size() < 3) return false;
    for (std::size_t i = 1; i + 1 < sm.size(); ++i)
      if (!(sm[i + 1].V - 2.0 * sm[i].V + sm[i - 1].V < 0.0)) return false;
    return true;
  };
  auto stop_unstable = [&](const std::string& why) {
    tr.classification = V_concave() ? Outcome::blowup_detected : Outcome::undetermined;
    tr.reason = why + (tr.classification == Outcome::blowup_detected ? " with concave V" : " without concave V");
  };

  if (nsteps > 0) apply_linear(*ws, u, uh, half);
  // The gradient norm falls out of every linear sub-step, so growth is
  // caught between records.
  const double gscale = g.cell() / static_cast<double>(g.size());
  const double glimit = cfg.blowup_grad_factor * s0.gradnorm_sq;
  auto grad_blowup = [&](double graw) {
    if (!(graw * gscale > glimit)) return false;
    stop_unstable("gradient norm grew by " + std::to_string(graw * gscale / s0.gradnorm_sq));
    return true;
  };
  bool stopped = false;
  long s = 1;
  for (; s <= nsteps; ++s) {
    if (!apply_nonlinear(u, cfg.dt, p)) {
      stop_unstable("nonlinear phase overflow");
      stopped = true;
      break;
    }
    const bool record = s % cfg.record_every == 0 || s == nsteps;
    const bool ckpt = cfg.checkpoint && cfg.checkpoint_every > 0 && s % cfg.checkpoint_every == 0;
    if (!record && !ckpt) {
      if (grad_blowup(apply_linear(*ws, u, uh, full))) {
        stopped = true;
        break;
      }
      continue;
    }
    if (grad_blowup(apply_linear(*ws, u, uh, half))) {
      stopped = true;
      break;
    }
    const double t = static_cast<double>(s) * cfg.dt;
    const Field f = adopt_values(g, u);
    if (ckpt) cfg.checkpoint(t, f);
    if (record) {
      const TraceSample smp = measure(f, t, cfg.R, p);
      if (!finite_sample(smp)) {
        stop_unstable("non-finite field");
        stopped = true;
        break;
      }
      tr.samples.push_back(smp);
      if (smp.edge_fraction > cfg.leak_tol)
        throw MassLeakError("evolve: mass fraction " + std::to_string(smp.edge_fraction) +
                                " reached the box edge at t = " + std::to_string(t),
                            smp.edge_fraction);
      if (smp.gradnorm_sq > cfg.blowup_grad_factor * s0.gradnorm_sq) {
        stop_unstable("gradient norm grew by " + std::to_string(smp.gradnorm_sq / s0.gradnorm_sq));
        stopped = true;
        break;
      }
      if (std::abs(smp.H - s0.H) > cfg.energy_fail_tol * escale) {
        stop_unstable("energy drift beyond the stability tolerance");
        stopped = true;
        break;
      }
    }
    if (s < nsteps) apply_linear(*ws, u, uh, half);
  }
  tr.steps = static_cast<int>(std::min(s, nsteps));
  tr.final_field = adopt_values(g, u);
  if (stopped) return tr;

  bool k_pos = true;
  for (const auto& smp : tr.samples) k_pos = k_pos && smp.K > 0.0;
  const bool decayed = tr.samples.back().pot < cfg.scatter_pot_factor * s0.pot;
  if (k_pos && decayed) {
    tr.classification = Outcome::global_scattering_consistent;
    tr.reason = "K > 0 throughout and potential decayed";
  } else {
    tr.classification = Outcome::undetermined;
    tr.reason = !k_pos ? "K changed sign" : "potential did not decay below the threshold";
  }
  return tr;
}

}  // namespace wgnls
