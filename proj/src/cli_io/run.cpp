#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "wgnls/bifurcation.hpp"
#include "wgnls/cli_io.hpp"
#include "wgnls/dynamics.hpp"
#include "wgnls/euclidean.hpp"
#include "wgnls/exponents.hpp"
#include "wgnls/mei.hpp"
#include "wgnls/field_io.hpp"
#include "wgnls/functionals.hpp"
#include "wgnls/ground_state.hpp"
#include "wgnls/parallel.hpp"
#include "wgnls/random_field.hpp"
#include "wgnls/spectral.hpp"

namespace wgnls {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct Output {
  fs::path dir;
  const RunConfig& cfg;
  std::vector<ManifestEntry> manifest;

  bool wants(const std::string& fmt) const {
    for (const auto& f : cfg.output.formats)
      if (f == fmt) return true;
    return false;
  }
  void record(const std::string& name) {
    std::ifstream in(dir / name, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string bytes = ss.str();
    manifest.push_back({name, content_hash(bytes), bytes.size()});
  }
  void text(const std::string& name, const std::string& body) {
    std::ofstream(dir / name, std::ios::binary) << body;
    record(name);
  }
  void field(const std::string& name, const Field& u) {
    if (!wants("field")) return;
    write_field((dir / name).string(), u, cfg.model.alpha.to_double());
    record(name);
  }
  void csv(const std::string& name, const std::string& body) {
    if (wants("csv")) text(name, body);
  }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

ModelParams model_of(const RunConfig& c) { return ModelParams::make(c.model.d, c.model.alpha); }
Grid grid_of(const RunConfig& c) { return make_grid(c.model.d, c.grid.Lx, c.grid.Nx, c.grid.Ny); }

SolverConfig solver_of(const RunConfig& c) {
  SolverConfig s;
  s.step0 = c.solver.step;
  s.max_iters = c.solver.max_iters;
  s.energy_rtol = c.solver.energy_rtol;
  s.grad_tol = c.solver.grad_tol;
  s.pde_tol = c.solver.pde_tol;
  s.k_tol = c.solver.k_tol;
  s.leak_tol = c.solver.leak_tol;
  s.init = init_mode_from_string(c.solver.init);
  s.epsilon = c.solver.epsilon;
  s.auto_domain = c.solver.auto_domain;
  s.seed = c.solver.seed;
  return s;
}

BifurcationConfig bifurcation_of(const RunConfig& c) {
  BifurcationConfig b;
  b.solver = solver_of(c);
  b.solver.auto_domain = true;
  b.Nx = c.grid.Nx;
  b.Ny = c.grid.Ny;
  b.Lx = c.grid.Lx;
  b.lambda_min = c.bifurcation.lambda_min;
  b.lambda_max = c.bifurcation.lambda_max;
  b.sweep_points = c.bifurcation.sweep_points;
  b.bracket_tol = c.bifurcation.bracket_tol;
  b.energy_tol = c.bifurcation.energy_tol;
  b.share_tol = c.bifurcation.share_tol;
  b.workers = c.workers;
  return b;
}

json report_json(const FunctionalReport& r) {
  return {{"mass", r.mass}, {"energy", r.energy}, {"semivirial", r.semivirial}, {"action", r.action},
          {"gradx_sq", r.gradx_sq}, {"grady_sq", r.grady_sq}, {"pot", r.pot}};
}

json solution_json(const GroundStateSolution& s, const ModelParams& p) {
  json j = {{"c", s.c},
            {"lambda", s.lambda},
            {"m", s.m},
            {"beta", s.beta},
            {"residual_pde", s.residual_pde},
            {"residual_scaled", s.residual_scaled},
            {"residual_K", s.residual_K},
            {"residual_cross", s.residual_cross},
            {"grady_fraction", s.grady_fraction},
            {"iterations", s.iterations},
            {"converged", s.converged},
            {"branch", s.branch},
            {"status", s.status},
            {"Lx", s.u.grid().Lx()},
            {"report", report_json(s.report)}};
  if (s.lambda == 1.0) {
    const auto cmp = compare_with_euclidean(s, p);
    j["euclidean_reference"] = cmp.reference;
    j["gap"] = cmp.gap;
    j["relative_gap"] = cmp.relative_gap;
  }
  return j;
}

json exponent_json(const Exponent& e) {
  if (e.is_infinite()) return {{"exact", "inf"}, {"value", "inf"}};
  return {{"exact", e.inv.reciprocal().str()}, {"value", e.value()}};
}

json do_exponents(const RunConfig& c) {
  const ExponentTable t = exponent_table(c.model.d, c.model.alpha);
  return {{"d", t.d},
          {"alpha", t.alpha.str()},
          {"s_alpha", t.s_alpha.str()},
          {"theta", t.theta.str()},
          {"ba", exponent_json(t.ba)},
          {"bb", exponent_json(t.bb)},
          {"br", exponent_json(t.br)},
          {"pair_tilde", {{"q", exponent_json(t.pair_tilde.q)}, {"r", exponent_json(t.pair_tilde.r)}}},
          {"pair_hat", {{"q", exponent_json(t.pair_hat.q)}, {"r", exponent_json(t.pair_hat.r)}}},
          {"case", t.case_index},
          {"identities_hold", t.all_identities()}};
}

json do_ground_state(const RunConfig& c, Output& out) {
  const ModelParams p = model_of(c);
  const GroundStateSolution s = minimize_mc(c.problem.c, c.problem.lambda, p, grid_of(c), solver_of(c));
  out.field("ground_state.wgf", s.u);
  std::string hist = "iteration,energy,mass\n";
  for (std::size_t i = 0; i < s.energy_history.size(); ++i)
    hist += std::to_string(i) + "," + num(s.energy_history[i]) + "," + num(s.mass_history[i]) + "\n";
  out.csv("history.csv", hist);
  return solution_json(s, p);
}

json do_curve(const RunConfig& c, Output& out) {
  const ModelParams p = model_of(c);
  CurveConfig cc;
  cc.base = bifurcation_of(c);
  cc.base.solver = solver_of(c);
  cc.check_rescaling = c.bifurcation.check_rescaling;
  const CurveResult r = mc_curve(c.sweep.values, p, cc);
  std::string csv = "c,m,reference,beta,grady_fraction,converged,m1_lambda,rescaling_error\n";
  json knots = json::array();
  for (const auto& k : r.knots) {
    csv += num(k.c) + "," + num(k.m) + "," + num(k.reference) + "," + num(k.beta) + "," + num(k.grady_fraction) + "," +
           (k.converged ? "true" : "false") + "," + (k.m1_lambda ? num(*k.m1_lambda) : "") + "," +
           (k.rescaling_error ? num(*k.rescaling_error) : "") + "\n";
    json kj = {{"c", k.c}, {"m", k.m}, {"reference", k.reference}, {"beta", k.beta},
               {"grady_fraction", k.grady_fraction}, {"converged", k.converged}, {"branch", k.branch}};
    if (k.rescaling_error) kj["rescaling_error"] = *k.rescaling_error;
    knots.push_back(kj);
  }
  out.csv("curve.csv", csv);

  // D on a 10 x 10 table below the curve, with the band from the solver error.
  std::string mt = "c,h,D,D_lower,D_upper\n";
  const MeiCurve& mc = r.curve;
  if (mc.c().size() >= 2) {
    const double hmax = 0.9 * mc.m().back();
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) {
        const double cv = mc.c_min() + (mc.c_max() - mc.c_min()) * i / 9.0;
        const double h = hmax * j / 9.0;
        const MeiBand b = mei_band(cv, h, mc);
        mt += num(cv) + "," + num(h) + "," + num(b.value) + "," + num(b.lower) + "," + num(b.upper) + "\n";
      }
    out.csv("mei_table.csv", mt);
  }
  return {{"knots", knots}};
}

json do_bifurcation(const RunConfig& c, Output& out) {
  const ModelParams p = model_of(c);
  const BifurcationResult r = find_lambda_star(p, bifurcation_of(c));
  std::string csv = "lambda,m1_lambda,grady_fraction,converged\n";
  for (const auto& s : r.sweep)
    csv += num(s.lambda) + "," + num(s.m) + "," + num(s.grady_fraction) + "," + (s.converged ? "true" : "false") + "\n";
  out.csv("bifurcation_sweep.csv", csv);
  const RhoCertificate rho = rho_certificate(p);
  return {{"lambda_star", {r.lambda_star.lo, r.lambda_star.hi}},
          {"c_star", {r.c_star.lo, r.c_star.hi}},
          {"reference", r.reference},
          {"lower", {{"lambda", r.lower.lambda}, {"m", r.lower.m}, {"grady_fraction", r.lower.grady_fraction}}},
          {"upper", {{"lambda", r.upper.lambda}, {"m", r.upper.m}, {"grady_fraction", r.upper.grady_fraction}}},
          {"rho_certificate",
           {{"a", rho.a}, {"l2_sq", rho.l2_sq}, {"lp_pow", rho.lp_pow}, {"K_psi", rho.K_psi},
            {"psi_energy", rho.psi_energy}, {"reference", rho.reference}, {"margin", rho.margin}}}};
}

Field initial_data(const RunConfig& c, const ModelParams& p) {
  const auto& e = c.evolution;
  const Grid g = grid_of(c);
  if (e.initial == "file") {
    const StoredField sf = read_field(e.file);
    if (!(sf.field.grid() == g)) return regrid(sf.field, make_grid(g.d(), g.Lx(), g.Nx(), sf.field.grid().Ny()));
    return sf.field;
  }
  if (e.initial == "soliton") return soliton_field(g, e.omega, p).scaled(e.amplitude);
  const double w = e.width, a = e.amplitude;
  return Field::sample(g, [&](double x1, double x2, double) {
    return cplx(a * std::exp(-0.5 * (x1 * x1 + x2 * x2) / (w * w)));
  });
}

json do_evolve(const RunConfig& c, Output& out) {
  const ModelParams p = model_of(c);
  const Field u0 = initial_data(c, p);
  const auto& e = c.evolution;
  EvolutionConfig ec;
  ec.dt = e.dt;
  ec.t_end = e.t_end;
  ec.record_every = e.record_every;
  ec.R = e.R;
  ec.blowup_grad_factor = e.blowup_grad_factor;
  ec.scatter_pot_factor = e.scatter_pot_factor;
  ec.leak_tol = e.leak_tol;
  ec.checkpoint_every = e.checkpoint_every;
  int nck = 0;
  ec.checkpoint = [&](double, const Field& f) { out.field("checkpoint_" + std::to_string(nck++) + ".wgf", f); };
  const EvolutionTrace tr = evolve(u0, p, ec);

  std::string csv = "t,M,H,K,pot,gradnorm_sq,V,dV,zR,dzR,AR\n";
  for (const auto& s : tr.samples)
    csv += num(s.t) + "," + num(s.M) + "," + num(s.H) + "," + num(s.K) + "," + num(s.pot) + "," + num(s.gradnorm_sq) +
           "," + num(s.V) + "," + num(s.dV) + "," + num(s.zR) + "," + num(s.dzR) + "," + num(s.AR) + "\n";
  out.csv("trace.csv", csv);
  if (tr.final_field) out.field("final.wgf", *tr.final_field);

  const TraceSample& s0 = tr.samples.front();
  json j = {{"classification", to_string(tr.classification)},
            {"reason", tr.reason},
            {"steps", tr.steps},
            {"t_final", tr.samples.back().t},
            {"mass_drift", s0.M > 0 ? std::abs(tr.samples.back().M - s0.M) / s0.M : 0.0},
            {"energy_drift", s0.H != 0 ? std::abs(tr.samples.back().H - s0.H) / std::abs(s0.H) : 0.0},
            {"initial", {{"M", s0.M}, {"H", s0.H}, {"K", s0.K}, {"pot", s0.pot}}}};
  if (tr.samples.size() >= 5) {
    const VirialCheck v = virial_series(tr);
    j["virial"] = {{"max_rel_V", v.max_rel_V}, {"max_rel_z", v.max_rel_z}, {"V_concave", v.V_concave}};
    // First half of the run, before any collapse steepens the profile.
    const double t_half = 0.5 * tr.samples.back().t;
    std::size_t early = 0;
    for (const auto& s : tr.samples) early += s.t <= t_half;
    if (early >= 5) {
      const VirialCheck w = virial_series(tr, t_half);
      j["virial_first_half"] = {{"max_rel_V", w.max_rel_V}, {"max_rel_z", w.max_rel_z}, {"V_concave", w.V_concave}};
    }
  }
  if (s0.M > 0) {
    double m = e.m_threshold;
    if (!(m > 0)) {
      SolverConfig sc = solver_of(c);
      sc.auto_domain = true;
      m = minimize_mc(s0.M, 1.0, p, grid_of(c), sc).m;
    }
    j["m_threshold"] = m;
    if (s0.H < m && s0.K < 0) j["energy_trapping"] = energy_trapping_check(u0, m, p);
  }
  return j;
}

json do_verify(const RunConfig& c) {
  const ModelParams p = model_of(c);
  const Grid g = grid_of(c);
  const int n = c.verify.samples;
  struct Row {
    bool ok = false;
    double k_rel = 0, k_half = 0, k_double = 0, h_gap = 0, gn = 0;
  };
  // t* of a raw sample spans decades; the amplitude is reset so that t* lies
  // in [1, 2] and the probes t*/2, 2t* stay inside the box. The GN ratio does
  // not see the amplitude.
  const double e = p.alpha / (p.pot_exponent() - 2.0);
  const auto rows = parallel_map(static_cast<std::size_t>(n), c.workers, [&](std::size_t i) {
    Row row;
    try {
      const Field raw = random_smooth_field(g, c.solver.seed, i);
      const double target = 1.0 + static_cast<double>(i % 97) / 97.0;
      const Field u = raw.scaled(std::pow(tstar(raw, p) / target, 1.0 / e));
      const double ts = tstar(u, p);
      const auto at = [&](double t) { return evaluate(scale_ut(u, t), p); };
      const FunctionalReport r = at(ts), lo = at(0.5 * ts), hi = at(2.0 * ts);
      row = {true, std::abs(r.semivirial) / (r.gradx_sq + r.pot), lo.semivirial, hi.semivirial,
             std::min(r.energy - lo.energy, r.energy - hi.energy), gn_ratio(u, p)};
    } catch (const Error&) {
    }
    return row;
  });
  double k_max = 0.0, gn_max = 0.0, gap_min = INFINITY;
  int sign_ok = 0, failed = 0;
  for (const auto& r : rows) {
    if (!r.ok) {
      ++failed;
      continue;
    }
    k_max = std::max(k_max, r.k_rel);
    gn_max = std::max(gn_max, r.gn);
    gap_min = std::min(gap_min, r.h_gap);
    sign_ok += r.k_half > 0 && r.k_double < 0;
  }
  const RhoCertificate rho = rho_certificate(p);
  return {{"samples", n},
          {"failed", failed},
          {"projection", {{"max_rel_K", k_max}, {"sign_pattern_ok", sign_ok}, {"min_energy_gap", gap_min}}},
          {"gn_ratio_max", gn_max},
          {"exponent_identities", exponent_table(p).all_identities()},
          {"rho_margin", rho.margin}};
}

json do_sweep(const RunConfig& c, Output& out) {
  const ModelParams p = model_of(c);
  const Grid g = grid_of(c);
  const SolverConfig sc = solver_of(c);
  const bool lam = c.sweep.axis == "lambda";
  struct Row {
    bool ok = false;
    std::string error;
    double m = 0, beta = 0, gyf = 0;
    bool converged = false;
  };
  const auto rows = parallel_map(c.sweep.values.size(), c.workers, [&](std::size_t i) {
    Row r;
    const double v = c.sweep.values[i];
    try {
      const GroundStateSolution s = lam ? minimize_mc(1.0, v, p, g, sc) : minimize_mc(v, c.problem.lambda, p, g, sc);
      r.ok = true;
      r.m = s.m;
      r.beta = s.beta;
      r.gyf = s.grady_fraction;
      r.converged = s.converged;
    } catch (const Error& e) {
      r.error = e.what();
    }
    return r;
  });
  std::string csv = lam ? "lambda,m1_lambda,grady_fraction,converged\n" : "c,m,beta,grady_fraction,converged\n";
  json pts = json::array();
  bool any = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    const double v = c.sweep.values[i];
    any = any || r.ok;
    if (lam)
      csv += num(v) + "," + num(r.m) + "," + num(r.gyf) + "," + (r.converged ? "true" : "false") + "\n";
    else
      csv += num(v) + "," + num(r.m) + "," + num(r.beta) + "," + num(r.gyf) + "," + (r.converged ? "true" : "false") +
             "\n";
    json pj = {{c.sweep.axis, v}, {"m", r.m}, {"grady_fraction", r.gyf}, {"converged", r.converged}};
    if (!r.ok) pj["error"] = r.error;
    pts.push_back(pj);
  }
  if (!any) throw Error("sweep: every point failed");
  out.csv("sweep.csv", csv);
  return {{"axis", c.sweep.axis}, {"points", pts}};
}

ResultEnvelope execute(const RunConfig& cfg, bool as_sweep) {
  const auto problems = validate(cfg);
  if (!problems.empty()) throw ConfigError(problems);
  const auto t0 = std::chrono::steady_clock::now();
  Output out{cfg.output.directory, cfg, {}};
  fs::create_directories(out.dir);

  ResultEnvelope env;
  env.config = cfg;
  const std::string yaml = serialize_config(cfg);
  env.config_hash = content_hash(yaml);
  out.text("config.yaml", yaml);

  const std::string& cmd = cfg.command;
  if (as_sweep) env.outputs = do_sweep(cfg, out);
  else if (cmd == "exponents") env.outputs = do_exponents(cfg);
  else if (cmd == "ground-state") env.outputs = do_ground_state(cfg, out);
  else if (cmd == "curve") env.outputs = do_curve(cfg, out);
  else if (cmd == "bifurcation") env.outputs = do_bifurcation(cfg, out);
  else if (cmd == "evolve") env.outputs = do_evolve(cfg, out);
  else env.outputs = do_verify(cfg);

  if (out.wants("json")) out.text("result.json", env.outputs.dump(2) + "\n");
  env.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  env.manifest = out.manifest;
  std::ofstream(out.dir / "manifest.json") << env.to_json().dump(2) << "\n";
  return env;
}

}  // namespace

json ResultEnvelope::to_json() const {
  json files = json::array();
  for (const auto& m : manifest) files.push_back({{"path", m.path}, {"sha1", m.sha1}, {"bytes", m.bytes}});
  return {{"command", config.command}, {"config", serialize_config(config)}, {"config_hash", config_hash},
          {"seconds", seconds}, {"outputs", outputs}, {"files", files}};
}

ResultEnvelope run(const RunConfig& cfg) {
  return execute(cfg, cfg.command == "ground-state" && cfg.sweep.axis != "none");
}

ResultEnvelope sweep(const RunConfig& cfg) {
  if (cfg.sweep.axis == "none") throw ConfigError({"cli_io: sweep needs sweep.axis c or lambda"});
  return execute(cfg, true);
}

}  // namespace wgnls
