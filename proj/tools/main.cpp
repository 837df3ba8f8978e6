// Command-line front end: each subcommand fills a RunConfig (from --config,
// then flag overrides) and hands it to run().
#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "wgnls/cli_io.hpp"
#include "wgnls/error.hpp"

namespace {

struct Overrides {
  std::optional<int> d;
  std::optional<std::string> alpha;
  std::optional<double> Lx, c, lambda, pde_tol, grad_tol, k_tol;
  std::optional<std::size_t> Nx, Ny;
  std::optional<int> max_iters;
  std::optional<std::string> init;
  std::optional<bool> auto_domain;
  std::vector<double> values;
  std::optional<double> dt, t_end, R;
  std::optional<std::string> initial, file;
  std::optional<double> omega, amplitude, width;
  std::optional<int> samples;
};

void add_model_flags(CLI::App* app, Overrides& o) {
  app->add_option("--d", o.d, "dimension of the Euclidean factor");
  app->add_option("--alpha", o.alpha, "nonlinearity exponent (decimal or p/q)");
}

void add_grid_flags(CLI::App* app, Overrides& o) {
  app->add_option("--Lx", o.Lx, "half-width of the x-box");
  app->add_option("--Nx", o.Nx, "x-points per direction");
  app->add_option("--Ny", o.Ny, "y-points");
}

void add_solver_flags(CLI::App* app, Overrides& o) {
  app->add_option("--init", o.init, "best, symmetric, broken or localized");
  app->add_option("--max-iters", o.max_iters);
  app->add_option("--pde-tol", o.pde_tol);
  app->add_option("--grad-tol", o.grad_tol);
  app->add_option("--k-tol", o.k_tol);
  app->add_flag("--auto-domain,!--fixed-domain", o.auto_domain, "size the box from the decay rate");
}

void apply(const Overrides& o, wgnls::RunConfig& c) {
  if (o.d) c.model.d = *o.d;
  if (o.alpha) {
    const auto s = *o.alpha;
    const auto slash = s.find('/');
    c.model.alpha = slash == std::string::npos ? wgnls::Rational::from_double(std::stod(s))
                                               : wgnls::Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  }
  if (o.Lx) c.grid.Lx = *o.Lx;
  if (o.Nx) c.grid.Nx = *o.Nx;
  if (o.Ny) c.grid.Ny = *o.Ny;
  if (o.c) c.problem.c = *o.c;
  if (o.lambda) c.problem.lambda = *o.lambda;
  if (o.init) c.solver.init = *o.init;
  if (o.max_iters) c.solver.max_iters = *o.max_iters;
  if (o.pde_tol) c.solver.pde_tol = *o.pde_tol;
  if (o.grad_tol) c.solver.grad_tol = *o.grad_tol;
  if (o.k_tol) c.solver.k_tol = *o.k_tol;
  if (o.auto_domain) c.solver.auto_domain = *o.auto_domain;
  if (o.dt) c.evolution.dt = *o.dt;
  if (o.t_end) c.evolution.t_end = *o.t_end;
  if (o.R) c.evolution.R = *o.R;
  if (o.initial) c.evolution.initial = *o.initial;
  if (o.file) c.evolution.file = *o.file;
  if (o.omega) c.evolution.omega = *o.omega;
  if (o.amplitude) c.evolution.amplitude = *o.amplitude;
  if (o.width) c.evolution.width = *o.width;
  if (o.samples) c.verify.samples = *o.samples;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground states, thresholds and dynamics for focusing NLS on R^d x T"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  app.add_option("--config", config_path, "YAML run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "64-bit seed");
  app.add_option("--workers", workers, "parallel workers")->check(CLI::PositiveNumber);

  Overrides o;
  auto* gs = app.add_subcommand("ground-state", "minimize the energy at fixed mass on K = 0");
  add_model_flags(gs, o);
  add_grid_flags(gs, o);
  add_solver_flags(gs, o);
  gs->add_option("--c", o.c, "mass");
  gs->add_option("--lambda", o.lambda, "weight of the y-derivative");

  auto* curve = app.add_subcommand("curve", "sample the threshold curve c -> m_c");
  add_model_flags(curve, o);
  add_grid_flags(curve, o);
  add_solver_flags(curve, o);
  curve->add_option("--values", o.values, "masses (increasing)");

  auto* bif = app.add_subcommand("bifurcation", "bracket the y-dependence threshold");
  add_model_flags(bif, o);
  add_grid_flags(bif, o);
  add_solver_flags(bif, o);

  auto* ev = app.add_subcommand("evolve", "split-step evolution with virial diagnostics");
  add_model_flags(ev, o);
  add_grid_flags(ev, o);
  ev->add_option("--dt", o.dt);
  ev->add_option("--t-end", o.t_end);
  ev->add_option("--R", o.R, "local virial radius");
  ev->add_option("--initial", o.initial, "soliton, gaussian or file");
  ev->add_option("--file", o.file, "initial field file");
  ev->add_option("--omega", o.omega);
  ev->add_option("--amplitude", o.amplitude);
  ev->add_option("--width", o.width);

  auto* ver = app.add_subcommand("verify", "property checks on random fields");
  add_model_flags(ver, o);
  add_grid_flags(ver, o);
  ver->add_option("--samples", o.samples);

  auto* ex = app.add_subcommand("exponents", "exact Strichartz exponent table");
  add_model_flags(ex, o);

  CLI11_PARSE(app, argc, argv);

  try {
    wgnls::RunConfig cfg = config_path.empty() ? wgnls::RunConfig{} : wgnls::load_config(config_path);
    cfg.command = app.get_subcommands().front()->get_name();
    apply(o, cfg);
    if (!o.values.empty()) {
      cfg.sweep.axis = "c";
      cfg.sweep.values = o.values;
    }
    if (!out_dir.empty()) cfg.output.directory = out_dir;
    if (seed) cfg.solver.seed = *seed;
    if (workers) cfg.workers = *workers;
    const wgnls::ResultEnvelope env = wgnls::run(cfg);
    std::cout << env.outputs.dump(2) << "\n";
  } catch (const wgnls::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
