#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "wgnls/cli_io.hpp"
#include "wgnls/model.hpp"

namespace wgnls {

namespace {

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational::from_double(std::stod(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw InvalidArgument("config: cannot read '" + s + "' as a rational number");
  }
}

template <class T>
void get(const YAML::Node& n, const char* key, T& out) {
  if (!n || !n[key]) return;
  try {
    out = n[key].as<T>();
  } catch (const YAML::Exception& e) {
    throw InvalidArgument(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

void check_keys(const YAML::Node& n, const std::string& where, std::initializer_list<const char*> keys) {
  if (!n) return;
  if (!n.IsMap()) throw InvalidArgument("config: section '" + where + "' must be a mapping");
  for (const auto& kv : n) {
    const auto k = kv.first.as<std::string>();
    bool known = false;
    for (const char* c : keys) known = known || k == c;
    if (!known) throw InvalidArgument("config: unknown key '" + k + "' in section '" + where + "'");
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : InvalidArgument([&] {
        std::string s = "invalid configuration:";
        for (const auto& p : problems) s += "\n  - " + p;
        return s;
      }()),
      problems_(std::move(problems)) {}

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw InvalidArgument(std::string("config: YAML parse error: ") + e.what());
  }
  RunConfig c;
  if (!root || root.IsNull()) return c;
  check_keys(root, "top level",
             {"command", "model", "grid", "solver", "problem", "evolution", "sweep", "bifurcation", "verify", "output",
              "workers"});
  get(root, "command", c.command);
  get(root, "workers", c.workers);

  const auto m = root["model"];
  check_keys(m, "model", {"d", "alpha"});
  get(m, "d", c.model.d);
  if (m && m["alpha"]) c.model.alpha = parse_rational(m["alpha"].as<std::string>());

  const auto g = root["grid"];
  check_keys(g, "grid", {"Lx", "Nx", "Ny"});
  get(g, "Lx", c.grid.Lx);
  get(g, "Nx", c.grid.Nx);
  get(g, "Ny", c.grid.Ny);

  const auto s = root["solver"];
  check_keys(s, "solver",
             {"step", "max_iters", "energy_rtol", "grad_tol", "pde_tol", "k_tol", "leak_tol", "init", "epsilon",
              "auto_domain", "seed"});
  get(s, "step", c.solver.step);
  get(s, "max_iters", c.solver.max_iters);
  get(s, "energy_rtol", c.solver.energy_rtol);
  get(s, "grad_tol", c.solver.grad_tol);
  get(s, "pde_tol", c.solver.pde_tol);
  get(s, "k_tol", c.solver.k_tol);
  get(s, "leak_tol", c.solver.leak_tol);
  get(s, "init", c.solver.init);
  get(s, "epsilon", c.solver.epsilon);
  get(s, "auto_domain", c.solver.auto_domain);
  get(s, "seed", c.solver.seed);

  const auto p = root["problem"];
  check_keys(p, "problem", {"c", "lambda"});
  get(p, "c", c.problem.c);
  get(p, "lambda", c.problem.lambda);

  const auto e = root["evolution"];
  check_keys(e, "evolution",
             {"dt", "t_end", "record_every", "R", "blowup_grad_factor", "scatter_pot_factor", "leak_tol",
              "checkpoint_every", "initial", "omega", "amplitude", "width", "file", "m_threshold"});
  get(e, "dt", c.evolution.dt);
  get(e, "t_end", c.evolution.t_end);
  get(e, "record_every", c.evolution.record_every);
  get(e, "R", c.evolution.R);
  get(e, "blowup_grad_factor", c.evolution.blowup_grad_factor);
  get(e, "scatter_pot_factor", c.evolution.scatter_pot_factor);
  get(e, "leak_tol", c.evolution.leak_tol);
  get(e, "checkpoint_every", c.evolution.checkpoint_every);
  get(e, "initial", c.evolution.initial);
  get(e, "omega", c.evolution.omega);
  get(e, "amplitude", c.evolution.amplitude);
  get(e, "width", c.evolution.width);
  get(e, "file", c.evolution.file);
  get(e, "m_threshold", c.evolution.m_threshold);

  const auto w = root["sweep"];
  check_keys(w, "sweep", {"axis", "values"});
  get(w, "axis", c.sweep.axis);
  get(w, "values", c.sweep.values);

  const auto b = root["bifurcation"];
  check_keys(b, "bifurcation",
             {"lambda_min", "lambda_max", "sweep_points", "bracket_tol", "energy_tol", "share_tol", "check_rescaling"});
  get(b, "lambda_min", c.bifurcation.lambda_min);
  get(b, "lambda_max", c.bifurcation.lambda_max);
  get(b, "sweep_points", c.bifurcation.sweep_points);
  get(b, "bracket_tol", c.bifurcation.bracket_tol);
  get(b, "energy_tol", c.bifurcation.energy_tol);
  get(b, "share_tol", c.bifurcation.share_tol);
  get(b, "check_rescaling", c.bifurcation.check_rescaling);

  const auto v = root["verify"];
  check_keys(v, "verify", {"samples"});
  get(v, "samples", c.verify.samples);

  const auto o = root["output"];
  check_keys(o, "output", {"directory", "formats"});
  get(o, "directory", c.output.directory);
  get(o, "formats", c.output.formats);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("config: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  YAML::Emitter y;
  y.SetDoublePrecision(17);
  y << YAML::BeginMap;
  y << YAML::Key << "command" << YAML::Value << c.command;
  y << YAML::Key << "workers" << YAML::Value << c.workers;
  y << YAML::Key << "model" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "d" << YAML::Value << c.model.d;
  y << YAML::Key << "alpha" << YAML::Value << c.model.alpha.str();
  y << YAML::EndMap;
  y << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "Lx" << YAML::Value << c.grid.Lx;
  y << YAML::Key << "Nx" << YAML::Value << c.grid.Nx;
  y << YAML::Key << "Ny" << YAML::Value << c.grid.Ny;
  y << YAML::EndMap;
  y << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "step" << YAML::Value << c.solver.step;
  y << YAML::Key << "max_iters" << YAML::Value << c.solver.max_iters;
  y << YAML::Key << "energy_rtol" << YAML::Value << c.solver.energy_rtol;
  y << YAML::Key << "grad_tol" << YAML::Value << c.solver.grad_tol;
  y << YAML::Key << "pde_tol" << YAML::Value << c.solver.pde_tol;
  y << YAML::Key << "k_tol" << YAML::Value << c.solver.k_tol;
  y << YAML::Key << "leak_tol" << YAML::Value << c.solver.leak_tol;
  y << YAML::Key << "init" << YAML::Value << c.solver.init;
  y << YAML::Key << "epsilon" << YAML::Value << c.solver.epsilon;
  y << YAML::Key << "auto_domain" << YAML::Value << c.solver.auto_domain;
  y << YAML::Key << "seed" << YAML::Value << c.solver.seed;
  y << YAML::EndMap;
  y << YAML::Key << "problem" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "c" << YAML::Value << c.problem.c;
  y << YAML::Key << "lambda" << YAML::Value << c.problem.lambda;
  y << YAML::EndMap;
  const auto& e = c.evolution;
  y << YAML::Key << "evolution" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "dt" << YAML::Value << e.dt;
  y << YAML::Key << "t_end" << YAML::Value << e.t_end;
  y << YAML::Key << "record_every" << YAML::Value << e.record_every;
  y << YAML::Key << "R" << YAML::Value << e.R;
  y << YAML::Key << "blowup_grad_factor" << YAML::Value << e.blowup_grad_factor;
  y << YAML::Key << "scatter_pot_factor" << YAML::Value << e.scatter_pot_factor;
  y << YAML::Key << "leak_tol" << YAML::Value << e.leak_tol;
  y << YAML::Key << "checkpoint_every" << YAML::Value << e.checkpoint_every;
  y << YAML::Key << "initial" << YAML::Value << e.initial;
  y << YAML::Key << "omega" << YAML::Value << e.omega;
  y << YAML::Key << "amplitude" << YAML::Value << e.amplitude;
  y << YAML::Key << "width" << YAML::Value << e.width;
  y << YAML::Key << "file" << YAML::Value << e.file;
  y << YAML::Key << "m_threshold" << YAML::Value << e.m_threshold;
  y << YAML::EndMap;
  y << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "axis" << YAML::Value << c.sweep.axis;
  y << YAML::Key << "values" << YAML::Value << YAML::Flow << c.sweep.values;
  y << YAML::EndMap;
  const auto& b = c.bifurcation;
  y << YAML::Key << "bifurcation" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "lambda_min" << YAML::Value << b.lambda_min;
  y << YAML::Key << "lambda_max" << YAML::Value << b.lambda_max;
  y << YAML::Key << "sweep_points" << YAML::Value << b.sweep_points;
  y << YAML::Key << "bracket_tol" << YAML::Value << b.bracket_tol;
  y << YAML::Key << "energy_tol" << YAML::Value << b.energy_tol;
  y << YAML::Key << "share_tol" << YAML::Value << b.share_tol;
  y << YAML::Key << "check_rescaling" << YAML::Value << b.check_rescaling;
  y << YAML::EndMap;
  y << YAML::Key << "verify" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "samples" << YAML::Value << c.verify.samples;
  y << YAML::EndMap;
  y << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "directory" << YAML::Value << c.output.directory;
  y << YAML::Key << "formats" << YAML::Value << YAML::Flow << c.output.formats;
  y << YAML::EndMap;
  y << YAML::EndMap;
  return std::string(y.c_str()) + "\n";
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> bad;
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) bad.push_back(msg);
  };
  static const char* commands[] = {"ground-state", "curve", "bifurcation", "evolve", "verify", "exponents"};
  bool known = false;
  for (const char* k : commands) known = known || c.command == k;
  need(known, "cli_io: unknown command '" + c.command + "'");
  need(c.workers >= 1, "cli_io: workers must be at least 1");

  if (c.model.d < 1 || c.model.d > (c.command == "exponents" ? 4 : 2)) {
    bad.push_back("functionals: ModelParams.d = " + std::to_string(c.model.d) + " is not supported for " + c.command);
  } else {
    try {
      check_intercritical(c.model.d, c.model.alpha);
    } catch (const Error& e) {
      bad.push_back(std::string("functionals: ") + e.what());
    }
  }
  if (c.command == "exponents") return bad;

  need(c.grid.Lx > 0 && std::isfinite(c.grid.Lx), "spectral_core: Grid.Lx must be positive");
  need(c.grid.Nx >= 8 && c.grid.Nx % 2 == 0, "spectral_core: Grid.Nx must be even and at least 8");
  need(c.grid.Ny >= 8 && c.grid.Ny % 2 == 0, "spectral_core: Grid.Ny must be even and at least 8");

  const auto& s = c.solver;
  need(s.step > 0, "ground_state: solver.step must be positive");
  need(s.max_iters > 0, "ground_state: solver.max_iters must be positive");
  need(s.energy_rtol > 0 && s.grad_tol > 0 && s.pde_tol > 0 && s.k_tol > 0 && s.leak_tol > 0,
       "ground_state: solver tolerances must be positive");
  need(s.init == "best" || s.init == "symmetric" || s.init == "broken" || s.init == "localized",
       "ground_state: solver.init must be best, symmetric, broken or localized");
  need(c.problem.c > 0, "ground_state: problem.c must be positive");
  need(c.problem.lambda > 0, "ground_state: problem.lambda must be positive");

  if (c.command == "evolve") {
    const auto& e = c.evolution;
    need(e.dt > 0, "dynamics: evolution.dt must be positive");
    need(e.t_end >= 0, "dynamics: evolution.t_end must be non-negative");
    need(e.record_every >= 1, "dynamics: evolution.record_every must be at least 1");
    need(e.R > 0 && e.R < c.grid.Lx, "dynamics: evolution.R must lie in (0, Lx)");
    need(e.blowup_grad_factor > 1, "dynamics: evolution.blowup_grad_factor must exceed 1");
    need(e.scatter_pot_factor > 0 && e.scatter_pot_factor < 1, "dynamics: evolution.scatter_pot_factor must lie in (0, 1)");
    need(e.initial == "soliton" || e.initial == "gaussian" || e.initial == "file",
         "dynamics: evolution.initial must be soliton, gaussian or file");
    need(e.initial != "file" || !e.file.empty(), "dynamics: evolution.file is required for initial: file");
    need(e.initial != "soliton" || c.model.d == 1, "dynamics: soliton initial data needs d = 1");
    need(e.omega > 0 && e.width > 0, "dynamics: evolution.omega and evolution.width must be positive");
  }
  if (c.sweep.axis != "none") {
    need(c.sweep.axis == "c" || c.sweep.axis == "lambda", "cli_io: sweep.axis must be none, c or lambda");
    need(!c.sweep.values.empty(), "cli_io: sweep.values must not be empty");
    bool pos = true, sorted = true;
    for (std::size_t i = 0; i < c.sweep.values.size(); ++i) {
      pos = pos && c.sweep.values[i] > 0;
      sorted = sorted && (i == 0 || c.sweep.values[i] > c.sweep.values[i - 1]);
    }
    need(pos && sorted, "cli_io: sweep.values must be positive and strictly increasing");
  }
  if (c.command == "curve")
    need(c.sweep.axis == "c" && !c.sweep.values.empty(), "bifurcation: curve needs sweep.axis c with values");
  if (c.command == "bifurcation") {
    const auto& b = c.bifurcation;
    need(b.lambda_min > 0 && b.lambda_min < b.lambda_max, "bifurcation: need 0 < lambda_min < lambda_max");
    need(b.sweep_points >= 2, "bifurcation: sweep_points must be at least 2");
    need(b.bracket_tol > 0, "bifurcation: bracket_tol must be positive");
    need(b.energy_tol > 0 && b.share_tol > 0, "bifurcation: classifier tolerances must be positive");
  }
  if (c.command == "verify") need(c.verify.samples >= 1, "cli_io: verify.samples must be at least 1");
  return bad;
}

}  // namespace wgnls
