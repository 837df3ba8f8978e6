#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "wgnls/error.hpp"
#include "wgnls/rational.hpp"

namespace wgnls {

struct ModelSection {
  int d = 1;
  Rational alpha{6};
  bool operator==(const ModelSection&) const = default;
};

struct GridSection {
  double Lx = 20.0;
  std::size_t Nx = 512, Ny = 64;
  bool operator==(const GridSection&) const = default;
};

struct SolverSection {
  double step = 0.1;
  int max_iters = 20000;
  double energy_rtol = 1e-12;
  double grad_tol = 1e-8;
  double pde_tol = 1e-4;
  double k_tol = 1e-8;
  double leak_tol = 1e-6;
  std::string init = "best";
  double epsilon = 0.3;
  bool auto_domain = false;
  std::uint64_t seed = 0;
  bool operator==(const SolverSection&) const = default;
};

struct ProblemSection {
  double c = 15.0;
  double lambda = 1.0;
  bool operator==(const ProblemSection&) const = default;
};

struct EvolutionSection {
  double dt = 1e-3;
  double t_end = 1.0;
  int record_every = 10;
  double R = 5.0;
  double blowup_grad_factor = 1e3;
  double scatter_pot_factor = 0.1;
  double leak_tol = 1e-6;
  int checkpoint_every = 0;
  // Initial data: "soliton" (amplitude * P_omega, y-independent), "gaussian"
  // (amplitude * exp(-|x|^2 / (2 width^2))) or "file".
  std::string initial = "soliton";
  double omega = 1.0;
  double amplitude = 1.0;
  double width = 1.0;
  std::string file;
  double m_threshold = 0.0;  // m at the data's mass; 0 means compute it
  bool operator==(const EvolutionSection&) const = default;
};

struct SweepSection {
  std::string axis = "none";  // "none", "c" or "lambda"
  std::vector<double> values;
  bool operator==(const SweepSection&) const = default;
};

struct BifurcationSection {
  double lambda_min = 1e6;
  double lambda_max = 1e10;
  int sweep_points = 9;
  double bracket_tol = 1e-2;
  double energy_tol = 1e-7;
  double share_tol = 1e-6;
  bool check_rescaling = false;
  bool operator==(const BifurcationSection&) const = default;
};

struct VerifySection {
  int samples = 200;
  bool operator==(const VerifySection&) const = default;
};

struct OutputSection {
  std::string directory = "out";
  std::vector<std::string> formats{"json", "csv", "field"};
  bool operator==(const OutputSection&) const = default;
};

struct RunConfig {
  std::string command = "ground-state";
  ModelSection model;
  GridSection grid;
  SolverSection solver;
  ProblemSection problem;
  EvolutionSection evolution;
  SweepSection sweep;
  BifurcationSection bifurcation;
  VerifySection verify;
  OutputSection output;
  int workers = 1;
  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& yaml_text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& cfg);

// Every violated precondition, prefixed by the owning module. Empty when valid.
std::vector<std::string> validate(const RunConfig& cfg);

// Raised by run() when validate() reports problems.
class ConfigError : public InvalidArgument {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Git-style object id: SHA-1 of "blob <size>\0" followed by the bytes.
std::string content_hash(const std::string& bytes);

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::string sha1;
  std::uintmax_t bytes = 0;
};

struct ResultEnvelope {
  RunConfig config;
  std::string config_hash;
  double seconds = 0.0;
  nlohmann::json outputs;
  std::vector<ManifestEntry> manifest;
  nlohmann::json to_json() const;
};

// Dispatches on cfg.command and writes outputs plus manifest.json under
// cfg.output.directory. A sweep axis turns ground-state into a sweep.
ResultEnvelope run(const RunConfig& cfg);
ResultEnvelope sweep(const RunConfig& cfg);

}  // namespace wgnls
