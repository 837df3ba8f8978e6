#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wgnls/field.hpp"
#include "wgnls/functionals.hpp"
#include "wgnls/model.hpp"

namespace wgnls {

enum class InitMode {
  symmetric,  // y-independent Gaussian, k != 0 modes projected out
  broken,     // Gaussian times (1 + eps cos y)
  localized,  // Gaussian in x times a periodized Gaussian in y
  best        // run all three, keep the lowest energy
};

std::string to_string(InitMode m);
InitMode init_mode_from_string(const std::string& s);

struct SolverConfig {
  double step0 = 0.1;         // first trial step of the line search
  int max_iters = 20000;
  double energy_rtol = 1e-12;  // stall test: relative decrease per step
  int stall_window = 20;
  double grad_tol = 1e-8;      // relative tangent-gradient norm
  double pde_tol = 1e-4;
  double k_tol = 1e-8;
  double leak_tol = 1e-6;
  InitMode init = InitMode::best;
  double epsilon = 0.3;
  bool conjugate = true;       // Polak-Ribiere+ directions; steepest descent otherwise
  double tie_rtol = 1e-8;      // branch energies closer than this count as equal
  bool auto_domain = false;    // choose Lx from the width of the reference state
  double domain_factor = 16.0;  // auto box half-width in units of 1/sqrt(beta)
  int max_domain_adapt = 10;
  std::uint64_t seed = 0;      // drives the small random part of non-symmetric inits
  std::optional<Field> initial;
};

struct GroundStateSolution {
  explicit GroundStateSolution(Field f) : u(std::move(f)) {}
  Field u;
  double c = 0.0;
  double lambda = 1.0;
  double m = 0.0;
  double beta = 0.0;
  double residual_pde = 0.0;     // relative to ||u||_{H^1}
  double residual_scaled = 0.0;  // relative to the sum of the equation's term norms
  double residual_K = 0.0;       // |K| / (gradx_sq + pot)
  double residual_cross = 0.0;
  double grady_fraction = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string branch;
  std::string status;
  FunctionalReport report;
  std::vector<double> energy_history;
  std::vector<double> mass_history;
};

// Minimizes H_lambda over {M = c, K = 0} using the fibering energy
// E(u) = max_t H_lambda(u^t). The grid's Nx/Ny are kept; Lx is replaced when
// cfg.auto_domain is set.
GroundStateSolution minimize_mc(double c, double lambda, const ModelParams& p, const Grid& grid,
                                const SolverConfig& cfg = {});

struct BetaEstimate {
  double beta = 0.0;
  double residual_cross = 0.0;
};
BetaEstimate extract_beta(const Field& u, double lambda, const ModelParams& p);

struct PdeResidual {
  double residual = 0.0;  // ||R|| / ||u||_{H^1}
  double scaled = 0.0;    // ||R|| / (||Lap_x u|| + lambda ||d_y^2 u|| + |beta| ||u|| + |||u|^a u||)
  bool degenerate = false;
};
PdeResidual pde_residual(const Field& u, double beta, double lambda, const ModelParams& p);

// Translate the mass centre to the origin (and to y = pi for y-dependent fields)
// and rotate the phase so the peak sample is real positive.
Field recenter(const Field& u);

// Width of the Gaussian with mass c (uniform in y) on K = 0; sets the length
// scale used by auto domain sizing.
double reference_width(double c, const ModelParams& p);

// Mass fraction in the outer tenth of the x-box and spectral energy fraction
// in the top fifth of the x-wavenumbers.
struct DomainDiagnostics {
  double edge_fraction = 0.0;
  double tail_fraction = 0.0;
};
DomainDiagnostics domain_diagnostics(const Field& u);

}  // namespace wgnls
