#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wgnls/field.hpp"
#include "wgnls/model.hpp"

namespace wgnls {

struct EvolutionConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int record_every = 10;
  double R = 5.0;                    // local virial radius
  double blowup_grad_factor = 1e3;   // on ||grad u||^2 relative to t = 0
  double leak_tol = 1e-6;            // mass fraction in the outer tenth of the box
  double scatter_pot_factor = 0.1;
  double energy_fail_tol = 1e-2;     // relative energy drift that counts as loss of stability
  int checkpoint_every = 0;          // steps; 0 disables
  std::function<void(double t, const Field&)> checkpoint;
};

struct TraceSample {
  double t = 0.0;
  double M = 0.0, H = 0.0, K = 0.0, pot = 0.0;
  double gradnorm_sq = 0.0;  // ||grad_{x,y} u||^2
  double V = 0.0;            // int |x|^2 |u|^2
  double dV = 0.0;           // 4 Im int conj(u) x . grad_x u
  double zR = 0.0;           // int R^2 chi(x/R) |u|^2
  double dzR = 0.0;          // 2 Im int R grad chi(x/R) . grad_x u conj(u)
  double AR = 0.0;           // z_R'' - 8K from the local virial identity
  double edge_fraction = 0.0;
};

enum class Outcome { global_scattering_consistent, blowup_detected, undetermined };
std::string to_string(Outcome o);

struct EvolutionTrace {
  std::vector<TraceSample> samples;
  Outcome classification = Outcome::undetermined;
  std::string reason;
  int steps = 0;
  std::optional<Field> final_field;
};

// Smooth radial cut-off: s^2 on [0, 1], quintic on [1, 2] with matching value,
// slope and curvature, 0 beyond.
double chi(double s);
double chi_d1(double s);
double chi_d2(double s);
double chi_d3(double s);

// One Strang step: linear half step, exact nonlinear phase, linear half step.
Field strang_step(const Field& u, double dt, const ModelParams& p);

TraceSample measure(const Field& u, double t, double R, const ModelParams& p);

// Throws MassLeakError when mass reaches the box edge beyond cfg.leak_tol.
EvolutionTrace evolve(const Field& u0, const ModelParams& p, const EvolutionConfig& cfg);

struct VirialCheck {
  std::size_t points = 0;        // interior samples used
  double max_rel_V = 0.0;        // max |ddV - 8K| / (8|K|)
  double max_rel_z = 0.0;        // max |ddz - 8K - A_R| / (8|K|)
  double max_rel_dV = 0.0;       // centred difference of V against the flux dV
  bool V_concave = false;        // every second difference of V < 0
};
// Second differences over samples with t <= t_max. Needs at least 5 samples.
VirialCheck virial_series(const EvolutionTrace& trace, double t_max = std::numeric_limits<double>::infinity());

// K(u) <= H(u) - m + tol. Throws PreconditionError unless H < m and K < 0.
bool energy_trapping_check(const Field& u, double m_at_mass, const ModelParams& p, double tol = 1e-10);

}  // namespace wgnls
