#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wgnls/ground_state.hpp"
#include "wgnls/mei.hpp"
#include "wgnls/model.hpp"

namespace wgnls {

struct BifurcationConfig {
  SolverConfig solver = [] {
    SolverConfig s;
    s.auto_domain = true;
    return s;
  }();
  std::size_t Nx = 512, Ny = 64;
  double Lx = 20.0;           // starting box; replaced by the auto domain
  double lambda_min = 1e6;
  double lambda_max = 1e10;
  int sweep_points = 9;
  double bracket_tol = 1e-2;  // relative width of the final bracket
  // Relative energy accuracy of one solve. A point is y-dependent by energy
  // when m < reference * (1 - 3 energy_tol).
  double energy_tol = 1e-7;
  // A point is y-dependent by shape when lambda*grady/(gradx + lambda*grady)
  // exceeds this.
  double share_tol = 1e-6;
  int max_bisections = 60;
  int workers = 1;
};

struct SweepPoint {
  double lambda = 0.0;
  double m = 0.0;
  double grady_fraction = 0.0;
  double y_share = 0.0;  // lambda*grady_sq / (gradx_sq + lambda*grady_sq)
  bool converged = false;
  std::string branch;
  std::string status;
};

// m_{1,lambda} for each lambda; failures are recorded in the point, not thrown.
std::vector<SweepPoint> sweep_m1_lambda(const std::vector<double>& lambdas, const ModelParams& p,
                                        const BifurcationConfig& cfg);

enum class Regime { y_dependent, y_independent };

struct Classification {
  Regime energy, shape;
  bool agree() const { return energy == shape; }
};
Classification classify(const SweepPoint& pt, double reference, const BifurcationConfig& cfg);

struct Interval {
  double lo = 0.0, hi = 0.0;
};

struct BifurcationResult {
  Interval lambda_star;
  Interval c_star;
  double reference = 0.0;  // 2 pi wm_{1 / 2pi}
  std::vector<SweepPoint> sweep;  // geometric sweep then bisection points, sorted by lambda
  SweepPoint lower, upper;        // solves at the bracket ends
};

// Geometric sweep then bisection on the classifier. Throws BracketError when
// the sweep has no sign change or the two classifiers disagree.
BifurcationResult find_lambda_star(const ModelParams& p, const BifurcationConfig& cfg);

// Maps a lambda-bracket to the mass bracket through the rescaling
// m_c = (c / lambda) m_{1,lambda}, lambda = c^{2 / (d - 4/alpha)}.
Interval c_star_from_lambda(const Interval& lambda_star, const ModelParams& p);
double c_from_lambda(double lambda, const ModelParams& p);
double lambda_from_c(double c, const ModelParams& p);

struct RhoCertificate {
  double a = 0.0;
  double slope = 0.0;       // ((alpha+3)/3)^{1/alpha}
  std::vector<double> y, rho;  // samples on [0, 2 pi]
  double l2_sq = 0.0;       // ||rho||_2^2
  double lp_pow = 0.0;      // ||rho||_{alpha+2}^{alpha+2}
  double l2_sq_exact = 0.0; // closed form 2 h^2 (pi - a) / 3
  double K_psi = 0.0;       // relative to ||grad_x psi||^2 + its potential term
  double psi_energy = 0.0;
  double reference = 0.0;
  double margin = 0.0;      // reference - psi_energy
};

double rho_window_lower(const ModelParams& p);
double rho_profile(double y, double a, const ModelParams& p);
RhoCertificate rho_certificate(const ModelParams& p, std::optional<double> a = std::nullopt);

struct CurveKnot {
  double c = 0.0;
  double m = 0.0;
  double beta = 0.0;
  double grady_fraction = 0.0;
  bool converged = false;
  std::string branch;
  double reference = 0.0;  // 2 pi wm_{c / 2pi}
  // Filled when the rescaling check runs: m_{1,lambda} at lambda_from_c(c).
  std::optional<double> m1_lambda;
  std::optional<double> rescaling_error;  // |m - (c / lambda) m1_lambda| / m
};

struct CurveConfig {
  BifurcationConfig base;
  bool check_rescaling = false;
  double monotone_slack = 1e-6;
};

struct CurveResult {
  MeiCurve curve;
  std::vector<CurveKnot> knots;
};

// m_c at each knot. A rise above the previous knot by more than 10 energy
// tolerances throws (it signals a failed solve).
CurveResult mc_curve(const std::vector<double>& cs, const ModelParams& p, const CurveConfig& cfg);

}  // namespace wgnls
