#pragma once

#include <optional>
#include <vector>

#include "wgnls/field.hpp"
#include "wgnls/ground_state.hpp"
#include "wgnls/model.hpp"

namespace wgnls {

// Ground state of the problem on R^d at Euclidean mass c.
struct EuclideanReference {
  int d = 1;
  double c = 0.0;
  double omega = 0.0;
  double wm = 0.0;         // energy at K = 0
  double gradx_sq = 0.0;   // ||P'||^2
  double pot = 0.0;
  double semivirial = 0.0;
  // Sampled profile for d = 2 (x-grid of the solve); empty for d = 1, where
  // the closed form is used.
  std::vector<double> profile;
  std::optional<Grid> profile_grid;

  // y-independent samples of P on g.
  Field embed(const Grid& g, const ModelParams& p) const;
};

// Closed-form sech profile P_omega for d = 1.
double soliton_profile(double x, double omega, const ModelParams& p);
Field soliton_field(const Grid& g, double omega, const ModelParams& p);

EuclideanReference euclidean_reference(double c, const ModelParams& p, const Grid* d2_grid = nullptr,
                                       const SolverConfig& cfg = {});

struct EuclideanComparison {
  double reference = 0.0;  // 2 pi wm_{c / 2pi}
  double gap = 0.0;        // reference - m
  double relative_gap = 0.0;
};
EuclideanComparison compare_with_euclidean(const GroundStateSolution& sol, const ModelParams& p);

}  // namespace wgnls
