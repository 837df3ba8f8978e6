#pragma once

#include "wgnls/field.hpp"
#include "wgnls/model.hpp"

namespace wgnls {

struct FunctionalReport {
  double mass = 0.0;
  double energy = 0.0;
  double semivirial = 0.0;
  double action = 0.0;
  double gradx_sq = 0.0;
  double grady_sq = 0.0;
  double pot = 0.0;  // ||u||_{alpha+2}^{alpha+2}
};

// Builds the report from the three norms; I is taken as H - K/2.
FunctionalReport make_report(double mass, double gradx_sq, double grady_sq, double pot,
                             const ModelParams& p);
FunctionalReport evaluate(const Field& u, const ModelParams& p);

double potential(const Field& u, const ModelParams& p);

struct LambdaEnergy {
  double energy = 0.0;  // H_lambda
  double action = 0.0;  // I_lambda
};
LambdaEnergy energy_lambda(const Field& u, double lambda, const ModelParams& p);
LambdaEnergy energy_lambda(const FunctionalReport& r, double lambda, const ModelParams& p);

// u^t = t^{d/2} u(t x, y).
Field scale_ut(const Field& u, double t, double leak_tol = 1e-6);
// T_lambda u = lambda^{2/alpha} u(lambda x, y).
Field scale_Tlambda(const Field& u, double lambda, const ModelParams& p, double leak_tol = 1e-6);

// Unique t with K(u^t) = 0.
double tstar(double gradx_sq, double pot, const ModelParams& p);
double tstar(const Field& u, const ModelParams& p);

// pot / [gx^{ad/4} M^{(4 - a(d-1))/4} (M^{a/4} + gy^{a/4})].
double gn_ratio(const FunctionalReport& r, const ModelParams& p);
double gn_ratio(const Field& u, const ModelParams& p);

}  // namespace wgnls
