#include <cmath>
#include <numbers>

#include "wgnls/error.hpp"
#include "wgnls/ground_state.hpp"
#include "wgnls/spectral.hpp"

namespace wgnls {

std::string to_string(InitMode m) {
  switch (m) {
    case InitMode::symmetric: return "symmetric";
    case InitMode::broken: return "broken";
    case InitMode::localized: return "localized";
    case InitMode::best: return "best";
  }
  return "best";
}

InitMode init_mode_from_string(const std::string& s) {
  if (s == "symmetric") return InitMode::symmetric;
  if (s == "broken") return InitMode::broken;
  if (s == "localized") return InitMode::localized;
  if (s == "best") return InitMode::best;
  throw InvalidArgument("unknown init mode '" + s + "' (symmetric|broken|localized|best)");
}

BetaEstimate extract_beta(const Field& u, double lambda, const ModelParams& p) {
  const auto r = evaluate(u, p);
  if (!(r.mass > 0.0)) throw DegenerateFieldError("extract_beta: zero mass");
  BetaEstimate b;
  b.beta = (r.pot - r.gradx_sq - lambda * r.grady_sq) / r.mass;
  const double a = p.alpha;
  const double rhs = (2.0 * a + (4.0 - a * p.d)) / (2.0 * (a + 2.0)) * r.pot;
  b.residual_cross = r.pot > 0 ? std::abs(lambda * r.grady_sq + b.beta * r.mass - rhs) / r.pot : 0.0;
  return b;
}

PdeResidual pde_residual(const Field& u, double beta, double lambda, const ModelParams& p) {
  const Grid& g = u.grid();
  auto ws = workspace_for(g);
  const std::size_t n = u.size();
  std::vector<cplx> uh(n), nl(n), nh(n);
  ws->forward(u.values(), uh);
  for (std::size_t i = 0; i < n; ++i) nl[i] = p.abs_pow(std::norm(u[i]), p.alpha) * u[i];
  ws->forward(nl, nh);
  const auto xs = ws->xi_sq();
  const auto ks = ws->k_sq();
  double res = 0.0, lx = 0.0, ly = 0.0, m = 0.0, nn = 0.0, gx = 0.0, gy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx r = (xs[i] + lambda * ks[i] + beta) * uh[i] - nh[i];
    res += std::norm(r);
    lx += xs[i] * xs[i] * std::norm(uh[i]);
    ly += ks[i] * ks[i] * std::norm(uh[i]);
    m += std::norm(uh[i]);
    nn += std::norm(nh[i]);
    gx += xs[i] * std::norm(uh[i]);
    gy += ks[i] * std::norm(uh[i]);
  }
  PdeResidual out;
  const double h1 = std::sqrt(m + gx + gy);
  if (!(h1 > 0.0)) {
    out.degenerate = true;
    return out;
  }
  const double terms = std::sqrt(lx) + lambda * std::sqrt(ly) + std::abs(beta) * std::sqrt(m) + std::sqrt(nn);
  // Both norms carry the same Parseval factor, so it cancels.
  out.residual = std::sqrt(res) / h1;
  out.scaled = std::sqrt(res) / terms;
  return out;
}

Field recenter(const Field& u) {
  const Grid& g = u.grid();
  const std::size_t nx = g.Nx(), ny = g.Ny();
  const std::size_t nx2 = g.d() == 2 ? nx : 1;
  std::vector<double> w1(nx, 0.0), w2(nx, 0.0), wy(ny, 0.0);
  double total = 0.0;
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < nx2; ++b)
      for (std::size_t k = 0; k < ny; ++k) {
        const std::size_t i = (a * nx2 + b) * ny + k;
        const double q = std::norm(u[i]);
        w1[a] += q;
        w2[b] += q;
        wy[k] += q;
        total += q;
      }
  if (!(total > 0.0)) return u;
  auto circular_mean = [](const std::vector<double>& w, double& concentration) {
    cplx s = 0.0;
    double t = 0.0;
    const double n = static_cast<double>(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
      s += w[j] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / n);
      t += w[j];
    }
    concentration = std::abs(s) / t;
    double ang = std::arg(s);
    if (ang < 0) ang += 2.0 * std::numbers::pi;
    return ang / (2.0 * std::numbers::pi);  // fraction of the period
  };
  double conc = 0.0;
  const double f1 = circular_mean(w1, conc);
  const double s1 = -(-g.Lx() + f1 * 2.0 * g.Lx());
  double s2 = 0.0;
  if (g.d() == 2) {
    const double f2 = circular_mean(w2, conc);
    s2 = -(-g.Lx() + f2 * 2.0 * g.Lx());
  }
  double sy = 0.0;
  const double fy = circular_mean(wy, conc);
  if (conc > 1e-8) sy = std::numbers::pi - fy * 2.0 * std::numbers::pi;
  Field v = spectral_shift(u, s1, s2, sy);
  std::size_t jmax = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::norm(v[i]) > std::norm(v[jmax])) jmax = i;
  const cplx ph = std::conj(v[jmax]) / std::abs(v[jmax]);
  return v.scaled(ph);
}

double reference_width(double c, const ModelParams& p) {
  if (!(c > 0.0)) throw InvalidArgument("reference_width: c must be positive");
  const double a = p.alpha, d = p.d, pi = std::numbers::pi;
  const double mhat = c / (2.0 * pi);
  // s^{ad/4 - 1} = (a/(a+2)) mhat^{a/2} pi^{-ad/4} (2/(a+2))^{d/2}, s = sigma^2.
  const double rhs = a / (a + 2.0) * std::pow(mhat, 0.5 * a) * std::pow(pi, -0.25 * a * d) *
                     std::pow(2.0 / (a + 2.0), 0.5 * d);
  const double s = std::pow(rhs, 1.0 / (0.25 * a * d - 1.0));
  return std::sqrt(s);
}

DomainDiagnostics domain_diagnostics(const Field& u) {
  const Grid& g = u.grid();
  const std::size_t nx = g.Nx(), ny = g.Ny();
  const std::size_t nx2 = g.d() == 2 ? nx : 1;
  auto ws = workspace_for(g);
  std::vector<cplx> uh(u.size());
  ws->forward(u.values(), uh);
  const double xcut = 0.9 * g.Lx();
  const double kcut = 0.8 * std::numbers::pi / g.hx();
  double edge = 0.0, tot = 0.0, tail = 0.0, spec = 0.0;
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < nx2; ++b) {
      const bool out_x = std::abs(g.x(a)) > xcut || (g.d() == 2 && std::abs(g.x(b)) > xcut);
      const bool out_k = std::abs(g.xi(a)) > kcut || (g.d() == 2 && std::abs(g.xi(b)) > kcut);
      for (std::size_t k = 0; k < ny; ++k) {
        const std::size_t i = (a * nx2 + b) * ny + k;
        const double q = std::norm(u[i]);
        const double qh = std::norm(uh[i]);
        tot += q;
        spec += qh;
        if (out_x) edge += q;
        if (out_k) tail += qh;
      }
    }
  DomainDiagnostics d;
  if (tot > 0) d.edge_fraction = edge / tot;
  if (spec > 0) d.tail_fraction = tail / spec;
  return d;
}

}  // namespace wgnls
