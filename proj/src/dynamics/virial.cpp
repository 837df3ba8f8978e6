#include <cmath>

#include "wgnls/dynamics.hpp"
#include "wgnls/error.hpp"
#include "wgnls/functionals.hpp"
#include "wgnls/spectral.hpp"

namespace wgnls {

TraceSample measure(const Field& u, double t, double R, const ModelParams& p) {
  const Grid& g = u.grid();
  const int d = g.d();
  const std::size_t nx = g.Nx(), ny = g.Ny(), nx2 = d == 2 ? nx : 1, n = g.size();
  const double cell = g.cell();
  auto ws = workspace_for(g);
  std::vector<cplx> uh(n), d1(n), d2(d == 2 ? n : 0), tmp(n);
  ws->forward(u.values(), uh);

  TraceSample s;
  s.t = t;
  double gx = 0.0, gy = 0.0, m = 0.0;
  const auto xs = ws->xi_sq();
  const auto ks = ws->k_sq();
  for (std::size_t i = 0; i < n; ++i) {
    const double q = std::norm(uh[i]);
    m += q;
    gx += xs[i] * q;
    gy += ks[i] * q;
  }
  const double fs = cell / static_cast<double>(n);
  s.M = m * fs;
  s.gradnorm_sq = (gx + gy) * fs;
  gx *= fs;

  // x-derivatives of u.
  const cplx I(0.0, 1.0);
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < nx2; ++b)
      for (std::size_t k = 0; k < ny; ++k) {
        const std::size_t i = (a * nx2 + b) * ny + k;
        tmp[i] = I * g.xi(a) * uh[i];
      }
  ws->backward(tmp, d1);
  if (d == 2) {
    for (std::size_t a = 0; a < nx; ++a)
      for (std::size_t b = 0; b < nx2; ++b)
        for (std::size_t k = 0; k < ny; ++k) {
          const std::size_t i = (a * nx2 + b) * ny + k;
          tmp[i] = I * g.xi(b) * uh[i];
        }
    ws->backward(tmp, d2);
  }

  const double e = p.alpha + 2.0;
  double pot = 0.0, V = 0.0, dV = 0.0, z = 0.0, dz = 0.0, hess = 0.0, lap4 = 0.0, lapn = 0.0, edge = 0.0;
  const double xcut = 0.9 * g.Lx();
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < nx2; ++b) {
      const double x1 = g.x(a), x2 = d == 2 ? g.x(b) : 0.0;
      const double r = std::hypot(x1, x2);
      const double sr = r / R;
      const bool outer = std::abs(x1) > xcut || std::abs(x2) > xcut;
      // phi = R^2 chi(r / R) and its radial derivatives.
      const double p1 = R * chi_d1(sr), p2 = chi_d2(sr), p3 = chi_d3(sr) / R;
      const bool inner = sr <= 1.0;
      double lap, dlap;
      if (inner) {
        lap = 2.0 * d;
        dlap = 0.0;
      } else if (d == 1) {
        lap = p2;
        dlap = p3;
      } else {
        lap = p2 + p1 / r;
        dlap = p3 + p2 / r - p1 / (r * r);
      }
      const double ux = r > 0 ? x1 / r : 0.0, uy = r > 0 ? x2 / r : 0.0;
      for (std::size_t k = 0; k < ny; ++k) {
        const std::size_t i = (a * nx2 + b) * ny + k;
        const cplx v = u[i];
        const double q = std::norm(v);
        const double qp = p.abs_pow(q, e);
        const cplx g1 = d1[i], g2 = d == 2 ? d2[i] : cplx(0.0);
        pot += qp;
        V += (x1 * x1 + x2 * x2) * q;
        dV += std::imag(std::conj(v) * (x1 * g1 + x2 * g2));
        z += R * R * chi(sr) * q;
        const cplx gr = ux * g1 + uy * g2;  // radial derivative
        dz += p1 * std::imag(std::conj(v) * gr);
        // Hessian of phi contracted with grad u, grad conj(u).
        double h;
        if (inner) {
          h = 2.0 * (std::norm(g1) + std::norm(g2));
        } else if (d == 1) {
          h = p2 * std::norm(g1);
        } else {
          const double gr2 = std::norm(gr);
          h = p2 * gr2 + p1 / r * (std::norm(g1) + std::norm(g2) - gr2);
        }
        hess += h;
        // grad(lap phi) . grad|u|^2 with grad|u|^2 = 2 Re(conj(u) grad u).
        lap4 += dlap * 2.0 * std::real(std::conj(v) * gr);
        lapn += lap * qp;
        if (outer) edge += q;
      }
    }
  s.pot = pot * cell;
  s.H = 0.5 * s.gradnorm_sq - s.pot / e;
  s.K = gx - p.k_coeff() * s.pot;
  s.V = V * cell;
  s.dV = 4.0 * dV * cell;
  s.zR = z * cell;
  s.dzR = 2.0 * dz * cell;
  const double zdd = 4.0 * hess * cell + lap4 * cell - 2.0 * p.alpha / e * lapn * cell;
  s.AR = zdd - 8.0 * s.K;
  s.edge_fraction = s.M > 0 ? edge * cell / s.M : 0.0;
  return s;
}

VirialCheck virial_series(const EvolutionTrace& trace, double t_max) {
  std::vector<const TraceSample*> sm;
  for (const auto& s : trace.samples)
    if (s.t <= t_max) sm.push_back(&s);
  if (sm.size() < 5) throw PreconditionError("virial_series: need at least 5 samples in the window");
  VirialCheck c;
  c.V_concave = true;
  for (std::size_t i = 1; i + 1 < sm.size(); ++i) {
    const double h0 = sm[i]->t - sm[i - 1]->t, h1 = sm[i + 1]->t - sm[i]->t;
    // Second derivative on a possibly uneven stencil.
    const double ddV = 2.0 * (h0 * sm[i + 1]->V - (h0 + h1) * sm[i]->V + h1 * sm[i - 1]->V) / (h0 * h1 * (h0 + h1));
    const double ddz =
        2.0 * (h0 * sm[i + 1]->zR - (h0 + h1) * sm[i]->zR + h1 * sm[i - 1]->zR) / (h0 * h1 * (h0 + h1));
    const double dV = (sm[i + 1]->V - sm[i - 1]->V) / (h0 + h1);
    const double k8 = 8.0 * std::abs(sm[i]->K);
    c.max_rel_V = std::max(c.max_rel_V, std::abs(ddV - 8.0 * sm[i]->K) / k8);
    c.max_rel_z = std::max(c.max_rel_z, std::abs(ddz - 8.0 * sm[i]->K - sm[i]->AR) / k8);
    c.max_rel_dV = std::max(c.max_rel_dV, std::abs(dV - sm[i]->dV) / std::max(std::abs(sm[i]->dV), 1e-300));
    if (!(sm[i + 1]->V - 2.0 * sm[i]->V + sm[i - 1]->V < 0.0)) c.V_concave = false;
    ++c.points;
  }
  return c;
}

bool energy_trapping_check(const Field& u, double m_at_mass, const ModelParams& p, double tol) {
  const FunctionalReport r = evaluate(u, p);
  if (!(r.energy < m_at_mass) || !(r.semivirial < 0.0))
    throw PreconditionError("energy_trapping_check: needs H < m and K < 0 (H = " + std::to_string(r.energy) +
                            ", m = " + std::to_string(m_at_mass) + ", K = " + std::to_string(r.semivirial) + ")");
  return r.semivirial <= r.energy - m_at_mass + tol;
}

}  // namespace wgnls
