#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "wgnls/error.hpp"
#include "wgnls/spectral.hpp"

namespace wgnls {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<cplx> transform(const Field& u) {
  auto ws = workspace_for(u.grid());
  std::vector<cplx> uh(u.size());
  ws->forward(u.values(), uh);
  return uh;
}

// Periodic band-limited interpolant of a unit sample at separation s,
// with the Nyquist mode split symmetrically.
double periodic_sinc(double s, double Lx, std::size_t n) {
  const double half = 0.5 * std::numbers::pi * s / Lx;
  const double sh = std::sin(half);
  if (std::abs(sh) < 1e-15) return std::cos(static_cast<double>(n) * half) >= 0 ? 1.0 : -1.0;
  return std::sin(static_cast<double>(n) * half) / (static_cast<double>(n) * std::tan(half));
}

RowMat interpolation_matrix(const Grid& g, double t) {
  const std::size_t n = g.Nx();
  // The field is zero outside the box, not periodic; points mapped outside
  // receive no contribution.
  RowMat a = RowMat::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double xt = t * g.x(j);
    if (xt < -g.Lx() || xt >= g.Lx()) continue;
    for (std::size_t l = 0; l < n; ++l) a(j, l) = periodic_sinc(xt - g.x(l), g.Lx(), n);
  }
  return a;
}

double physical_mass(std::span<const cplx> v, double cell) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s * cell;
}

}  // namespace

DerivativeNorms derivative_norms(const Field& u) {
  const auto uh = transform(u);
  auto ws = workspace_for(u.grid());
  const auto xs = ws->xi_sq();
  const auto ks = ws->k_sq();
  double gx = 0.0, gy = 0.0;
  for (std::size_t i = 0; i < uh.size(); ++i) {
    const double w = std::norm(uh[i]);
    gx += xs[i] * w;
    gy += ks[i] * w;
  }
  const double scale = u.grid().cell() / static_cast<double>(u.size());
  return {gx * scale, gy * scale};
}

double spectral_mass(const Field& u) {
  const auto uh = transform(u);
  double s = 0.0;
  for (const auto& z : uh) s += std::norm(z);
  return s * u.grid().cell() / static_cast<double>(u.size());
}

double lp_norm(const Field& u, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm: p must be >= 1");
  double s = 0.0;
  if (p == 2.0) {
    for (const auto& z : u.values()) s += std::norm(z);
  } else {
    for (const auto& z : u.values()) s += std::pow(std::abs(z), p);
  }
  return std::pow(s * u.grid().cell(), 1.0 / p);
}

Field resample_scale(const Field& u, double t, double leak_tol) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("resample_scale: t must be positive");
  if (t == 1.0) return u;
  const Grid& g = u.grid();
  const double m0 = physical_mass(u.values(), g.cell());
  if (m0 == 0.0) return u;

  const RowMat a = interpolation_matrix(g, t);
  const auto n = static_cast<Eigen::Index>(g.Nx());
  const auto cols = static_cast<Eigen::Index>(2 * g.Ny());
  std::vector<cplx> out(u.size());
  const auto* src = reinterpret_cast<const double*>(u.values().data());
  auto* dst = reinterpret_cast<double*>(out.data());
  if (g.d() == 1) {
    Eigen::Map<const RowMat> in(src, n, cols);
    Eigen::Map<RowMat> res(dst, n, cols);
    res.noalias() = a * in;
  } else {
    std::vector<cplx> tmp(u.size());
    auto* mid = reinterpret_cast<double*>(tmp.data());
    Eigen::Map<const RowMat> in(src, n, n * cols);
    Eigen::Map<RowMat> first(mid, n, n * cols);
    first.noalias() = a * in;
    for (Eigen::Index r = 0; r < n; ++r) {
      Eigen::Map<const RowMat> blk(mid + r * n * cols, n, cols);
      Eigen::Map<RowMat> res(dst + r * n * cols, n, cols);
      res.noalias() = a * blk;
    }
  }
  const double amp = std::pow(t, 0.5 * g.d());
  for (auto& z : out) z *= amp;
  const double m1 = physical_mass(out, g.cell());
  const double leak = std::abs(m1 - m0) / m0;
  if (!(leak <= leak_tol))
    throw MassLeakError("resample_scale: relative mass change " + std::to_string(leak) +
                            " at t=" + std::to_string(t) + " exceeds tolerance",
                        leak);
  return Field(g, std::move(out));
}

Field regrid(const Field& u, const Grid& target) {
  const Grid& g = u.grid();
  if (target == g) return u;
  if (target.d() != g.d() || target.Ny() != g.Ny())
    throw InvalidArgument("regrid: target must share d and Ny with the source");
  const auto n = static_cast<Eigen::Index>(g.Nx());
  const auto m = static_cast<Eigen::Index>(target.Nx());
  RowMat a = RowMat::Zero(m, n);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double xj = target.x(static_cast<std::size_t>(j));
    if (xj < -g.Lx() || xj >= g.Lx()) continue;
    for (Eigen::Index l = 0; l < n; ++l)
      a(j, l) = periodic_sinc(xj - g.x(static_cast<std::size_t>(l)), g.Lx(), g.Nx());
  }
  const auto cols = static_cast<Eigen::Index>(2 * g.Ny());
  std::vector<cplx> out(target.size());
  const auto* src = reinterpret_cast<const double*>(u.values().data());
  auto* dst = reinterpret_cast<double*>(out.data());
  if (g.d() == 1) {
    Eigen::Map<const RowMat> in(src, n, cols);
    Eigen::Map<RowMat> res(dst, m, cols);
    res.noalias() = a * in;
  } else {
    // First axis, then the second axis block by block.
    std::vector<double> mid(static_cast<std::size_t>(m * n * cols));
    Eigen::Map<const RowMat> in(src, n, n * cols);
    Eigen::Map<RowMat> first(mid.data(), m, n * cols);
    first.noalias() = a * in;
    for (Eigen::Index r = 0; r < m; ++r) {
      Eigen::Map<const RowMat> blk(mid.data() + r * n * cols, n, cols);
      Eigen::Map<RowMat> res(dst + r * m * cols, m, cols);
      res.noalias() = a * blk;
    }
  }
  return Field(target, std::move(out));
}

Field spectral_shift(const Field& u, double sx1, double sx2, double sy) {
  const Grid& g = u.grid();
  auto uh = transform(u);
  const std::size_t nx2 = g.d() == 2 ? g.Nx() : 1;
  const std::size_t ny = g.Ny();
  auto phase = [](double k, double s, bool nyquist) {
    return nyquist ? cplx(std::cos(k * s), 0.0) : std::polar(1.0, -k * s);
  };
  for (std::size_t a = 0; a < g.Nx(); ++a) {
    const cplx pa = phase(g.xi(a), sx1, a == g.Nx() / 2);
    for (std::size_t b = 0; b < nx2; ++b) {
      const cplx pb = g.d() == 2 ? phase(g.xi(b), sx2, b == g.Nx() / 2) : cplx(1.0);
      for (std::size_t k = 0; k < ny; ++k)
        uh[(a * nx2 + b) * ny + k] *= pa * pb * phase(g.ky(k), sy, k == ny / 2);
    }
  }
  std::vector<cplx> out(u.size());
  workspace_for(g)->backward(uh, out);
  return Field(g, std::move(out));
}

}  // namespace wgnls
