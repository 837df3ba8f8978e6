#pragma once

#include <memory>
#include <span>
#include <vector>

#include "wgnls/field.hpp"

namespace wgnls {

// FFTW plans and wavenumber tables for one Grid. Single owner; not thread safe.
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(const Grid& grid);
  ~SpectralWorkspace();
  SpectralWorkspace(const SpectralWorkspace&) = delete;
  SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

  const Grid& grid() const { return grid_; }

  // Unnormalized forward transform (sign -1).
  void forward(std::span<const cplx> in, std::span<cplx> out);
  // Inverse transform including the 1/N factor.
  void backward(std::span<const cplx> in, std::span<cplx> out);

  // |xi|^2 and k^2 at each node of the transformed layout.
  std::span<const double> xi_sq() const { return xi_sq_; }
  std::span<const double> k_sq() const { return k_sq_; }

 private:
  struct Plans;
  Grid grid_;
  std::unique_ptr<Plans> plans_;
  std::vector<double> xi_sq_, k_sq_;
};

// Per-thread cached workspace for a grid. Callers keep the pointer alive for
// as long as they use it; eviction from the cache does not invalidate it.
std::shared_ptr<SpectralWorkspace> workspace_for(const Grid& grid);

struct DerivativeNorms {
  double gradx_sq = 0.0;
  double grady_sq = 0.0;
};

DerivativeNorms derivative_norms(const Field& u);
double lp_norm(const Field& u, double p);
// Fourier-side mass (Parseval).
double spectral_mass(const Field& u);

// Samples of t^{d/2} u(t x, y) by band-limited interpolation.
// Throws MassLeakError when the relative mass change exceeds leak_tol.
Field resample_scale(const Field& u, double t, double leak_tol = 1e-6);

// Band-limited interpolation onto another grid with the same d and Ny.
// Target nodes outside the source box receive zero.
Field regrid(const Field& u, const Grid& target);

// Periodic shift by (sx1, sx2, sy) in physical units, exact for band-limited data.
Field spectral_shift(const Field& u, double sx1, double sx2, double sy);

}  // namespace wgnls
