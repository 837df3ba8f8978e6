#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <deque>
#include <mutex>

#include "wgnls/error.hpp"
#include "wgnls/spectral.hpp"

namespace wgnls {

namespace {
// FFTW planning is not thread safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct SpectralWorkspace::Plans {
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::size_t n = 0;
};

SpectralWorkspace::SpectralWorkspace(const Grid& grid)
    : grid_(grid), plans_(std::make_unique<Plans>()) {
  const std::size_t n = grid.size();
  plans_->n = n;
  int dims[3];
  int rank = 0;
  dims[rank++] = static_cast<int>(grid.Nx());
  if (grid.d() == 2) dims[rank++] = static_cast<int>(grid.Nx());
  dims[rank++] = static_cast<int>(grid.Ny());
  {
    std::lock_guard lock(planner_mutex());
    plans_->buf = fftw_alloc_complex(n);
    if (!plans_->buf) throw Error("workspace: allocation failed");
    plans_->fwd = fftw_plan_dft(rank, dims, plans_->buf, plans_->buf, FFTW_FORWARD, FFTW_ESTIMATE);
    plans_->bwd = fftw_plan_dft(rank, dims, plans_->buf, plans_->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  xi_sq_.resize(n);
  k_sq_.resize(n);
  const std::size_t nx2 = grid.d() == 2 ? grid.Nx() : 1;
  const std::size_t ny = grid.Ny();
  for (std::size_t a = 0; a < grid.Nx(); ++a)
    for (std::size_t b = 0; b < nx2; ++b) {
      double xs = grid.xi(a) * grid.xi(a);
      if (grid.d() == 2) xs += grid.xi(b) * grid.xi(b);
      for (std::size_t k = 0; k < ny; ++k) {
        const std::size_t i = (a * nx2 + b) * ny + k;
        xi_sq_[i] = xs;
        k_sq_[i] = grid.ky(k) * grid.ky(k);
      }
    }
}

SpectralWorkspace::~SpectralWorkspace() {
  std::lock_guard lock(planner_mutex());
  if (plans_->fwd) fftw_destroy_plan(plans_->fwd);
  if (plans_->bwd) fftw_destroy_plan(plans_->bwd);
  if (plans_->buf) fftw_free(plans_->buf);
}

void SpectralWorkspace::forward(std::span<const cplx> in, std::span<cplx> out) {
  const std::size_t n = plans_->n;
  if (in.size() != n || out.size() != n) throw InvalidArgument("fft: size mismatch");
  std::memcpy(plans_->buf, in.data(), n * sizeof(cplx));
  fftw_execute(plans_->fwd);
  std::memcpy(static_cast<void*>(out.data()), plans_->buf, n * sizeof(cplx));
}

void SpectralWorkspace::backward(std::span<const cplx> in, std::span<cplx> out) {
  const std::size_t n = plans_->n;
  if (in.size() != n || out.size() != n) throw InvalidArgument("fft: size mismatch");
  std::memcpy(plans_->buf, in.data(), n * sizeof(cplx));
  fftw_execute(plans_->bwd);
  const double s = 1.0 / static_cast<double>(n);
  const auto* b = reinterpret_cast<const cplx*>(plans_->buf);
  for (std::size_t i = 0; i < n; ++i) out[i] = b[i] * s;
}

std::shared_ptr<SpectralWorkspace> workspace_for(const Grid& grid) {
  thread_local std::deque<std::shared_ptr<SpectralWorkspace>> cache;
  for (auto& w : cache)
    if (w->grid() == grid) return w;
  if (cache.size() >= 6) cache.pop_front();
  cache.push_back(std::make_shared<SpectralWorkspace>(grid));
  return cache.back();
}

}  // namespace wgnls
