#include "wgnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wgnls/error.hpp"

namespace wgnls {

Grid Grid::make(int d, double Lx, std::size_t Nx, std::size_t Ny) {
  if (d != 1 && d != 2) throw InvalidArgument("grid: d must be 1 or 2, got " + std::to_string(d));
  if (!(Lx > 0.0) || !std::isfinite(Lx)) throw InvalidArgument("grid: Lx must be positive and finite");
  if (Nx < 8 || Nx % 2 != 0) throw InvalidArgument("grid: Nx must be even and >= 8");
  if (Ny < 8 || Ny % 2 != 0) throw InvalidArgument("grid: Ny must be even and >= 8");
  return Grid(d, Lx, Nx, Ny);
}

double Grid::hy() const { return 2.0 * std::numbers::pi / static_cast<double>(Ny_); }

double Grid::cell() const {
  const double h = hx();
  return (d_ == 1 ? h : h * h) * hy();
}

static double fft_index(std::size_t j, std::size_t n) {
  const auto jj = static_cast<long long>(j);
  const auto nn = static_cast<long long>(n);
  return static_cast<double>(jj < nn / 2 ? jj : jj - nn);
}

double Grid::xi(std::size_t j) const { return std::numbers::pi / Lx_ * fft_index(j, Nx_); }

double Grid::ky(std::size_t k) const { return fft_index(k, Ny_); }

}  // namespace wgnls
