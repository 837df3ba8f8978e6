#pragma once

#include <cstddef>
#include <vector>

namespace wgnls {

// Uniform grid on [-Lx, Lx)^d x [0, 2pi), periodic in every direction.
// Node layout is row-major with y fastest: index = ((j1*Nx + j2)*Ny + k).
class Grid {
 public:
  static Grid make(int d, double Lx, std::size_t Nx, std::size_t Ny);

  int d() const { return d_; }
  double Lx() const { return Lx_; }
  std::size_t Nx() const { return Nx_; }
  std::size_t Ny() const { return Ny_; }
  double hx() const { return 2.0 * Lx_ / static_cast<double>(Nx_); }
  double hy() const;
  // Quadrature weight of one node, hx^d * hy.
  double cell() const;
  // Number of x-points (Nx^d) and of all nodes (Nx^d * Ny).
  std::size_t nx_total() const { return d_ == 1 ? Nx_ : Nx_ * Nx_; }
  std::size_t size() const { return nx_total() * Ny_; }

  double x(std::size_t j) const { return -Lx_ + static_cast<double>(j) * hx(); }
  double y(std::size_t k) const { return static_cast<double>(k) * hy(); }
  // Wavenumbers in FFT order (0, 1, ..., N/2-1, -N/2, ..., -1).
  double xi(std::size_t j) const;
  double ky(std::size_t k) const;

  bool operator==(const Grid& o) const {
    return d_ == o.d_ && Lx_ == o.Lx_ && Nx_ == o.Nx_ && Ny_ == o.Ny_;
  }
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  Grid(int d, double Lx, std::size_t Nx, std::size_t Ny)
      : d_(d), Lx_(Lx), Nx_(Nx), Ny_(Ny) {}
  int d_;
  double Lx_;
  std::size_t Nx_, Ny_;
};

inline Grid make_grid(int d, double Lx, std::size_t Nx, std::size_t Ny) {
  return Grid::make(d, Lx, Nx, Ny);
}

}  // namespace wgnls
