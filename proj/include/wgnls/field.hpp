#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "wgnls/grid.hpp"

namespace wgnls {

using cplx = std::complex<double>;

// Immutable complex samples on a Grid.
class Field {
 public:
  // Throws InvalidArgument on size mismatch or non-finite samples.
  Field(const Grid& grid, std::vector<cplx> values);

  static Field zeros(const Grid& grid);
  // f(x1, x2, y); x2 is 0 when d == 1.
  static Field sample(const Grid& grid,
                      const std::function<cplx(double, double, double)>& f);

  const Grid& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  Field scaled(cplx factor) const;

 private:
  struct Unchecked {};
  Field(const Grid& grid, std::vector<cplx> values, Unchecked)
      : grid_(grid), values_(std::move(values)) {}
  friend Field adopt_values(const Grid&, std::vector<cplx>);

  Grid grid_;
  std::vector<cplx> values_;
};

// Wraps samples the caller already knows are finite (internal fast path).
Field adopt_values(const Grid& grid, std::vector<cplx> values);

}  // namespace wgnls
