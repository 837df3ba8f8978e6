#include "wgnls/field.hpp"

#include <cmath>

#include "wgnls/error.hpp"

namespace wgnls {

Field::Field(const Grid& grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw InvalidArgument("field: expected " + std::to_string(grid_.size()) +
                          " samples, got " + std::to_string(values_.size()));
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidArgument("field: non-finite sample");
}

Field adopt_values(const Grid& grid, std::vector<cplx> values) {
  if (values.size() != grid.size()) throw InvalidArgument("field: size mismatch");
  return Field(grid, std::move(values), Field::Unchecked{});
}

Field Field::zeros(const Grid& grid) {
  return adopt_values(grid, std::vector<cplx>(grid.size()));
}

Field Field::sample(const Grid& g,
                    const std::function<cplx(double, double, double)>& f) {
  std::vector<cplx> v(g.size());
  const std::size_t nx2 = g.d() == 2 ? g.Nx() : 1;
  const std::size_t n1 = g.Nx(), ny = g.Ny();
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t b = 0; b < nx2; ++b) {
      const double x1 = g.x(a);
      const double x2 = g.d() == 2 ? g.x(b) : 0.0;
      for (std::size_t k = 0; k < ny; ++k) v[(a * nx2 + b) * ny + k] = f(x1, x2, g.y(k));
    }
  return Field(g, std::move(v));
}

Field Field::scaled(cplx factor) const {
  std::vector<cplx> v(values_);
  for (auto& z : v) z *= factor;
  return Field(grid_, std::move(v));
}

}  // namespace wgnls
