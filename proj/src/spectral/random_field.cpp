#include "wgnls/random_field.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "wgnls/rng.hpp"

namespace wgnls {

Field random_smooth_field(const Grid& grid, std::uint64_t seed, std::uint64_t index) {
  const CounterRng rng(seed, index);
  std::uint64_t ctr = 0;
  auto draw = [&](double lo, double hi) { return rng.uniform(ctr++, lo, hi); };

  const double width = draw(1.0, 2.5);
  const double amp = draw(0.5, 1.5);
  const std::array<double, 2> centre{draw(-2.0, 2.0), draw(-2.0, 2.0)};
  const std::array<double, 2> drift{draw(-1.0, 1.0), draw(-1.0, 1.0)};
  const double y0 = draw(0.0, 2.0 * std::numbers::pi);

  // c[m][k]: Hermite-like degree m in x, Fourier mode k - 2 in y.
  std::array<std::array<cplx, 5>, 3> coef{};
  for (int m = 0; m < 3; ++m)
    for (int k = 0; k < 5; ++k) {
      const double decay = std::pow(0.5, m + std::abs(k - 2));
      coef[m][k] = std::polar(draw(0.0, 1.0) * decay, draw(0.0, 2.0 * std::numbers::pi));
    }
  coef[0][2] += 1.0;

  const int d = grid.d();
  return Field::sample(grid, [&](double x1, double x2, double y) {
    const double z1 = (x1 - centre[0]) / width;
    const double z2 = d == 2 ? (x2 - centre[1]) / width : 0.0;
    const double r2 = z1 * z1 + z2 * z2;
    const double poly[3] = {1.0, z1 + z2, z1 * z1 - z2 * z2 + z1 * z2};
    cplx s = 0.0;
    for (int m = 0; m < 3; ++m)
      for (int k = 0; k < 5; ++k) s += coef[m][k] * poly[m] * std::polar(1.0, (k - 2) * (y - y0));
    const double phase = drift[0] * x1 + (d == 2 ? drift[1] * x2 : 0.0);
    return amp * std::exp(-0.5 * r2) * std::polar(1.0, phase) * s;
  });
}

}  // namespace wgnls
