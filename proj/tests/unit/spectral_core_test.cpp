#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "wgnls/error.hpp"
#include "wgnls/field_io.hpp"
#include "wgnls/functionals.hpp"
#include "wgnls/random_field.hpp"
#include "wgnls/spectral.hpp"

using namespace wgnls;

namespace {
const ModelParams kModel = ModelParams::make(1, Rational(6));

Field gaussian(const Grid& g, double s) {
  return Field::sample(g, [s](double x, double, double y) { return std::exp(-x * x / (2 * s * s)) * (1.0 + 0.2 * std::cos(y)); });
}
}  // namespace

TEST_SUITE("spectral_core") {
  TEST_CASE("grid layout and wavenumbers") {
    const Grid g = make_grid(1, 10.0, 64, 16);
    CHECK(g.hx() == doctest::Approx(20.0 / 64));
    CHECK(g.x(0) == -10.0);
    CHECK(g.size() == 64 * 16);
    CHECK(g.xi(1) == doctest::Approx(std::numbers::pi / 10.0));
    CHECK(g.xi(32) == doctest::Approx(-32 * std::numbers::pi / 10.0));
    CHECK(g.ky(15) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(make_grid(1, -1.0, 64, 16), InvalidArgument);
    CHECK_THROWS_AS(make_grid(3, 1.0, 64, 16), InvalidArgument);
  }

  TEST_CASE("fields reject non-finite samples") {
    const Grid g = make_grid(1, 10.0, 16, 8);
    std::vector<cplx> v(g.size(), 1.0);
    v[3] = cplx(std::nan(""), 0.0);
    CHECK_THROWS_AS(Field(g, v), InvalidArgument);
    CHECK_THROWS_AS(Field(g, std::vector<cplx>(5)), InvalidArgument);
  }

  TEST_CASE("derivative norms of a Gaussian match the integrals") {
    const Grid g = make_grid(1, 20.0, 256, 16);
    const Field u = Field::sample(g, [](double x, double, double y) { return std::exp(-x * x / 2) * std::cos(2 * y); });
    // |u|^2 = exp(-x^2) cos^2(2y): mass sqrt(pi) pi, gradx pi sqrt(pi)/2, grady 4 pi sqrt(pi).
    const double sp = std::sqrt(std::numbers::pi);
    CHECK(spectral_mass(u) == doctest::Approx(sp * std::numbers::pi).epsilon(1e-12));
    const auto dn = derivative_norms(u);
    CHECK(dn.gradx_sq == doctest::Approx(0.5 * sp * std::numbers::pi).epsilon(1e-12));
    CHECK(dn.grady_sq == doctest::Approx(4 * sp * std::numbers::pi).epsilon(1e-12));
  }

  TEST_CASE("x-scaling keeps mass and scales the norms") {
    const Grid g = make_grid(1, 20.0, 256, 16);
    const Field u = gaussian(g, 1.5);
    const auto r = evaluate(u, kModel);
    for (double t : {0.7, 1.0, 1.6}) {
      const auto s = evaluate(resample_scale(u, t), kModel);
      CHECK(s.mass == doctest::Approx(r.mass).epsilon(1e-12));
      CHECK(s.gradx_sq == doctest::Approx(t * t * r.gradx_sq).epsilon(1e-10));
      CHECK(s.grady_sq == doctest::Approx(r.grady_sq).epsilon(1e-10));
      CHECK(s.pot == doctest::Approx(std::pow(t, 3.0) * r.pot).epsilon(1e-10));
    }
    CHECK_THROWS_AS(resample_scale(u, 0.2), MassLeakError);
  }

  TEST_CASE("T_lambda scales mass, gradx and potential as its exponents say") {
    const Grid g = make_grid(1, 20.0, 256, 16);
    const Field u = gaussian(g, 1.5);
    const auto r = evaluate(u, kModel);
    const double lam = 1.3;
    const auto s = evaluate(scale_Tlambda(u, lam, kModel), kModel);
    // |T u|^2 = lam^{4/a} |u(lam x)|^2.
    CHECK(s.mass == doctest::Approx(std::pow(lam, 4.0 / 6 - 1) * r.mass).epsilon(1e-10));
    CHECK(s.gradx_sq == doctest::Approx(std::pow(lam, 4.0 / 6 + 1) * r.gradx_sq).epsilon(1e-10));
    CHECK(s.pot == doctest::Approx(std::pow(lam, 2.0 + 4.0 / 6 - 1) * r.pot).epsilon(1e-10));
  }

  TEST_CASE("spectral shift is exact for band-limited data") {
    const Grid g = make_grid(1, 10.0, 64, 8);
    const double h = g.hx();
    const Field u = gaussian(g, 1.0);
    const Field s = spectral_shift(u, 3 * h, 0.0, 0.0);
    for (std::size_t j = 3; j < g.Nx(); ++j) CHECK(std::abs(s[j * 8] - u[(j - 3) * 8]) < 1e-12);
  }

  TEST_CASE("regrid onto a finer box reproduces the samples") {
    const Grid a = make_grid(1, 15.0, 128, 8), b = make_grid(1, 20.0, 256, 8);
    const Field fa = gaussian(a, 1.0), fb = gaussian(b, 1.0);
    const Field r = regrid(fa, b);
    double err = 0;
    for (std::size_t i = 0; i < r.size(); ++i) err = std::max(err, std::abs(r[i] - fb[i]));
    CHECK(err < 1e-10);
  }

  TEST_CASE("field files round-trip bit for bit") {
    const Grid g = make_grid(1, 12.5, 32, 8);
    const Field u = random_smooth_field(g, 3, 4);
    std::stringstream ss;
    write_field(ss, u, 6.0);
    const auto back = read_field(ss);
    CHECK(back.alpha == 6.0);
    CHECK(back.field.grid() == g);
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(back.field[i] == u[i]);
    std::stringstream bad("WGNLS0 garbage");
    CHECK_THROWS_AS(read_field(bad), Error);
  }

  TEST_CASE("random fields are deterministic in seed and index") {
    const Grid g = make_grid(1, 20.0, 64, 8);
    const Field a = random_smooth_field(g, 1, 2), b = random_smooth_field(g, 1, 2), c = random_smooth_field(g, 1, 3);
    bool same = true, differ = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      same = same && a[i] == b[i];
      differ = differ || a[i] != c[i];
    }
    CHECK(same);
    CHECK(differ);
  }
}
