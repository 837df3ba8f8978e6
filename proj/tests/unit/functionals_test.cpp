#include <doctest.h>

#include <cmath>
#include <limits>

#include "../oracles.hpp"
#include "wgnls/error.hpp"
#include "wgnls/exponents.hpp"
#include "wgnls/functionals.hpp"
#include "wgnls/mei.hpp"
#include "wgnls/random_field.hpp"

using namespace wgnls;

namespace {
const ModelParams kModel = ModelParams::make(1, Rational(6));
}

TEST_SUITE("functionals") {
  TEST_CASE("rational arithmetic is exact and normalized") {
    const Rational a(6, -4);
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK(a + Rational(3, 2) == Rational(0));
    CHECK(Rational(1, 3) * Rational(3) == Rational(1));
    CHECK(Rational::from_double(0.75) == Rational(3, 4));
    CHECK_THROWS_AS(Rational(1, 0), InvalidArgument);
    CHECK_THROWS_AS(Rational(0).reciprocal(), InvalidArgument);
  }

  TEST_CASE("model window is enforced") {
    CHECK_NOTHROW(ModelParams::make(1, Rational(6)));
    CHECK_THROWS_AS(ModelParams::make(1, Rational(4)), InvalidArgument);
    CHECK_THROWS_AS(ModelParams::make(2, Rational(4)), InvalidArgument);
    CHECK_THROWS_AS(ModelParams::make(2, Rational(2)), InvalidArgument);
    CHECK(kModel.k_coeff() == doctest::Approx(6.0 / 16.0));
  }

  TEST_CASE("report relations") {
    const auto r = make_report(2.0, 3.0, 0.5, 4.0, kModel);
    CHECK(r.energy == doctest::Approx(0.5 * 3.5 - 4.0 / 8.0));
    CHECK(r.semivirial == doctest::Approx(3.0 - 0.375 * 4.0));
    CHECK(r.action == doctest::Approx(r.energy - 0.5 * r.semivirial));
    const auto l = energy_lambda(r, 2.0, kModel);
    CHECK(l.energy == doctest::Approx(0.5 * (3.0 + 2.0 * 0.5) - 0.5));
  }

  TEST_CASE("closed-form t* agrees with root finding") {
    const Grid g = make_grid(1, 20.0, 128, 8);
    for (std::uint64_t i = 0; i < 50; ++i) {
      const auto r = evaluate(random_smooth_field(g, 11, i), kModel);
      const double ts = tstar(r.gradx_sq, r.pot, kModel);
      CHECK(ts == doctest::Approx(oracle::tstar_root(r.gradx_sq, r.pot, 6.0, 1)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(tstar(0.0, 1.0, kModel), DegenerateFieldError);
  }

  TEST_CASE("t* puts the field on K = 0") {
    const Grid g = make_grid(1, 30.0, 256, 8);
    const Field u = Field::sample(g, [](double x, double, double) { return cplx(std::exp(-x * x / 4)); });
    const auto on = evaluate(scale_ut(u, tstar(u, kModel)), kModel);
    CHECK(std::abs(on.semivirial) < 1e-10 * (on.gradx_sq + on.pot));
  }

  TEST_CASE("GN ratio is invariant under x-scaling and phase") {
    const Grid g = make_grid(1, 30.0, 256, 8);
    const Field u = random_smooth_field(g, 5, 1);
    const double r = gn_ratio(u, kModel);
    CHECK(gn_ratio(scale_ut(u, 1.4), kModel) == doctest::Approx(r).epsilon(1e-9));
    CHECK(gn_ratio(u.scaled(std::polar(1.0, 0.7)), kModel) == doctest::Approx(r).epsilon(1e-12));
    CHECK_THROWS_AS(gn_ratio(Field::zeros(g), kModel), DegenerateFieldError);
  }

  TEST_CASE("exponent table for d = 2, alpha = 3") {
    const auto t = exponent_table(2, Rational(3));
    CHECK(t.ba.inv.reciprocal() == Rational(15, 2));
    CHECK(t.bb.inv.reciprocal() == Rational(15, 7));
    CHECK(t.br.inv.reciprocal() == Rational(5));
    CHECK(t.s_alpha == Rational(1, 3));
    CHECK(t.all_identities());
  }

  TEST_CASE("scale exponents for d = 1, alpha = 6") {
    const auto t = exponent_table(1, Rational(6));
    CHECK(t.s_alpha == Rational(1, 6));
    CHECK(t.theta == Rational(5, 9));
    CHECK(t.s_in_range());
    CHECK(t.theta_in_range());
  }

  TEST_CASE("energy is coercive where K > 0") {
    const Grid g = make_grid(1, 40.0, 512, 16);
    const double lo = 0.5 - 2.0 / 6.0;
    int tested = 0;
    for (std::uint64_t i = 0; i < 40; ++i) {
      const Field u = random_smooth_field(g, 17, i);
      const double ts = tstar(u, kModel);
      if (ts < 0.3 || ts > 4.0) continue;
      const auto r = evaluate(scale_ut(u, 0.7 * ts), kModel);
      REQUIRE(r.semivirial > 0);
      const double grad = r.gradx_sq + r.grady_sq;
      CHECK(lo * grad <= r.energy);
      CHECK(r.energy <= 0.5 * grad);
      ++tested;
    }
    CHECK(tested >= 5);
  }

  TEST_CASE("exponent table pair cases") {
    CHECK(exponent_table(1, Rational(6)).case_index == 1);
    CHECK(exponent_table(2, Rational(3)).case_index == 1);
    // alpha > 4/d already exceeds 2/(d-1) for d >= 3, so the middle case never fires.
    CHECK(exponent_table(3, Rational(3, 2)).case_index == 3);
    CHECK(exponent_table(4, Rational(5, 4)).case_index == 3);
    for (auto [d, a] : {std::pair{3, Rational(3, 2)}, std::pair{3, Rational(19, 10)}, std::pair{4, Rational(5, 4)}})
      CHECK(exponent_table(d, a).all_identities());
    CHECK_THROWS_AS(exponent_table(3, Rational(2)), InvalidArgument);
  }

  TEST_CASE("MEI functional") {
    const MeiCurve curve({1.0, 2.0, 3.0}, {3.0, 2.0, 1.5});
    CHECK(curve(1.5) == doctest::Approx(2.5));
    CHECK_THROWS_AS(curve(0.5), ExtrapolationError);
    CHECK(std::isinf(mei(2.0, 2.0, curve)));
    CHECK(std::isinf(mei(3.0, 1.6, curve)));
    CHECK_THROWS_AS(mei(5.0, 1.0, curve), ExtrapolationError);
    const double d = mei(2.0, 1.0, curve);
    CHECK(std::isfinite(d));
    CHECK(d > 0);
    CHECK(mei(2.0, 1.2, curve) > d);
    CHECK(mei(2.5, 1.0, curve) > d);
    CHECK_THROWS_AS(MeiCurve({1.0, 1.0}, {1.0, 1.0}), InvalidArgument);
    // Flat curve reaching c = 0: D vanishes at the origin.
    const MeiCurve flat({0.0, 1.0, 2.0}, {1.0, 1.0, 1.0});
    CHECK(mei(1e-6, 0.0, flat) < 1e-5);
    CHECK(mei(1e-6, 0.0, flat) > 0.0);
    const auto band = mei_band(2.0, 1.0, MeiCurve({1.0, 2.0, 3.0}, {3.0, 2.0, 1.5}, {0.1, 0.1, 0.1}));
    CHECK(band.lower <= band.value);
    CHECK(band.value <= band.upper);
  }
}
