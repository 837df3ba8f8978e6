#include <doctest.h>

#include <cmath>

#include "wgnls/dynamics.hpp"
#include "wgnls/error.hpp"
#include "wgnls/euclidean.hpp"
#include "wgnls/functionals.hpp"

using namespace wgnls;

namespace {
const ModelParams kModel = ModelParams::make(1, Rational(6));

Field small_gaussian(const Grid& g, double amp) {
  return Field::sample(g, [amp](double x, double, double y) { return amp * std::exp(-x * x / 8) * (1.0 + 0.3 * std::cos(y)); });
}
}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("cut-off is C2 at the joins and vanishes beyond 2") {
    for (double s : {1.0, 2.0}) {
      const double e = 1e-9;
      CHECK(chi(s - e) == doctest::Approx(chi(s + e)).epsilon(1e-6));
      CHECK(chi_d1(s - e) == doctest::Approx(chi_d1(s + e)).epsilon(1e-6));
      CHECK(std::abs(chi_d2(s - e) - chi_d2(s + e)) < 1e-6);
    }
    CHECK(chi(0.5) == 0.25);
    CHECK(chi(2.5) == 0.0);
    CHECK(chi_d1(0.5) == 1.0);
    CHECK(chi_d2(0.5) == 2.0);
    // Derivatives agree with finite differences inside the quintic piece.
    const double s = 1.4, h = 1e-5;
    CHECK(chi_d1(s) == doctest::Approx((chi(s + h) - chi(s - h)) / (2 * h)).epsilon(1e-7));
    CHECK(chi_d3(s) == doctest::Approx((chi_d2(s + h) - chi_d2(s - h)) / (2 * h)).epsilon(1e-6));
  }

  TEST_CASE("zero data stays zero") {
    const Grid g = make_grid(1, 10.0, 64, 8);
    EvolutionConfig cfg;
    cfg.t_end = 0.1;
    const auto tr = evolve(Field::zeros(g), kModel, cfg);
    CHECK(tr.classification == Outcome::global_scattering_consistent);
    REQUIRE(tr.final_field.has_value());
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs((*tr.final_field)[i]) == 0.0);
  }

  TEST_CASE("small data disperses and keeps its mass") {
    const Grid g = make_grid(1, 60.0, 512, 8);
    EvolutionConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 4.0;
    cfg.record_every = 100;
    const auto tr = evolve(small_gaussian(g, 0.3), kModel, cfg);
    CHECK(tr.classification == Outcome::global_scattering_consistent);
    const auto &a = tr.samples.front(), &b = tr.samples.back();
    CHECK(b.M == doctest::Approx(a.M).epsilon(1e-12));
    CHECK(b.pot < 0.1 * a.pot);
    CHECK(b.V > a.V);
  }

  TEST_CASE("the line soliton is a standing wave") {
    const Grid g = make_grid(1, 20.0, 512, 8);
    const Field P = soliton_field(g, 1.0, kModel);
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.5;
    cfg.record_every = 100;
    const auto tr = evolve(P, kModel, cfg);
    REQUIRE(tr.final_field.has_value());
    const Field& u = *tr.final_field;
    double err = 0, phase_err = 0;
    for (std::size_t i = 0; i < P.size(); ++i) {
      err = std::max(err, std::abs(std::abs(u[i]) - std::abs(P[i])));
      // u = exp(i omega t) P with omega = 1.
      if (std::abs(P[i]) > 0.5) phase_err = std::max(phase_err, std::abs(u[i] - std::polar(1.0, 0.5) * P[i]));
    }
    CHECK(err < 1e-4);
    CHECK(phase_err < 1e-4);
  }

  TEST_CASE("Strang step is second order") {
    const Grid g = make_grid(1, 20.0, 128, 8);
    const Field u0 = small_gaussian(g, 0.5);
    auto advance = [&](double dt) {
      Field u = u0;
      for (int n = 0; n < static_cast<int>(std::lround(0.4 / dt)); ++n) u = strang_step(u, dt, kModel);
      return u;
    };
    const Field a = advance(0.02), b = advance(0.01), c = advance(0.005);
    double e1 = 0, e2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      e1 += std::norm(a[i] - b[i]);
      e2 += std::norm(b[i] - c[i]);
    }
    CHECK(std::sqrt(e1 / e2) == doctest::Approx(4.0).epsilon(0.2));
  }

  TEST_CASE("virial flux matches the time derivative of V") {
    const Grid g = make_grid(1, 20.0, 512, 8);
    const Field u = soliton_field(g, 1.0, kModel).scaled(1.05);
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    cfg.record_every = 5;
    const auto tr = evolve(u, kModel, cfg);
    const auto vc = virial_series(tr);
    CHECK(vc.points >= 5);
    CHECK(vc.max_rel_dV < 1e-3);
    CHECK(vc.max_rel_V < 1e-2);
    CHECK(vc.max_rel_z < 1e-2);
  }

  TEST_CASE("a box that is too small reports a leak") {
    const Grid g = make_grid(1, 6.0, 128, 8);
    EvolutionConfig cfg;
    cfg.t_end = 3.0;
    cfg.record_every = 10;
    CHECK_THROWS_AS(evolve(small_gaussian(g, 0.3), kModel, cfg), MassLeakError);
  }

  TEST_CASE("energy trapping needs H < m and K < 0") {
    const Grid g = make_grid(1, 20.0, 512, 8);
    const Field P = soliton_field(g, 1.0, kModel);
    const auto r = evaluate(P.scaled(1.1), kModel);
    CHECK(r.semivirial < 0);
    CHECK(energy_trapping_check(P.scaled(1.1), r.energy + 1.0, kModel));
    CHECK_THROWS_AS(energy_trapping_check(P.scaled(1.1), r.energy - 1.0, kModel), PreconditionError);
    CHECK_THROWS_AS(energy_trapping_check(small_gaussian(g, 0.3), 10.0, kModel), PreconditionError);
  }

  TEST_CASE("outcome names") {
    CHECK(to_string(Outcome::blowup_detected) == "blowup_detected");
    CHECK(to_string(Outcome::global_scattering_consistent) == "global_scattering_consistent");
  }
}
