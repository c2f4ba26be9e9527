#include "explab/schrod.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace explab;
using Catch::Approx;

namespace {

RationalPoly accel(const Rational& g) { return RationalPoly::monomial(Rational(g / 2), 2); }

double slice_norm(const WaveField& w, std::size_t k) {
  double acc = 0.0;
  for (std::size_t j = 0; j < w.nx(); ++j) acc += std::norm(w.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j))) * w.h;
  return std::sqrt(acc);
}

const Potential no_field = [](double, double) { return 0.0; };

}  // namespace

TEST_CASE("gaussian packet") {
  const auto psi = gaussian_packet(1.3, 0.5, 0.8, 0.9);
  const double s2 = 0.81;
  for (double x : {-1.0, 0.5, 2.0}) {
    const cplx want = std::pow(2 * std::numbers::pi * s2, -0.25) * std::exp(-(x - 0.5) * (x - 0.5) / (4 * s2)) *
                      std::polar(1.0, 0.8 * (x - 0.5));
    CHECK(std::abs(psi(x, 0.0) - want) <= 1e-14);
  }
  const auto w = sample(psi, 1.3, GridSpec{-20, 20, 801, 0, 0.25, 9});
  for (std::size_t k = 0; k < w.nt(); ++k) CHECK(slice_norm(w, k) == Approx(1.0).margin(1e-6));
  CHECK_THROWS(gaussian_packet(1.0, 0, 0, 0.0));
}

TEST_CASE("free residual converges") {
  const auto psi = gaussian_packet(1.0, 0.0, 0.5, 1.0);
  const auto study = residual_convergence(psi, 1.0, 1.0, no_field, GridSpec{-12, 12, 241, 0, 0.025, 11}, 5);
  for (std::size_t k = 1; k < study.residual.size(); ++k) CHECK(study.residual[k] < study.residual[k - 1]);
  CHECK(study.residual.back() <= 1e-6);
  for (double o : study.orders) {
    CHECK(o >= 1.8);
    CHECK(o <= 4.2);
  }
  CHECK_THROWS(schrodinger_residual(sample(psi, 1.0, GridSpec{-1, 1, 4, 0, 0.1, 5}), 1.0, 1.0, no_field));
}

TEST_CASE("milne phase closed forms") {
  const double m = 1.7, x = 0.6, t = 1.4;
  CHECK(milne_phase(m, RationalPoly{})(x, t) == 0.0);
  const Rational v(3, 4);
  CHECK(milne_phase(m, RationalPoly{Rational(0), v})(x, t) ==
        Approx(0.5 * m * v.get_d() * v.get_d() * t + m * v.get_d() * x).epsilon(1e-14));
  const double g = 2.5;
  CHECK(milne_phase(m, accel(Rational(5, 2)))(x, t) == Approx(m / 6 * g * g * t * t * t + m * g * t * x).epsilon(1e-14));
  // one implementation with the group-level phase
  const auto r = milne_element_1d(accel(Rational(5, 2)));
  CHECK(milne_phase(m, accel(Rational(5, 2)))(x, t) == theta_milne_source(m, r, Event{Eigen::Vector3d(x, 0, 0), t}));
}

TEST_CASE("transform_wave basics") {
  const auto psi = gaussian_packet(1.0, 0.0, 0.3, 1.0);
  const GridSpec grid{-15, 15, 301, 0, 0.1, 5};
  const auto w = sample(psi, 1.0, grid);
  // interpolation at the nodes themselves, exact up to rounding
  CHECK((transform_wave(w, RationalPoly{}, 1.0).values - w.values).cwiseAbs().maxCoeff() <= 1e-14);

  // constant shift by a whole number of cells: pure translation, no phase
  const auto shifted = transform_wave(w, RationalPoly::constant(Rational(1)), 1.0);
  const auto exact = sample(transform_function(psi, RationalPoly::constant(Rational(1)), 1.0), 1.0, grid);
  CHECK((shifted.values - exact.values).cwiseAbs().maxCoeff() <= 1e-12);
  for (double xp : {-2.0, 0.5, 3.0}) CHECK(std::abs(transform_function(psi, RationalPoly::constant(Rational(1)), 1.0)(xp, 0.3) - psi(xp - 1, 0.3)) == 0.0);

  // a boost gives the analytic boosted packet
  const double m = 1.0, v = 0.5;
  const auto boosted = transform_wave(w, RationalPoly{Rational(0), Rational(1, 2)}, m);
  const auto analytic = sample(gaussian_packet(m, 0.0, 0.3 + m * v, 1.0), m, grid);
  CHECK((boosted.values - analytic.values).cwiseAbs().maxCoeff() <= 1e-5);
  for (std::size_t k = 0; k < w.nt(); ++k) CHECK(slice_norm(boosted, k) == Approx(slice_norm(w, k)).epsilon(1e-6));

  // support runs off a tight grid
  const auto tight = sample(psi, 1.0, GridSpec{-3, 3, 61, 0, 0.1, 5});
  CHECK_THROWS_AS(transform_wave(tight, RationalPoly::constant(Rational(2)), 1.0), SupportError);
}

TEST_CASE("accelerated frame covariance fixes the gravitational mass") {
  const auto A = accel(Rational(1));
  const double m = 1.0;
  const auto field = transform_function(gaussian_packet(m, 0.0, 0.5, 1.0), A, m);
  const auto phi = frame_potential(A);
  const GridSpec base{-12, 12, 61, 0, 0.1, 11};
  const auto equal = residual_convergence(field, m, m, phi, base, 4);
  CHECK(equal.final_order() >= 1.8);
  const auto twice = residual_convergence(field, m, 2 * m, phi, base, 4);
  CHECK(twice.residual.back() > 100 * equal.residual.back());
  CHECK(twice.residual.back() > 0.5 * twice.residual.front());

  // the opposite gauge sign is not a solution
  const Potential flipped = [phi](double x, double t) { return -phi(x, t); };
  CHECK(residual_convergence(field, m, m, flipped, base, 2).residual.back() > 100 * equal.residual.back());
}

TEST_CASE("mass equality sweep") {
  const std::vector<double> ratios{0.5, 0.9, 1.0, 1.1, 2.0};
  const auto s = mass_equality_sweep(accel(Rational(1)), 1.0, ratios);
  CHECK(!s.degenerate);
  CHECK(s.best_ratio == 1.0);
  CHECK(s.margin >= 10.0);
  CHECK(s.rows.size() == ratios.size());
  CHECK(mass_equality_sweep(RationalPoly{}, 1.0, ratios).degenerate);
  CHECK(mass_equality_sweep(RationalPoly{Rational(0), Rational(1)}, 1.0, ratios).degenerate);
  CHECK_THROWS(mass_equality_sweep(accel(Rational(1)), 1.0, {0.5, 2.0}));
}
