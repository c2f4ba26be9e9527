#include "explab/bundle.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace explab;
using Catch::Approx;

namespace {

Section random_section(const TimeGrid& g, int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  std::vector<Eigen::VectorXcd> f;
  for (std::size_t k = 0; k < g.size(); ++k) {
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = cplx(n(rng), n(rng));
    f.push_back(v);
  }
  return {g, f};
}

Eigen::MatrixXcd random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd A(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) A(i, j) = cplx(n(rng), n(rng));
  return Eigen::HouseholderQR<Eigen::MatrixXcd>(A).householderQ();
}

std::vector<double> phases_of(const TimeGrid& g, double (*f)(double)) {
  std::vector<double> out;
  for (double t : g.nodes()) out.push_back(f(t));
  return out;
}

}  // namespace

TEST_CASE("grid and section validation") {
  CHECK_THROWS(TimeGrid({0.0}, {1.0}));
  CHECK_THROWS(TimeGrid({0.0, 0.0}, {1.0, 1.0}));
  CHECK_THROWS(TimeGrid({0.0, 1.0}, {1.0, 0.0}));
  CHECK_THROWS(TimeGrid({0.0, 1.0}, {1.0}));
  const auto g = TimeGrid::uniform(0.0, 1.0, 4);
  CHECK_THROWS(Section(g, std::vector<Eigen::VectorXcd>(3, Eigen::VectorXcd::Ones(2))));
  std::vector<Eigen::VectorXcd> mixed(4, Eigen::VectorXcd::Ones(2));
  mixed[2] = Eigen::VectorXcd::Ones(3);
  CHECK_THROWS(Section(g, mixed));
}

TEST_CASE("fiber inner product") {
  std::mt19937_64 rng(1);
  const auto g = TimeGrid::uniform(0.0, 2.0, 5);
  const auto s1 = random_section(g, 3, rng), s2 = random_section(g, 3, rng);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const cplx ss = fiber_inner(s1, s1, k);
    CHECK(ss.real() > 0);
    CHECK(ss.imag() == 0.0);
    const double alpha = 0.83;
    const cplx lhs = fiber_inner(std::polar(1.0, alpha) * s1, s2, k);
    CHECK(std::abs(lhs - std::polar(1.0, -alpha) * fiber_inner(s1, s2, k)) <= 1e-12);
  }
  std::vector<Eigen::VectorXcd> e0(5, Eigen::VectorXcd::Unit(2, 0)), e1(5, Eigen::VectorXcd::Unit(2, 1));
  CHECK(fiber_inner(Section(g, e0), Section(g, e1), 3) == cplx(0.0));
  CHECK_THROWS_AS(fiber_inner(s1, random_section(TimeGrid::uniform(0.0, 3.0, 5), 3, rng), 0), GridMismatch);
  CHECK_THROWS_AS(fiber_inner(s1, random_section(g, 2, rng), 0), GridMismatch);
}

TEST_CASE("direct integral norm") {
  const auto g = TimeGrid::uniform(0.0, 1.0, 6);
  CHECK(direct_integral_norm(Section(g, std::vector<Eigen::VectorXcd>(6, Eigen::VectorXcd::Zero(2)))) == 0.0);
  const Section unit(g, std::vector<Eigen::VectorXcd>(6, Eigen::VectorXcd::Unit(2, 1)));
  CHECK(direct_integral_norm(unit) == Approx(1.0).epsilon(1e-15));
  std::mt19937_64 rng(2);
  const auto s = random_section(g, 4, rng);
  CHECK(direct_integral_norm(cplx(2.0) * s) == Approx(2.0 * direct_integral_norm(s)).epsilon(1e-14));
}

TEST_CASE("bundle maps") {
  std::mt19937_64 rng(3);
  const auto g = TimeGrid::uniform(0.0, 1.0, 6);
  const auto s1 = random_section(g, 3, rng), s2 = random_section(g, 3, rng);
  const auto id = apply_bundle_map(BundleMap::identity(6, 3), s1);
  for (std::size_t k = 0; k < 6; ++k) CHECK(id[k] == s1[k]);

  const std::vector<double> xi{0.1, 1.0, -2.0, 3.0, 0.5, 4.0};
  const auto p1 = apply_bundle_map(BundleMap::phase(xi, 3), s1), p2 = apply_bundle_map(BundleMap::phase(xi, 3), s2);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(std::abs(fiber_inner(p1, s2, k) - std::polar(1.0, -xi[k]) * fiber_inner(s1, s2, k)) <= 1e-12);
    CHECK(std::abs(fiber_inner(p1, p2, k) - fiber_inner(s1, s2, k)) <= 1e-12);
  }

  std::vector<std::size_t> perm{3, 0, 5, 1, 4, 2};
  std::vector<Eigen::MatrixXcd> us;
  for (int k = 0; k < 6; ++k) us.push_back(random_unitary(3, rng));
  const BundleMap T(perm, us);
  const auto t1 = apply_bundle_map(T, s1), t2 = apply_bundle_map(T, s2);
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(fiber_inner(t1, t2, perm[k]) - fiber_inner(s1, s2, k)) <= 1e-12);
  CHECK(direct_integral_norm(t1) == Approx(direct_integral_norm(s1)).epsilon(1e-12));

  CHECK_THROWS(BundleMap({0, 0}, {Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(2, 2)}));
  CHECK_THROWS(BundleMap({1, 0}, {Eigen::MatrixXcd::Identity(2, 2), 2.0 * Eigen::MatrixXcd::Identity(2, 2)}));
  CHECK_THROWS(apply_bundle_map(BundleMap::identity(6, 2), s1));
}

TEST_CASE("ray equivalence recovers planted phases") {
  std::mt19937_64 rng(4);
  const auto g = TimeGrid::uniform(-3.0, 3.0, 25);
  const auto s = random_section(g, 4, rng);
  const auto planted = phases_of(g, [](double t) { return std::sin(t); });
  const auto r = ray_equivalent(s, s.with_phases(planted));
  REQUIRE(r.equivalent);
  const double first = std::fmod(planted[0] + 2 * std::numbers::pi, 2 * std::numbers::pi);
  CHECK(r.phases[0] >= 0.0);
  CHECK(r.phases[0] < 2 * std::numbers::pi);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(r.phases[k] - (planted[k] - planted[0] + first)) <= 1e-12);

  // large continuous phases unwrap without jumps when resolved by the grid
  const auto fine = TimeGrid::uniform(-3.0, 3.0, 201);
  const auto sf = random_section(fine, 2, rng);
  const auto big = phases_of(fine, [](double t) { return 3.0 * t * t; });
  const auto rb = ray_equivalent(sf, sf.with_phases(big));
  REQUIRE(rb.equivalent);
  for (std::size_t k = 1; k < fine.size(); ++k)
    CHECK(std::abs((rb.phases[k] - rb.phases[0]) - (big[k] - big[0])) <= 1e-12);
}

TEST_CASE("ray equivalence rejects non-unimodular and unrelated sections") {
  std::mt19937_64 rng(5);
  const auto g = TimeGrid::uniform(0.0, 1.0, 8);
  const auto s = random_section(g, 3, rng);
  const auto r = ray_equivalent(s, cplx(2.0) * s);
  CHECK(!r.equivalent);
  CHECK(r.phases.empty());
  CHECK(!r.reason.empty());
  for (int n = 0; n < 20; ++n) CHECK(!ray_equivalent(random_section(g, 2, rng), random_section(g, 2, rng)).equivalent);
  std::vector<Eigen::VectorXcd> f = s.fibers();
  f[4].setZero();
  CHECK_THROWS_AS(ray_equivalent(Section(g, f), s), DegenerateSection);
}

TEST_CASE("ray equivalence is an equivalence relation on planted examples") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const auto g = TimeGrid::uniform(0.0, 1.0, 10);
  for (int n = 0; n < 10; ++n) {
    const auto s = random_section(g, 3, rng);
    std::vector<double> a(10), b(10);
    for (auto& x : a) x = u(rng);
    for (auto& x : b) x = u(rng);
    const auto s2 = s.with_phases(a);
    std::vector<double> ab(10);
    for (int k = 0; k < 10; ++k) ab[k] = a[k] + b[k];
    const auto s3 = s.with_phases(ab);
    CHECK(ray_equivalent(s, s).equivalent);
    const auto fwd = ray_equivalent(s, s2), back = ray_equivalent(s2, s);
    REQUIRE(fwd.equivalent);
    REQUIRE(back.equivalent);
    for (int k = 0; k < 10; ++k) CHECK(std::abs(std::polar(1.0, fwd.phases[k] + back.phases[k]) - 1.0) <= 1e-12);
    const auto step = ray_equivalent(s2, s3), both = ray_equivalent(s, s3);
    REQUIRE(step.equivalent);
    REQUIRE(both.equivalent);
    for (int k = 0; k < 10; ++k)
      CHECK(std::abs(std::polar(1.0, fwd.phases[k] + step.phases[k] - both.phases[k]) - 1.0) <= 1e-12);

    // transition probabilities agree against any probe
    const auto probe = random_section(g, 3, rng);
    for (std::size_t k = 0; k < 10; ++k)
      CHECK(std::abs(std::abs(fiber_inner(s, probe, k)) - std::abs(fiber_inner(s2, probe, k))) <= 1e-9);
  }
}

TEST_CASE("section json round trip") {
  std::mt19937_64 rng(8);
  const auto s = random_section(TimeGrid::uniform(0.0, 1.0, 3), 2, rng);
  const auto back = section_from_json(nlohmann::json::parse(to_json(s).dump()));
  CHECK(back.grid() == s.grid());
  for (std::size_t k = 0; k < 3; ++k) CHECK(back[k] == s[k]);
}
