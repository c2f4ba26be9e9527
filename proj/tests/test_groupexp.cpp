#include "explab/classify.hpp"
#include "explab/group.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace explab;
using Catch::Approx;

namespace {

double mat_diff(const MilneElement& a, const MilneElement& b) { return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff(); }

double event_diff(const Event& a, const Event& b) { return std::max((a.x - b.x).cwiseAbs().maxCoeff(), std::abs(a.t - b.t)); }

GalileanElement translation(const Eigen::Vector3d& a) { return {Eigen::Matrix3d::Identity(), Eigen::Vector3d::Zero(), a, 0.0}; }
GalileanElement boost_by(const Eigen::Vector3d& v) { return {Eigen::Matrix3d::Identity(), v, Eigen::Vector3d::Zero(), 0.0}; }

/// m * (f_l' f_n - f_l f_n')(t) with f_n = t^n / n!
double milne_entry(double m, int l, int n, double t) {
  auto f = [](int k, double s) { return std::pow(s, k) / std::tgamma(k + 1.0); };
  auto fd = [&](int k, double s) { return k == 0 ? 0.0 : f(k - 1, s); };
  return m * (fd(l, t) * f(n, t) - f(l, t) * fd(n, t));
}

}  // namespace

TEST_CASE("group axioms on random samples") {
  std::mt19937_64 rng(7);
  for (int order : {1, 2, 3}) {
    const auto e = MilneElement::identity(order);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
      const auto r = random_element(order, rng), s = random_element(order, rng), g = random_element(order, rng);
      const auto p = random_event(rng);
      worst = std::max(worst, mat_diff(compose(compose(r, s), g), compose(r, compose(s, g))));
      worst = std::max(worst, mat_diff(compose(r, inverse(r)), e));
      worst = std::max(worst, mat_diff(compose(inverse(r), r), e));
      worst = std::max(worst, mat_diff(compose(e, r), r));
      worst = std::max(worst, event_diff(compose(r, s).act(p), r.act(s.act(p))));
      worst = std::max(worst, event_diff(inverse(r).act(r.act(p)), p));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("composition examples") {
  const Eigen::Vector3d a(1, 2, 3), b(-4, 0.5, 2);
  const auto ab = compose(translation(a), translation(b));
  CHECK((ab.a - (a + b)).norm() == 0.0);
  const Eigen::Vector3d v(0.3, -1, 2);
  const auto c = compose(translation(a), boost_by(v));
  const Event p{Eigen::Vector3d(1, 1, 1), 2.0};
  CHECK((act(c, p).x - (p.x + v * p.t + a)).norm() <= 1e-14);

  // m = 2: A(t) = R_r A_s(t) + A_r(t + b_s), expanded by hand
  std::mt19937_64 rng(3);
  const auto r = random_element(2, rng), s = random_element(2, rng);
  const auto rs = compose(r, s);
  for (double t : {-1.5, 0.0, 0.4, 2.0}) {
    const double u = t + s.b();
    const Eigen::Vector3d Ar = r.V().col(0) + u * r.V().col(1) + 0.5 * u * u * r.V().col(2);
    const Eigen::Vector3d As = s.V().col(0) + t * s.V().col(1) + 0.5 * t * t * s.V().col(2);
    CHECK((rs.A(t) - (r.R() * As + Ar)).norm() <= 1e-12);
  }
  CHECK_THROWS(compose(MilneElement::identity(1), MilneElement::identity(2)));
  CHECK_THROWS(MilneElement(2.0 * Eigen::Matrix3d::Identity(), Coefficients::Zero(3, 2), 0.0));
}

TEST_CASE("theta examples") {
  const auto th = theta_galilean(2.0);
  const Event p{Eigen::Vector3d(3, 0, 0), 1.0};
  CHECK(th(MilneElement::identity(1), p) == 0.0);
  CHECK(th(translation({1, 2, 3}).lift(), p) == 0.0);
  CHECK(th(boost_by({1, 0, 0}).lift(), p) == Approx(-5.0).margin(1e-15));

  // closed forms at the source point
  const double m = 1.5;
  const Eigen::Vector3d v(0.2, -0.7, 1.1), g(0.0, 0.0, -9.8), x(0.4, 1.0, -2.0);
  const double t = 1.3;
  Coefficients V = Coefficients::Zero(3, 3);
  V.col(0) = Eigen::Vector3d(5, 5, 5);
  CHECK(theta_milne_source(m, MilneElement(Eigen::Matrix3d::Identity(), V, 0.0), {x, t}) == 0.0);
  V.setZero();
  V.col(1) = v;
  CHECK(theta_milne_source(m, MilneElement(Eigen::Matrix3d::Identity(), V, 0.0), {x, t}) ==
        Approx(0.5 * m * v.squaredNorm() * t + m * v.dot(x)).epsilon(1e-14));
  V.setZero();
  V.col(2) = g;
  CHECK(theta_milne_source(m, MilneElement(Eigen::Matrix3d::Identity(), V, 0.0), {x, t}) ==
        Approx(m / 6.0 * g.squaredNorm() * t * t * t + m * t * g.dot(x)).epsilon(1e-14));
  CHECK(theta_milne(m)(MilneElement::identity(3), {x, t}) == 0.0);
}

TEST_CASE("finite exponent examples") {
  const double m = 1.75;
  const auto th = theta_galilean(m);
  std::mt19937_64 rng(5);
  const Eigen::Vector3d a(0.5, -1, 2), v(1, 0.25, -0.5);
  for (int n = 0; n < 20; ++n) {
    const auto p = random_event(rng);
    CHECK(std::abs(finite_exponent(th, translation(a).lift(), translation({1, 1, 1}).lift(), p)) <= 1e-12);
    CHECK(finite_exponent(th, translation(a).lift(), boost_by(v).lift(), p) == Approx(m * v.dot(a)).epsilon(1e-12));
  }
}

TEST_CASE("galilean exponent does not depend on time") {
  CHECK(max_time_variance(exponent_of(theta_galilean(1.75)), 1, 1000, 42) <= 1e-24);
  // the Milne exponent does
  CHECK(max_time_variance(exponent_of(theta_milne(1.0)), 2, 50, 42) > 1e-6);
}

TEST_CASE("cocycle identities") {
  CHECK(check_cocycle_identities(exponent_of(theta_galilean(1.75)), 1, 1000, 42).worst() <= 1e-12);
  for (int order : {1, 2, 3}) CHECK(check_cocycle_identities(exponent_of(theta_milne(1.3)), order, 1000, 9).worst() <= 1e-12);
  const auto xi = exponent_of(theta_galilean(1.0));
  const ExponentFn planted = [xi](const MilneElement& r, const MilneElement& s, const Event& p) {
    const bool ee = r.matrix().isIdentity(0.0) && s.matrix().isIdentity(0.0);
    return xi(r, s, p) + (ee ? 0.1 : 0.0);
  };
  const auto rep = check_cocycle_identities(planted, 1, 100, 1);
  CHECK(rep.max_violation.at("unit_ee") == Approx(0.1).epsilon(1e-9));
  CHECK(rep.seed == 1);
  CHECK(rep.samples == 100);
}

TEST_CASE("exponent shift under theta + zeta") {
  const auto th = theta_galilean(2.0);
  auto zero = [](const MilneElement&, const Event&) { return 0.0; };
  CHECK(exponent_shift_violation(th, zero, 1, 200, 3) == 0.0);
  auto time_shift = [](const MilneElement& r, const Event&) { return 0.7 * r.b(); };
  CHECK(exponent_shift_violation(th, time_shift, 1, 1000, 3) <= 1e-12);
  auto gauge = [](const MilneElement& r, const Event& p) { return std::sin(p.t) * r.b() + p.t * p.t * r.V().col(0).sum(); };
  CHECK(exponent_shift_violation(theta_milne(1.0), gauge, 2, 1000, 4) <= 1e-12);
}

TEST_CASE("extension group H") {
  for (const auto& [xi, order] : {std::pair{exponent_of(theta_galilean(1.5)), 1}, std::pair{exponent_of(theta_milne(0.8)), 2}}) {
    const auto rep = check_h_group(xi, order, 300, 11);
    CHECK(rep.max_assoc_minus_cocycle <= 1e-12);
    CHECK(rep.max_associativity <= 1e-12);
    CHECK(rep.max_inverse <= 1e-12);
    CHECK(rep.max_unit <= 1e-12);
  }
  // a non-cocycle: associativity and the cocycle identity fail together, by the same amount
  const ExponentFn bad = [](const MilneElement& r, const MilneElement& s, const Event&) { return r.b() * s.b() * s.b(); };
  const auto rep = check_h_group(bad, 1, 300, 11);
  CHECK(rep.max_associativity > 1e-3);
  CHECK(rep.max_assoc_minus_cocycle <= 1e-12);
}

TEST_CASE("generator matrices represent the bracket") {
  for (const auto& alg : {galilean(), milne(2), milne(3)}) {
    double worst = 0.0;
    for (std::size_t i = 0; i < alg->dim(); ++i)
      for (std::size_t j = 0; j < alg->dim(); ++j) {
        const auto X = AlgebraVector::basis(alg->dim(), i), Y = AlgebraVector::basis(alg->dim(), j);
        const Eigen::MatrixXd MX = generator_matrix(*alg, X), MY = generator_matrix(*alg, Y);
        const Eigen::MatrixXd comm = MX * MY - MY * MX;
        worst = std::max(worst, (comm - generator_matrix(*alg, bracket(*alg, X, Y))).cwiseAbs().maxCoeff());
      }
    CHECK(worst == 0.0);
  }
}

TEST_CASE("extraction reproduces the galilean representative") {
  const auto g = galilean();
  const auto rep = classify(g).representatives.front();
  for (double m : {1.0, 2.5}) {
    const Event p{Eigen::Vector3d(0.3, -0.2, 0.5), 0.7};
    const auto xi = extract_exponent_matrix(theta_galilean(m), *g, p);
    std::size_t k = 0;
    for (std::size_t i = 0; i < g->dim(); ++i)
      for (std::size_t j = i + 1; j < g->dim(); ++j, ++k) {
        const double want = m * rep(i, j).coeff(0).get_d();
        if (want != 0.0)
          CHECK(std::abs(xi[k] - want) <= 1e-6 * std::abs(want));
        else
          CHECK(std::abs(xi[k]) <= 1e-6);
      }
  }
}

TEST_CASE("extraction of single pairs") {
  const auto g = galilean();
  const Event p{Eigen::Vector3d(1, 2, -1), -0.4};
  auto basis = [&](const std::string& l) { return AlgebraVector::basis(g->dim(), g->require_index(l)); };
  const auto bd = infinitesimal_from_finite(theta_galilean(2.0), *g, basis("b1"), basis("d1"), p);
  CHECK(bd.value == Approx(2.0).epsilon(1e-6));
  CHECK(bd.samples.size() == 7);
  CHECK(std::abs(infinitesimal_from_finite(theta_galilean(2.0), *g, basis("b1"), basis("b2"), p).value) <= 1e-9);
  CHECK(std::abs(infinitesimal_from_finite(theta_galilean(2.0), *g, basis("a12"), basis("tau"), p).value) <= 1e-9);
  CHECK_THROWS_AS(richardson({1.0, -1.0, 3.0, -5.0, 9.0, -17.0, 33.0}), NonConvergence);
}

TEST_CASE("milne extraction is isotropic and realizable") {
  const auto alg = milne(2);
  const double m = 1.5;
  for (double t : {0.7, -1.2}) {
    const Event p{Eigen::Vector3d(0.3, -0.2, 0.5), t};
    const auto xi = extract_exponent_matrix(theta_milne(m), *alg, p);
    std::size_t k = 0;
    for (std::size_t i = 0; i < alg->dim(); ++i)
      for (std::size_t j = i + 1; j < alg->dim(); ++j, ++k) {
        double want = 0.0;
        if (i >= 3 && j >= 3 && j != *alg->time_index() && i != *alg->time_index()) {
          const int ci = static_cast<int>((i - 3) % 3), cj = static_cast<int>((j - 3) % 3);
          const int li = static_cast<int>((i - 3) / 3), lj = static_cast<int>((j - 3) / 3);
          if (ci == cj) want = milne_entry(m, li, lj, t);
        }
        CHECK(std::abs(xi[k] - want) <= 1e-6 * std::max(1.0, std::abs(want)));
      }
  }
}
