#include "explab/polynomial.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace explab;

namespace {

RationalPoly random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(-1, max_degree), num(-9, 9), den(1, 7);
  std::vector<Rational> c;
  for (int k = 0; k <= deg(rng); ++k) c.push_back(rational(num(rng), den(rng)));
  return RationalPoly(c);
}

const RationalPoly t{Rational(0), Rational(1)};

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-5")) == "-5/1");
  CHECK(to_string(Rational(0)) == "0/1");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
  CHECK_THROWS(parse_rational("1/2/3"));
  CHECK(factorial(5) == 120);
}

TEST_CASE("differentiate") {
  CHECK(differentiate(RationalPoly{Rational(3), Rational(0), Rational(1)}) == RationalPoly{Rational(0), Rational(2)});
  CHECK(differentiate(RationalPoly::constant(Rational(7))).is_zero());
  CHECK(differentiate(RationalPoly{}).is_zero());
}

TEST_CASE("antiderivative") {
  const Rational g(5, 3);
  CHECK(antiderivative(RationalPoly{}, g) == RationalPoly::constant(g));
  CHECK(antiderivative(t, Rational(0)) == RationalPoly::monomial(Rational(1, 2), 2));
  // P^(0,2) from P^(0,1) = g1: one integration, one new constant
  const Rational g1(2), g2(-3);
  CHECK(antiderivative(RationalPoly::constant(g1), g2) == RationalPoly{g2, g1});
}

TEST_CASE("evaluate") {
  CHECK(evaluate(t * t - RationalPoly::constant(Rational(1)), Rational(1)) == 0);
  CHECK(evaluate(RationalPoly::constant(Rational(4, 9)), Rational(123)) == Rational(4, 9));
  CHECK(evaluate(t * Rational(1, 2), Rational(1, 3)) == Rational(1, 6));
}

TEST_CASE("normalization never leaves a zero leading coefficient") {
  const RationalPoly p{Rational(1), Rational(2), Rational(0), Rational(0)};
  CHECK(p.degree() == 1);
  CHECK((p - p).is_zero());
  CHECK((p - p).degree() == -1);
  std::mt19937_64 rng(11);
  for (int n = 0; n < 300; ++n) {
    const auto a = random_poly(rng, 5), b = random_poly(rng, 5);
    for (const auto& r : {a + b, a - b, a * b, differentiate(a), antiderivative(a, Rational(0))})
      if (!r.is_zero()) CHECK(r.coeffs().back() != 0);
  }
}

TEST_CASE("algebraic properties on random polynomials") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  for (int n = 0; n < 300; ++n) {
    const auto p = random_poly(rng, 6), q = random_poly(rng, 6);
    const Rational x = rational(num(rng), den(rng));
    CHECK(antiderivative(differentiate(p), p(Rational(0))) == p);
    CHECK(differentiate(p * q) == differentiate(p) * q + p * differentiate(q));
    CHECK(evaluate(p + q, x) == evaluate(p, x) + evaluate(q, x));
    CHECK(evaluate(p * q, x) == evaluate(p, x) * evaluate(q, x));
  }
}

TEST_CASE("factorial denominators stay exact") {
  // t^20/20! integrated and differentiated back
  RationalPoly p = RationalPoly::constant(Rational(1));
  for (int k = 0; k < 20; ++k) p = antiderivative(p, Rational(0));
  CHECK(p == RationalPoly::monomial(Rational(1) / factorial(20), 20));
  for (int k = 0; k < 20; ++k) p = differentiate(p);
  CHECK(p == RationalPoly::constant(Rational(1)));
}

TEST_CASE("json round trip") {
  const RationalPoly p{Rational(-1, 2), Rational(0), Rational(3)};
  const auto j = to_json(p);
  CHECK(j.dump() == R"(["-1/2","0/1","3/1"])");
  CHECK(rational_poly_from_json(j) == p);
  CHECK(to_json(RationalPoly{}).dump() == "[]");
}
