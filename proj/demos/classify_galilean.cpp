// Classify the Galilean algebra and print the surviving class.
#include "explab/classify.hpp"

#include <iostream>

int main() {
  using namespace explab;
  const auto alg = galilean();
  const auto c = classify(alg);
  std::cout << "cocycles " << c.cocycle_dim << ", coboundaries " << c.coboundary_dim << ", classes " << c.quotient_dim
            << " (degree " << c.degree_used << ")\n";
  const auto& xi = c.representatives.front();
  for (std::size_t i = 0; i < alg->dim(); ++i)
    for (std::size_t j = i + 1; j < alg->dim(); ++j)
      if (!xi(i, j).is_zero()) std::cout << "Xi(" << alg->label(i) << ", " << alg->label(j) << ") = " << xi(i, j) << "\n";

  // two masses are never equivalent
  TwoCochain m1(alg), m2(alg);
  for (int k = 1; k <= 3; ++k) {
    m1.set("b" + std::to_string(k), "d" + std::to_string(k), RationalPoly::constant(Rational(1)));
    m2.set("b" + std::to_string(k), "d" + std::to_string(k), RationalPoly::constant(Rational(2)));
  }
  std::cout << "mass 1 ~ mass 2: " << std::boolalpha << are_equivalent(m1, m2).equivalent << "\n";
}
