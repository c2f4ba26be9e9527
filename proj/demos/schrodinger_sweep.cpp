// A free packet seen from a uniformly accelerated frame solves the equation
// with a uniform field only when gravitational and inertial mass agree.
#include "explab/schrod.hpp"

#include <iomanip>
#include <iostream>

int main() {
  using namespace explab;
  const RationalPoly A{Rational(0), Rational(0), Rational(1, 2)};  // A(t) = t^2/2
  const auto sweep = mass_equality_sweep(A, 1.0, {0.5, 0.9, 1.0, 1.1, 2.0});
  std::cout << "m_grav/m_inertial   residual\n";
  for (const auto& row : sweep.rows)
    std::cout << "  " << std::left << std::setw(18) << row.ratio << row.residual << "\n";
  std::cout << "minimum at " << sweep.best_ratio << ", margin " << sweep.margin << "x\n";
}
