// Milne algebras G(m): class counts, P^(l,n) of the realizable classes, and
// the same exponents recovered numerically from the Schrodinger phase.
#include "explab/classify.hpp"
#include "explab/group.hpp"

#include <iomanip>
#include <iostream>

int main(int argc, char** argv) {
  using namespace explab;
  const int top = argc > 1 ? std::stoi(argv[1]) : 3;
  for (int m = 1; m <= top; ++m) {
    const auto c = classify(milne(m));
    const auto real = realizable_subspace(c, m);
    std::cout << "G(" << m << "): " << c.quotient_dim << " classes at degree " << c.degree_used << ", "
              << real.quotient_dim << " realizable\n";
  }

  const int m = 2;
  const auto alg = milne(m);
  const auto real = realizable_subspace(classify(alg), m);
  for (std::size_t r = 0; r < real.representatives.size(); ++r) {
    std::cout << "realizable class " << r << ":\n";
    for (int l = 0; l <= m; ++l)
      for (int n = l + 1; n <= m; ++n) std::cout << "  P(" << l << "," << n << ") = " << milne_p(real.representatives[r], l, n) << "\n";
  }

  const Event p{Eigen::Vector3d(0.1, 0.2, 0.3), 0.5};
  const auto theta = theta_milne(1.0);
  std::cout << std::setprecision(10);
  for (int l = 0; l <= m; ++l)
    for (int n = l + 1; n <= m; ++n) {
      const auto ex = infinitesimal_from_finite(theta, *alg, AlgebraVector::basis(alg->dim(), milne_index(1, l)),
                                                AlgebraVector::basis(alg->dim(), milne_index(1, n)), p);
      std::cout << "extracted Xi(d1^" << l << ", d1^" << n << ") at t = " << p.t << ": " << ex.value << "\n";
    }
}
