#pragma once

// Classification of time-dependent infinitesimal exponents.
//
// Cochains of entry degree <= D are flattened to coefficient vectors with one
// coordinate per (entry (i,j) in lexicographic order, power of t ascending).
// That ordering is the only pivot convention: cocycle and coboundary bases are
// reduced row echelon forms under it, and a canonical representative is a
// cocycle reduced modulo the coboundary pivots.

#include "explab/cochain.hpp"
#include "explab/linalg.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace explab {

class DegreeCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Algebras without a time generator have no time coordinate: cochains are constant.
inline int effective_degree(const LieAlgebra& alg, int degree) { return alg.time_index() ? degree : 0; }

inline std::size_t coeff_var(std::size_t n, int degree, std::size_t i, std::size_t j, int power) {
  return pair_index(n, i, j) * static_cast<std::size_t>(degree + 1) + static_cast<std::size_t>(power);
}

inline linalg::SparseVec to_vector(const TwoCochain& xi, int degree) {
  const std::size_t n = xi.dim();
  linalg::SparseVec v;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto p = xi(i, j);
      if (p.degree() > degree) throw std::invalid_argument("cochain degree exceeds the bound");
      for (std::size_t k = 0; k < p.coeffs().size(); ++k)
        if (p.coeffs()[k] != 0) v.push_back({coeff_var(n, degree, i, j, static_cast<int>(k)), p.coeffs()[k]});
    }
  return v;
}

inline TwoCochain from_vector(const AlgebraPtr& alg, int degree, const linalg::SparseVec& v) {
  const std::size_t n = alg->dim();
  std::vector<std::vector<Rational>> coeffs(pair_count(n), std::vector<Rational>(degree + 1, Rational(0)));
  for (const auto& e : v) coeffs[e.col / (degree + 1)][e.col % (degree + 1)] = e.value;
  TwoCochain xi(alg);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) xi.set(i, j, RationalPoly(coeffs[pair_index(n, i, j)]));
  return xi;
}

/// Coefficient rows of jacobi_residual(i,j,k) for powers 0..degree, as linear
/// forms in the flattened unknowns.
inline std::vector<linalg::SparseVec> jacobi_rows(const LieAlgebra& alg, int degree, std::size_t i, std::size_t j,
                                                  std::size_t k) {
  const std::size_t n = alg.dim();
  std::vector<linalg::SparseVec> rows(degree + 1);
  auto add_entry = [&](std::size_t a, std::size_t b, const Rational& c, int power, int shift) {
    // c * coefficient of t^(power+shift) of Xi(a,b), deposited at power
    if (a == b || power + shift > degree) return;
    const Rational s = a < b ? c : Rational(-c);
    rows[power].push_back({coeff_var(n, degree, std::min(a, b), std::max(a, b), power + shift), s});
  };
  const std::size_t cyc[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
  for (int q = 0; q <= degree; ++q) {
    for (const auto& c : cyc) {
      for (const auto& t : alg.bracket(c[0], c[1])) add_entry(t.index, c[2], t.coeff, q, 0);
      // -(a Xi(b,c)) with a = -d/dt contributes +(q+1) x_{q+1}
      if (alg.is_time(c[0])) add_entry(c[1], c[2], Rational(q + 1), q, 1);
    }
  }
  for (auto& r : rows) linalg::sort_and_compress(r);
  return rows;
}

inline std::vector<std::vector<linalg::SparseVec>> assemble_jacobi(const LieAlgebra& alg, int degree,
                                                                   unsigned threads) {
  std::vector<std::array<std::size_t, 3>> triples;
  const std::size_t n = alg.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) triples.push_back({i, j, k});
  std::vector<std::vector<linalg::SparseVec>> out(triples.size());
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t t = begin; t < triples.size(); t += step)
      out[t] = jacobi_rows(alg, degree, triples[t][0], triples[t][1], triples[t][2]);
  };
  threads = std::max(1u, threads);
  if (threads == 1 || triples.size() < 64) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
    for (auto& th : pool) th.join();
  }
  return out;
}

/// Admissible one-cochains of component degree <= D, as a basis.
inline std::vector<OneCochain> admissible_one_cochains(const AlgebraPtr& alg, int degree) {
  const std::size_t n = alg->dim();
  const std::size_t width = n * static_cast<std::size_t>(degree + 1);
  auto var = [&](std::size_t comp, int power) { return comp * (degree + 1) + power; };
  linalg::EchelonBasis constraints;
  for (std::size_t i = 0; i < n; ++i)
    for (int q = 0; q < degree; ++q)
      if (alg->is_time(i)) constraints.insert({{var(i, q + 1), Rational(1)}});
  std::vector<OneCochain> out;
  for (const auto& v : constraints.nullspace(width)) {
    std::vector<std::vector<Rational>> c(n, std::vector<Rational>(degree + 1, Rational(0)));
    for (const auto& e : v) c[e.col / (degree + 1)][e.col % (degree + 1)] = e.value;
    std::vector<RationalPoly> comps;
    for (auto& cc : c) comps.emplace_back(std::move(cc));
    out.emplace_back(alg, std::move(comps));
  }
  return out;
}

}  // namespace detail

struct CocycleSpace {
  AlgebraPtr alg;
  int degree_bound = 0;
  std::vector<TwoCochain> basis;
};

/// All polynomial cocycles with entry degree <= D (exact nullspace of the
/// Jacobi system), echelon-reduced.
inline CocycleSpace solve_cocycles(const AlgebraPtr& alg, int degree, unsigned threads = 1) {
  if (degree < 0) throw std::invalid_argument("degree bound must be >= 0");
  const int d = detail::effective_degree(*alg, degree);
  const std::size_t width = pair_count(alg->dim()) * static_cast<std::size_t>(d + 1);
  linalg::EchelonBasis system;
  for (const auto& rows : detail::assemble_jacobi(*alg, d, threads))
    for (const auto& r : rows)
      if (!r.empty()) system.insert(r);
  CocycleSpace space{alg, d, {}};
  for (const auto& v : system.nullspace(width)) space.basis.push_back(detail::from_vector(alg, d, v));
  return space;
}

/// Basis of { d[Lambda] : Lambda admissible, degree <= D }, echelon-reduced.
inline std::vector<TwoCochain> solve_coboundaries(const AlgebraPtr& alg, int degree) {
  if (degree < 0) throw std::invalid_argument("degree bound must be >= 0");
  const int d = detail::effective_degree(*alg, degree);
  linalg::EchelonBasis image;
  for (const auto& lam : detail::admissible_one_cochains(alg, d)) image.insert(detail::to_vector(coboundary(lam), d));
  std::vector<TwoCochain> out;
  for (const auto& v : image.rows()) out.push_back(detail::from_vector(alg, d, v));
  return out;
}

/// Named coordinates on the quotient; values[r][c] is coordinate c of representative r.
struct Coordinates {
  std::vector<std::string> names;
  std::vector<std::vector<Rational>> values;
};

struct Classification {
  AlgebraPtr alg;
  std::size_t cocycle_dim = 0;
  std::size_t coboundary_dim = 0;
  std::size_t quotient_dim = 0;
  int degree_used = 0;
  std::vector<TwoCochain> representatives;
  std::optional<Coordinates> coordinates;
  std::vector<TwoCochain> cocycle_basis;
  std::vector<TwoCochain> coboundary_basis;
};

struct ClassifyOptions {
  std::optional<int> degree;  ///< nullopt selects auto mode
  int degree_cap = 16;
  unsigned threads = 1;
};

/// P^(l,n)(t) := scalar part of Xi(d_1^(l), d_1^(n)) on milne(m).
inline RationalPoly milne_p(const TwoCochain& xi, int l, int n) {
  if (l < 0 || n < 0) return {};
  return xi(milne_index(1, l), milne_index(1, n));
}

/// gamma_(l,n) = P^(l,n)(0) for 0 <= l < n <= m.
inline Coordinates milne_coordinates(const std::vector<TwoCochain>& reps, int m) {
  Coordinates c;
  for (int l = 0; l <= m; ++l)
    for (int n = l + 1; n <= m; ++n) c.names.push_back("gamma_(" + std::to_string(l) + "," + std::to_string(n) + ")");
  for (const auto& r : reps) {
    std::vector<Rational> row;
    for (int l = 0; l <= m; ++l)
      for (int n = l + 1; n <= m; ++n) row.push_back(milne_p(r, l, n).coeff(0));
    c.values.push_back(std::move(row));
  }
  return c;
}

namespace detail {

inline Classification classify_at(const AlgebraPtr& alg, int degree, unsigned threads) {
  const int d = effective_degree(*alg, degree);
  auto z = solve_cocycles(alg, d, threads);
  auto b = solve_coboundaries(alg, d);
  linalg::EchelonBasis bspace;
  for (const auto& c : b) bspace.insert(to_vector(c, d));
  linalg::EchelonBasis quotient;
  for (const auto& c : z.basis) quotient.insert(bspace.reduce(to_vector(c, d)));
  Classification out;
  out.alg = alg;
  out.degree_used = d;
  out.cocycle_dim = z.basis.size();
  out.coboundary_dim = b.size();
  out.quotient_dim = quotient.rank();
  if (out.quotient_dim + out.coboundary_dim != out.cocycle_dim)
    throw std::logic_error("coboundary space is not contained in the cocycle space");
  for (const auto& v : quotient.rows()) out.representatives.push_back(from_vector(alg, d, v));
  out.cocycle_basis = std::move(z.basis);
  out.coboundary_basis = std::move(b);
  if (alg->family() == AlgebraFamily::milne)
    out.coordinates = milne_coordinates(out.representatives, alg->family_param());
  return out;
}

}  // namespace detail

/// Cocycles modulo coboundaries. Auto mode starts at D = 1 and stops at the
/// first D whose quotient dimension equals that at D + 1.
inline Classification classify(const AlgebraPtr& alg, const ClassifyOptions& opts = {}) {
  if (validate(*alg)) throw InvalidAlgebra("algebra fails the Jacobi identity");
  if (opts.degree) {
    if (*opts.degree < 0) throw std::invalid_argument("degree bound must be >= 0");
    return detail::classify_at(alg, *opts.degree, opts.threads);
  }
  if (!alg->time_index()) return detail::classify_at(alg, 0, opts.threads);
  std::map<int, Classification> cache;
  auto at = [&](int d) -> const Classification& {
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, detail::classify_at(alg, d, opts.threads)).first;
    return it->second;
  };
  for (int d = 1; d + 1 <= opts.degree_cap; ++d) {
    if (at(d).quotient_dim == at(d + 1).quotient_dim) return at(d);
    cache.erase(d);
  }
  throw DegreeCapExceeded("quotient dimension did not stabilize below degree cap " + std::to_string(opts.degree_cap));
}

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<OneCochain> witness;  ///< d[witness] = x2 - x1 when equivalent
};

/// Decides whether x2 - x1 is a coboundary of an admissible one-cochain.
inline EquivalenceResult are_equivalent(const TwoCochain& x1, const TwoCochain& x2) {
  if (x1.algebra() != x2.algebra()) throw InvalidCochain("cochains live on different algebras");
  if (!is_cocycle(x1) || !is_cocycle(x2)) throw InvalidCochain("are_equivalent requires cocycles");
  const auto& alg = x1.algebra();
  // one extra degree: a top-degree part of Lambda can cancel in Lambda([a,b])
  const int d = std::max({x1.max_degree(), x2.max_degree(), 0}) + 1;
  auto lams = detail::admissible_one_cochains(alg, d);
  std::vector<linalg::SparseVec> images;
  for (const auto& l : lams) images.push_back(detail::to_vector(coboundary(l), d));
  const std::size_t width = pair_count(alg->dim()) * static_cast<std::size_t>(d + 1);
  auto y = linalg::solve_combination(images, detail::to_vector(x2 - x1, d), width);
  if (!y) return {};
  std::vector<RationalPoly> comps(alg->dim());
  for (std::size_t k = 0; k < lams.size(); ++k)
    for (std::size_t c = 0; c < alg->dim(); ++c) comps[c] += lams[k][c] * (*y)[k];
  return {true, OneCochain(alg, std::move(comps))};
}

/// Weights y with xi - sum_r y_r representatives[r] a coboundary, or nullopt
/// when xi is not in the span (not a cocycle, or beyond degree_used).
inline std::optional<std::vector<Rational>> decompose(const Classification& c, const TwoCochain& xi) {
  if (xi.algebra() != c.alg) throw InvalidCochain("cochain lives on a different algebra");
  if (xi.max_degree() > c.degree_used) return std::nullopt;
  const int d = c.degree_used;
  std::vector<linalg::SparseVec> cols;
  for (const auto& r : c.representatives) cols.push_back(detail::to_vector(r, d));
  for (const auto& b : c.coboundary_basis) cols.push_back(detail::to_vector(b, d));
  const std::size_t width = pair_count(c.alg->dim()) * static_cast<std::size_t>(d + 1);
  auto y = linalg::solve_combination(cols, detail::to_vector(xi, d), width);
  if (!y) return std::nullopt;
  y->resize(c.representatives.size());
  return y;
}

// ---------------------------------------------------------------------------
// Milne-specific structure

struct StructureCheck {
  std::string name;
  bool passed = true;
  std::vector<std::string> failures;
};

struct MilneStructureReport {
  std::vector<StructureCheck> checks;
  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const StructureCheck& c) { return c.passed; });
  }
};

inline MilneStructureReport verify_milne_structure(const std::vector<TwoCochain>& reps, int m) {
  StructureCheck iso{"isotropy"}, p00{"P(0,0)=0"}, anti{"antisymmetry"}, rec{"recurrence"}, deg{"degree"},
      rot{"rotation/tau entries vanish"};
  auto fail = [](StructureCheck& c, std::size_t r, const std::string& what) {
    c.passed = false;
    c.failures.push_back("representative " + std::to_string(r) + ": " + what);
  };
  auto ln = [](int l, int n) { return "(" + std::to_string(l) + "," + std::to_string(n) + ")"; };
  for (std::size_t r = 0; r < reps.size(); ++r) {
    const auto& xi = reps[r];
    const auto& alg = *xi.algebra();
    if (alg.family() != AlgebraFamily::milne || alg.family_param() != m)
      throw std::invalid_argument("verify_milne_structure needs cochains on milne(m)");
    for (int l = 0; l <= m; ++l)
      for (int n = 0; n <= m; ++n) {
        const auto p = milne_p(xi, l, n);
        for (int i = 1; i <= 3; ++i)
          for (int k = 1; k <= 3; ++k) {
            const auto e = xi(milne_index(i, l), milne_index(k, n));
            if (e != (i == k ? p : RationalPoly{}))
              fail(iso, r, "d" + std::to_string(i) + "^" + std::to_string(l) + ", d" + std::to_string(k) + "^" +
                               std::to_string(n));
          }
        if (p != -milne_p(xi, n, l)) fail(anti, r, ln(l, n));
        if (differentiate(p) != milne_p(xi, l - 1, n) + milne_p(xi, l, n - 1)) fail(rec, r, ln(l, n));
        if (p.degree() > l + n - 1) fail(deg, r, ln(l, n));
      }
    if (!milne_p(xi, 0, 0).is_zero()) fail(p00, r, ln(0, 0));
    const std::size_t tau = *alg.time_index();
    for (std::size_t a = 0; a < alg.dim(); ++a)
      for (std::size_t b = a + 1; b < alg.dim(); ++b) {
        const bool special = a < 3 || b < 3 || a == tau || b == tau;
        if (special && !xi(a, b).is_zero()) fail(rot, r, alg.label(a) + ", " + alg.label(b));
      }
  }
  return {{iso, p00, anti, rec, deg, rot}};
}

inline MilneStructureReport verify_milne_structure(const Classification& c, int m) {
  return verify_milne_structure(c.representatives, m);
}

/// Restriction to classes with gamma_(l,q) = 0 for all l, q >= 1.
inline Classification realizable_subspace(const Classification& c, int m) {
  const auto coords = milne_coordinates(c.representatives, m);
  const std::size_t r = c.representatives.size();
  // constraint rows over representative weights y_r
  linalg::EchelonBasis constraints;
  std::size_t col = 0;
  for (int l = 0; l <= m; ++l)
    for (int n = l + 1; n <= m; ++n, ++col) {
      if (l == 0) continue;
      linalg::SparseVec row;
      for (std::size_t k = 0; k < r; ++k)
        if (coords.values[k][col] != 0) row.push_back({k, coords.values[k][col]});
      if (!row.empty()) constraints.insert(row);
    }
  const int d = c.degree_used;
  linalg::EchelonBasis span;
  for (const auto& y : constraints.nullspace(r)) {
    TwoCochain xi(c.alg);
    for (const auto& e : y) xi += e.value * c.representatives[e.col];
    span.insert(detail::to_vector(xi, d));
  }
  Classification out = c;
  out.representatives.clear();
  for (const auto& v : span.rows()) out.representatives.push_back(detail::from_vector(c.alg, d, v));
  out.quotient_dim = out.representatives.size();
  out.cocycle_dim = out.coboundary_dim + out.quotient_dim;
  out.coordinates = milne_coordinates(out.representatives, m);
  out.cocycle_basis.clear();
  return out;
}

inline nlohmann::json to_json(const Coordinates& c) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& row : c.values) {
    auto r = nlohmann::json::array();
    for (const auto& q : row) r.push_back(to_string(q));
    values.push_back(r);
  }
  return {{"names", c.names}, {"values", values}};
}

inline nlohmann::json to_json(const Classification& c) {
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& r : c.representatives) reps.push_back(to_json(r));
  nlohmann::json j;
  j["generators"] = c.alg->labels();
  j["cocycle_dim"] = c.cocycle_dim;
  j["coboundary_dim"] = c.coboundary_dim;
  j["quotient_dim"] = c.quotient_dim;
  j["degree_used"] = c.degree_used;
  j["representatives"] = reps;
  j["coordinates"] = c.coordinates ? to_json(*c.coordinates) : nlohmann::json(nullptr);
  j["canonical_form"] = "echelon-reduced modulo coboundaries; entry order (i,j) lexicographic, then ascending power";
  return j;
}

inline nlohmann::json to_json(const MilneStructureReport& r) {
  auto arr = nlohmann::json::array();
  for (const auto& c : r.checks) arr.push_back({{"check", c.name}, {"passed", c.passed}, {"failures", c.failures}});
  return {{"checks", arr}, {"all_passed", r.all_passed()}};
}

}  // namespace explab
