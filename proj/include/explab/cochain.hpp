#pragma once

// Polynomial-in-time one- and two-cochains on a Lie algebra, the coboundary
// d[Lambda] and the time-graded Jacobi residual.
//
// Generators act on functions of time through the derivative along their
// inverse flow: the time generator acts as -d/dt and every other generator
// acts trivially. With [d^(n), tau] = d^(n-1) this is the orientation under
// which the Jacobi system reproduces dP^(l,n)/dt = P^(l-1,n) + P^(l,n-1).

#include "explab/lie.hpp"
#include "explab/polynomial.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace explab {

class InvalidCochain : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Action of basis generator i on a time-dependent scalar.
inline RationalPoly generator_action(const LieAlgebra& alg, std::size_t i, const RationalPoly& f) {
  if (!alg.is_time(i)) return {};
  return -differentiate(f);
}

/// Number of strictly-upper-triangular slots of an n x n matrix.
inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

/// Position of (i, j), i < j, in entry-lexicographic order.
inline std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

class TwoCochain {
 public:
  explicit TwoCochain(AlgebraPtr alg) : alg_(std::move(alg)), entries_(pair_count(alg_->dim())) {}

  const AlgebraPtr& algebra() const noexcept { return alg_; }
  std::size_t dim() const noexcept { return alg_->dim(); }

  /// Xi(a_i, a_j, t); antisymmetric, zero on the diagonal.
  RationalPoly operator()(std::size_t i, std::size_t j) const {
    check(i, j);
    if (i == j) return {};
    if (i < j) return entries_[pair_index(dim(), i, j)];
    return -entries_[pair_index(dim(), j, i)];
  }

  void set(std::size_t i, std::size_t j, RationalPoly p) {
    check(i, j);
    if (i == j) {
      if (!p.is_zero()) throw InvalidCochain("two-cochain diagonal must vanish");
      return;
    }
    if (i < j) entries_[pair_index(dim(), i, j)] = std::move(p);
    else entries_[pair_index(dim(), j, i)] = -p;
  }

  void set(const std::string& a, const std::string& b, RationalPoly p) {
    set(alg_->require_index(a), alg_->require_index(b), std::move(p));
  }

  /// Bilinear extension to arbitrary algebra vectors.
  RationalPoly operator()(const AlgebraVector& x, const AlgebraVector& y) const {
    RationalPoly acc;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y[j] == 0 || i == j) continue;
        acc += (*this)(i, j) * Rational(x[i] * y[j]);
      }
    }
    return acc;
  }

  /// Upper-triangular entries in entry-lexicographic order.
  const std::vector<RationalPoly>& entries() const noexcept { return entries_; }

  int max_degree() const {
    int d = -1;
    for (const auto& e : entries_) d = std::max(d, e.degree());
    return d;
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  TwoCochain& operator+=(const TwoCochain& o) {
    same_algebra(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
  }
  TwoCochain& operator-=(const TwoCochain& o) {
    same_algebra(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
  }
  TwoCochain& operator*=(const Rational& s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }
  friend TwoCochain operator+(TwoCochain a, const TwoCochain& b) { return a += b; }
  friend TwoCochain operator-(TwoCochain a, const TwoCochain& b) { return a -= b; }
  friend TwoCochain operator*(const Rational& s, TwoCochain a) { return a *= s; }
  friend bool operator==(const TwoCochain& a, const TwoCochain& b) {
    return a.alg_ == b.alg_ && a.entries_ == b.entries_;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= dim() || j >= dim()) throw std::out_of_range("generator index out of range");
  }
  void same_algebra(const TwoCochain& o) const {
    if (o.alg_ != alg_) throw InvalidCochain("cochains live on different algebras");
  }

  AlgebraPtr alg_;
  std::vector<RationalPoly> entries_;
};

/// Lambda(a_i, t). Admissible when each basis generator leaves its own
/// component invariant along its flow, a_i Lambda_i = 0: the time component is
/// constant, the others may depend on t freely.
class OneCochain {
 public:
  OneCochain(AlgebraPtr alg, std::vector<RationalPoly> components)
      : alg_(std::move(alg)), components_(std::move(components)) {
    if (components_.size() != alg_->dim()) throw InvalidCochain("one-cochain needs one component per generator");
    for (std::size_t i = 0; i < alg_->dim(); ++i)
      if (!generator_action(*alg_, i, components_[i]).is_zero())
        throw InvalidCochain("one-cochain component " + alg_->label(i) + " is not constant along its flow");
  }

  static OneCochain zero(AlgebraPtr alg) {
    auto n = alg->dim();
    return OneCochain(std::move(alg), std::vector<RationalPoly>(n));
  }

  const AlgebraPtr& algebra() const noexcept { return alg_; }
  const RationalPoly& operator[](std::size_t i) const { return components_.at(i); }
  const std::vector<RationalPoly>& components() const noexcept { return components_; }

  RationalPoly operator()(const AlgebraVector& x) const {
    RationalPoly acc;
    for (std::size_t i = 0; i < components_.size(); ++i)
      if (x[i] != 0) acc += components_[i] * Rational(x[i]);
    return acc;
  }

 private:
  AlgebraPtr alg_;
  std::vector<RationalPoly> components_;
};

/// d[Lambda](a_i, a_j) = a_i Lambda_j - a_j Lambda_i - Lambda([a_i, a_j]).
inline TwoCochain coboundary(const OneCochain& lam) {
  const auto& alg = *lam.algebra();
  TwoCochain out(lam.algebra());
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t j = i + 1; j < alg.dim(); ++j) {
      RationalPoly v = generator_action(alg, i, lam[j]) - generator_action(alg, j, lam[i]);
      for (const auto& t : alg.bracket(i, j)) v -= lam[t.index] * t.coeff;
      out.set(i, j, std::move(v));
    }
  return out;
}

/// Xi([a_i,a_j],a_k) + cyclic - (a_i Xi(a_j,a_k) + cyclic); identically zero
/// exactly when the cocycle condition holds on the triple.
inline RationalPoly jacobi_residual(const TwoCochain& xi, std::size_t i, std::size_t j, std::size_t k) {
  if (i == j || j == k || i == k) throw std::invalid_argument("jacobi_residual needs distinct generators");
  const auto& alg = *xi.algebra();
  auto bracket_term = [&](std::size_t a, std::size_t b, std::size_t c) {
    RationalPoly acc;
    for (const auto& t : alg.bracket(a, b)) acc += xi(t.index, c) * t.coeff;
    return acc;
  };
  RationalPoly r = bracket_term(i, j, k) + bracket_term(j, k, i) + bracket_term(k, i, j);
  r -= generator_action(alg, i, xi(j, k));
  r -= generator_action(alg, j, xi(k, i));
  r -= generator_action(alg, k, xi(i, j));
  return r;
}

inline bool is_cocycle(const TwoCochain& xi) {
  const std::size_t n = xi.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (!jacobi_residual(xi, i, j, k).is_zero()) return false;
  return true;
}

inline nlohmann::json to_json(const TwoCochain& xi) {
  auto arr = nlohmann::json::array();
  const auto& alg = *xi.algebra();
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t j = i + 1; j < alg.dim(); ++j) {
      auto p = xi(i, j);
      if (p.is_zero()) continue;
      arr.push_back({{"i", alg.label(i)}, {"j", alg.label(j)}, {"poly", to_json(p)}});
    }
  return arr;
}

inline TwoCochain two_cochain_from_json(const AlgebraPtr& alg, const nlohmann::json& j) {
  TwoCochain xi(alg);
  for (const auto& e : j) {
    xi.set(e.at("i").get<std::string>(), e.at("j").get<std::string>(), rational_poly_from_json(e.at("poly")));
  }
  return xi;
}

inline nlohmann::json to_json(const OneCochain& lam) {
  auto arr = nlohmann::json::array();
  const auto& alg = *lam.algebra();
  for (std::size_t i = 0; i < alg.dim(); ++i)
    if (!lam[i].is_zero()) arr.push_back({{"generator", alg.label(i)}, {"poly", to_json(lam[i])}});
  return arr;
}

}  // namespace explab
