#pragma once

// Exact linear algebra over the rationals on sparse row vectors.
//
// EchelonBasis keeps a row space in reduced row echelon form under the
// natural column order: every stored row has leading entry 1 at its pivot
// column and zeros in all other pivot columns. Insertion order never changes
// the final basis, which is what makes classification output deterministic.

#include "explab/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace explab::linalg {

struct Entry {
  std::size_t col;
  Rational value;
};

/// Sorted by column, no explicit zeros.
using SparseVec = std::vector<Entry>;

inline void sort_and_compress(SparseVec& v) {
  std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
  SparseVec out;
  out.reserve(v.size());
  for (auto& e : v) {
    if (!out.empty() && out.back().col == e.col) {
      out.back().value += e.value;
    } else {
      out.push_back(std::move(e));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Entry& e) { return e.value == 0; }), out.end());
  v = std::move(out);
}

inline const Rational* find(const SparseVec& v, std::size_t col) {
  auto it = std::lower_bound(v.begin(), v.end(), col, [](const Entry& e, std::size_t c) { return e.col < c; });
  return (it != v.end() && it->col == col) ? &it->value : nullptr;
}

/// a + s*b
inline SparseVec axpy(const SparseVec& a, const Rational& s, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->col < j->col)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->col < i->col) {
      out.push_back({j->col, s * j->value});
      ++j;
    } else {
      Rational v = i->value + s * j->value;
      if (v != 0) out.push_back({i->col, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

inline SparseVec scaled(SparseVec v, const Rational& s) {
  if (s == 0) return {};
  for (auto& e : v) e.value *= s;
  return v;
}

class EchelonBasis {
 public:
  /// Subtracts the pivot-row components; the result vanishes on every pivot column.
  SparseVec reduce(const SparseVec& v) const {
    SparseVec acc = v;
    for (const auto& e : v) {
      auto it = rows_.find(e.col);
      if (it != rows_.end()) acc = axpy(acc, -e.value, it->second);
    }
    return acc;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  /// Returns true when v was independent of the current span.
  bool insert(const SparseVec& v) {
    SparseVec r = reduce(v);
    if (r.empty()) return false;
    const std::size_t pivot = r.front().col;
    Rational inv = 1 / r.front().value;
    r = scaled(std::move(r), inv);
    for (auto& [p, row] : rows_) {
      if (const Rational* c = find(row, pivot)) row = axpy(row, -Rational(*c), r);
    }
    rows_.emplace(pivot, std::move(r));
    return true;
  }

  std::size_t rank() const noexcept { return rows_.size(); }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> p;
    for (const auto& [c, row] : rows_) p.push_back(c);
    return p;
  }

  /// Rows in ascending pivot order.
  std::vector<SparseVec> rows() const {
    std::vector<SparseVec> out;
    for (const auto& [c, row] : rows_) out.push_back(row);
    return out;
  }

  /// Basis of { x : row . x = 0 for every stored row } in R^ncols, itself echelon-reduced.
  std::vector<SparseVec> nullspace(std::size_t ncols) const {
    EchelonBasis basis;
    for (std::size_t f = 0; f < ncols; ++f) {
      if (rows_.count(f)) continue;
      SparseVec v{{f, Rational(1)}};
      for (const auto& [p, row] : rows_) {
        if (const Rational* c = find(row, f)) v.push_back({p, -*c});
      }
      sort_and_compress(v);
      basis.insert(v);
    }
    return basis.rows();
  }

 private:
  std::map<std::size_t, SparseVec> rows_;
};

/// Row-reduces the given vectors; the result spans the same space.
inline std::vector<SparseVec> echelon(const std::vector<SparseVec>& vs) {
  EchelonBasis b;
  for (const auto& v : vs) b.insert(v);
  return b.rows();
}

/// Finds y with sum_k y_k * columns[k] = target, or nullopt when target is not
/// in the span. Columns beyond `width` are used internally as tags.
inline std::optional<std::vector<Rational>> solve_combination(const std::vector<SparseVec>& columns,
                                                              const SparseVec& target, std::size_t width) {
  EchelonBasis b;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    SparseVec v = columns[k];
    v.push_back({width + k, Rational(1)});
    b.insert(v);
  }
  SparseVec r = b.reduce(target);
  std::vector<Rational> y(columns.size(), Rational(0));
  for (const auto& e : r) {
    if (e.col < width) return std::nullopt;
    y[e.col - width] = -e.value;
  }
  return y;
}

}  // namespace explab::linalg
