#pragma once

// Finite-dimensional Lie algebras with rational structure constants and an
// optional time-translation generator.
//
// Basis order for the built-ins is fixed: rotations a12 a13 a23, then the
// vector generators grouped by family (b before d for Galilean, d^0 before
// d^1 ... for Milne), then tau last.

#include "explab/rational.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace explab {

struct Term {
  std::size_t index;
  Rational coeff;
};

/// One bracket [a_lhs, a_rhs] = sum coeff * a_index, given with lhs < rhs.
struct BracketRule {
  std::size_t lhs;
  std::size_t rhs;
  std::vector<Term> out;
};

enum class AlgebraFamily { custom, galilean, milne, phase_space };

class InvalidAlgebra : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JacobiViolation {
  std::size_t i, j, k, l;
  Rational residual;
};

class LieAlgebra;
inline std::optional<JacobiViolation> validate(const LieAlgebra& alg);

class LieAlgebra {
 public:
  /// Throws InvalidAlgebra on malformed input or a Jacobi violation.
  LieAlgebra(std::vector<std::string> labels, const std::vector<BracketRule>& rules,
             std::optional<std::size_t> time_index, AlgebraFamily family = AlgebraFamily::custom,
             int family_param = 0)
      : LieAlgebra(std::move(labels), rules, time_index, family, family_param, true) {}

  /// Same structural checks but no Jacobi validation; for exercising validate().
  static LieAlgebra unchecked(std::vector<std::string> labels, const std::vector<BracketRule>& rules,
                              std::optional<std::size_t> time_index) {
    return LieAlgebra(std::move(labels), rules, time_index, AlgebraFamily::custom, 0, false);
  }

  std::size_t dim() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> time_index() const noexcept { return time_index_; }
  bool is_time(std::size_t i) const noexcept { return time_index_ && *time_index_ == i; }
  AlgebraFamily family() const noexcept { return family_; }
  /// m for milne(m), n for phase_space(n), 0 otherwise.
  int family_param() const noexcept { return family_param_; }

  std::optional<std::size_t> index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }

  std::size_t require_index(const std::string& label) const {
    if (auto i = index_of(label)) return *i;
    throw std::invalid_argument("unknown generator '" + label + "'");
  }

  /// [a_i, a_j] expanded in the basis, antisymmetry applied.
  const std::vector<Term>& bracket(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

  /// The stored rules (i < j, nonzero only).
  std::vector<BracketRule> rules() const {
    std::vector<BracketRule> out;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i + 1; j < dim(); ++j)
        if (!bracket(i, j).empty()) out.push_back({i, j, bracket(i, j)});
    return out;
  }

 private:
  LieAlgebra(std::vector<std::string> labels, const std::vector<BracketRule>& rules,
             std::optional<std::size_t> time_index, AlgebraFamily family, int family_param, bool check)
      : labels_(std::move(labels)), time_index_(time_index), family_(family), family_param_(family_param) {
    const std::size_t n = labels_.size();
    if (n == 0) throw InvalidAlgebra("algebra must have at least one generator");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (labels_[i] == labels_[j]) throw InvalidAlgebra("duplicate generator label '" + labels_[i] + "'");
    if (time_index_ && *time_index_ >= n) throw InvalidAlgebra("time generator index out of range");
    table_.assign(n * n, {});
    std::vector<bool> seen(n * n, false);
    for (const auto& r : rules) {
      if (r.lhs >= n || r.rhs >= n) throw InvalidAlgebra("bracket refers to a generator out of range");
      if (r.lhs == r.rhs) {
        if (!r.out.empty()) throw InvalidAlgebra("nonzero self-bracket for '" + labels_[r.lhs] + "'");
        continue;
      }
      const std::size_t i = std::min(r.lhs, r.rhs), j = std::max(r.lhs, r.rhs);
      const int sign = r.lhs < r.rhs ? 1 : -1;
      if (seen[i * n + j])
        throw InvalidAlgebra("bracket [" + labels_[i] + "," + labels_[j] + "] given twice");
      seen[i * n + j] = true;
      std::map<std::size_t, Rational> acc;
      for (const auto& t : r.out) {
        if (t.index >= n) throw InvalidAlgebra("bracket output index out of range");
        acc[t.index] += sign * t.coeff;
      }
      for (auto& [k, c] : acc) {
        if (c == 0) continue;
        table_[i * n + j].push_back({k, c});
        table_[j * n + i].push_back({k, -c});
      }
    }
    if (check) {
      if (auto v = validate(*this)) {
        throw InvalidAlgebra("Jacobi identity fails on (" + labels_[v->i] + ", " + labels_[v->j] + ", " +
                             labels_[v->k] + ") in component " + labels_[v->l] + ": residual " +
                             to_string(v->residual));
      }
    }
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<Term>> table_;
  std::optional<std::size_t> time_index_;
  AlgebraFamily family_;
  int family_param_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Coordinates in the algebra basis.
class AlgebraVector {
 public:
  explicit AlgebraVector(std::size_t dim) : c_(dim, Rational(0)) {}
  explicit AlgebraVector(std::vector<Rational> c) : c_(std::move(c)) {}
  static AlgebraVector basis(std::size_t dim, std::size_t i) {
    AlgebraVector v(dim);
    v.c_.at(i) = 1;
    return v;
  }

  std::size_t size() const noexcept { return c_.size(); }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  Rational& operator[](std::size_t i) { return c_[i]; }
  const std::vector<Rational>& components() const noexcept { return c_; }
  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const AlgebraVector& a, const AlgebraVector& b) { return a.c_ == b.c_; }
  friend AlgebraVector operator+(AlgebraVector a, const AlgebraVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("algebra vector dimension mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend AlgebraVector operator*(const Rational& s, AlgebraVector a) {
    for (auto& x : a.c_) x *= s;
    return a;
  }

 private:
  std::vector<Rational> c_;
};

inline AlgebraVector bracket(const LieAlgebra& alg, const AlgebraVector& x, const AlgebraVector& y) {
  const std::size_t n = alg.dim();
  if (x.size() != n || y.size() != n) throw std::invalid_argument("algebra vector dimension mismatch");
  AlgebraVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == 0 || i == j) continue;
      Rational s = x[i] * y[j];
      for (const auto& t : alg.bracket(i, j)) out[t.index] += s * t.coeff;
    }
  }
  return out;
}

/// First (i<j<k, l) where the cyclic sum of structure constants is nonzero.
inline std::optional<JacobiViolation> validate(const LieAlgebra& alg) {
  const std::size_t n = alg.dim();
  std::vector<Rational> acc(n);
  auto add_nested = [&](std::size_t i, std::size_t j, std::size_t k) {
    // [[a_i, a_j], a_k]
    for (const auto& t : alg.bracket(i, j))
      for (const auto& u : alg.bracket(t.index, k)) acc[u.index] += t.coeff * u.coeff;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        for (auto& a : acc) a = 0;
        add_nested(i, j, k);
        add_nested(j, k, i);
        add_nested(k, i, j);
        for (std::size_t l = 0; l < n; ++l)
          if (acc[l] != 0) return JacobiViolation{i, j, k, l, acc[l]};
      }
  return std::nullopt;
}

namespace detail {

/// Index of rotation a_ij among (a12, a13, a23) with sign for i > j; nullopt for i == j.
inline std::optional<std::pair<std::size_t, int>> rotation(int i, int j) {
  if (i == j) return std::nullopt;
  int sign = 1;
  if (i > j) {
    std::swap(i, j);
    sign = -1;
  }
  const std::size_t idx = (i == 1 && j == 2) ? 0 : (i == 1 && j == 3) ? 1 : 2;
  return std::make_pair(idx, sign);
}

inline int delta(int a, int b) { return a == b ? 1 : 0; }

/// Rotation relations plus [a_ij, v_k] = delta_jk v_i - delta_ik v_j for each
/// vector family whose first basis index is listed in `families`.
inline std::vector<BracketRule> euclidean_rules(const std::vector<std::size_t>& families) {
  const int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
  std::vector<BracketRule> rules;
  for (std::size_t p = 0; p < 3; ++p) {
    const int i = pairs[p][0], j = pairs[p][1];
    for (std::size_t q = p + 1; q < 3; ++q) {
      const int k = pairs[q][0], l = pairs[q][1];
      std::map<std::size_t, Rational> acc;
      auto add = [&](int coeff, int a, int b) {
        if (coeff == 0) return;
        if (auto r = rotation(a, b)) acc[r->first] += coeff * r->second;
      };
      add(delta(j, k), i, l);
      add(-delta(i, k), j, l);
      add(delta(i, l), j, k);
      add(-delta(j, l), i, k);
      BracketRule rule{p, q, {}};
      for (auto& [idx, c] : acc)
        if (c != 0) rule.out.push_back({idx, c});
      rules.push_back(std::move(rule));
    }
    for (std::size_t base : families) {
      for (int k = 1; k <= 3; ++k) {
        BracketRule rule{p, base + k - 1, {}};
        if (delta(j, k)) rule.out.push_back({base + i - 1, Rational(1)});
        if (delta(i, k)) rule.out.push_back({base + j - 1, Rational(-1)});
        rules.push_back(std::move(rule));
      }
    }
  }
  return rules;
}

}  // namespace detail

/// Galilean algebra: a12 a13 a23 b1 b2 b3 d1 d2 d3 tau, with [d_k, tau] = b_k.
inline AlgebraPtr galilean() {
  std::vector<std::string> labels{"a12", "a13", "a23", "b1", "b2", "b3", "d1", "d2", "d3", "tau"};
  auto rules = detail::euclidean_rules({3, 6});
  for (std::size_t k = 0; k < 3; ++k) rules.push_back({6 + k, 9, {{3 + k, Rational(1)}}});
  return std::make_shared<const LieAlgebra>(std::move(labels), rules, 9, AlgebraFamily::galilean, 1);
}

/// Label of the n-acceleration generator d_i^(n).
inline std::string milne_label(int i, int n) { return "d" + std::to_string(i) + "^" + std::to_string(n); }

/// Index of d_i^(n) in milne(m): 3 + 3n + (i - 1).
inline std::size_t milne_index(int i, int n) { return 3 + 3 * static_cast<std::size_t>(n) + (i - 1); }

/// Milne subgroup algebra G(m), dimension 3m + 7, [d_i^(n), tau] = d_i^(n-1).
inline AlgebraPtr milne(int m) {
  if (m < 1) throw std::invalid_argument("milne(m) requires m >= 1");
  std::vector<std::string> labels{"a12", "a13", "a23"};
  std::vector<std::size_t> families;
  for (int n = 0; n <= m; ++n) {
    families.push_back(milne_index(1, n));
    for (int i = 1; i <= 3; ++i) labels.push_back(milne_label(i, n));
  }
  labels.push_back("tau");
  const std::size_t tau = labels.size() - 1;
  auto rules = detail::euclidean_rules(families);
  for (int n = 1; n <= m; ++n)
    for (int i = 1; i <= 3; ++i) rules.push_back({milne_index(i, n), tau, {{milne_index(i, n - 1), Rational(1)}}});
  return std::make_shared<const LieAlgebra>(std::move(labels), rules, tau, AlgebraFamily::milne, m);
}

/// Abelian algebra p1..pn q1..qn with no time generator.
inline AlgebraPtr phase_space(int n) {
  if (n < 1) throw std::invalid_argument("phase_space(n) requires n >= 1");
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("p" + std::to_string(i));
  for (int i = 1; i <= n; ++i) labels.push_back("q" + std::to_string(i));
  return std::make_shared<const LieAlgebra>(std::move(labels), std::vector<BracketRule>{}, std::nullopt,
                                            AlgebraFamily::phase_space, n);
}

// ---------------------------------------------------------------------------
// Spec-file format:
//   { "labels": [...],
//     "brackets": [ {"lhs": "d1", "rhs": "tau", "out": [["b1", "1"]]}, ... ],
//     "time_generator": "tau" | null }

class AlgebraParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline nlohmann::json to_json(const LieAlgebra& alg) {
  nlohmann::json j;
  j["labels"] = alg.labels();
  auto br = nlohmann::json::array();
  for (const auto& r : alg.rules()) {
    auto out = nlohmann::json::array();
    for (const auto& t : r.out) out.push_back({alg.label(t.index), to_string(t.coeff)});
    br.push_back({{"lhs", alg.label(r.lhs)}, {"rhs", alg.label(r.rhs)}, {"out", out}});
  }
  j["brackets"] = br;
  j["time_generator"] = alg.time_index() ? nlohmann::json(alg.label(*alg.time_index())) : nlohmann::json(nullptr);
  return j;
}

namespace detail {

inline std::string line_context(const std::string& text, std::size_t byte) {
  std::size_t line = 1, start = 0;
  for (std::size_t i = 0; i < text.size() && i < byte; ++i)
    if (text[i] == '\n') {
      ++line;
      start = i + 1;
    }
  auto end = text.find('\n', start);
  std::string src = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
  return "line " + std::to_string(line) + ": " + src;
}

}  // namespace detail

/// Parses and validates; malformed JSON reports the offending line, Jacobi
/// violations name the triple.
inline AlgebraPtr algebra_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw AlgebraParseError(std::string("malformed algebra spec at ") + detail::line_context(text, e.byte) + " (" +
                            e.what() + ")");
  }
  try {
    if (!j.is_object() || !j.contains("labels")) throw AlgebraParseError("algebra spec needs a \"labels\" array");
    auto labels = j.at("labels").get<std::vector<std::string>>();
    auto index = [&](const std::string& s) -> std::size_t {
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == s) return i;
      throw AlgebraParseError("unknown generator '" + s + "' in algebra spec");
    };
    std::vector<BracketRule> rules;
    if (j.contains("brackets")) {
      for (const auto& b : j.at("brackets")) {
        BracketRule r{index(b.at("lhs").get<std::string>()), index(b.at("rhs").get<std::string>()), {}};
        for (const auto& t : b.at("out")) {
          if (!t.is_array() || t.size() != 2) throw AlgebraParseError("bracket output entries are [label, \"num/den\"]");
          r.out.push_back({index(t[0].get<std::string>()), parse_rational(t[1].get<std::string>())});
        }
        rules.push_back(std::move(r));
      }
    }
    std::optional<std::size_t> time;
    if (j.contains("time_generator") && !j.at("time_generator").is_null())
      time = index(j.at("time_generator").get<std::string>());
    return std::make_shared<const LieAlgebra>(std::move(labels), rules, time);
  } catch (const nlohmann::json::exception& e) {
    throw AlgebraParseError(std::string("malformed algebra spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw AlgebraParseError(std::string("malformed algebra spec: ") + e.what());
  }
}

inline AlgebraPtr load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlgebraParseError("cannot open algebra spec '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return algebra_from_json_text(ss.str());
}

}  // namespace explab
