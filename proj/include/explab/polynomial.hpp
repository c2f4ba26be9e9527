#pragma once

// Dense univariate polynomials in the time variable t.

#include "explab/rational.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace explab {

/// coeffs()[k] multiplies t^k. The leading coefficient is never zero; the
/// zero polynomial has no coefficients and degree -1.
template <class Coeff>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  Polynomial(std::initializer_list<Coeff> coeffs) : coeffs_(coeffs) { normalize(); }

  static Polynomial constant(const Coeff& c) { return Polynomial(std::vector<Coeff>{c}); }
  static Polynomial monomial(const Coeff& c, std::size_t power) {
    std::vector<Coeff> v(power + 1, Coeff(0));
    v[power] = c;
    return Polynomial(std::move(v));
  }

  const std::vector<Coeff>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Coefficient of t^k, zero beyond the degree.
  Coeff coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Coeff(0); }

  /// Horner evaluation.
  Coeff operator()(const Coeff& t) const {
    Coeff acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  Polynomial& operator+=(const Polynomial& q) {
    if (q.coeffs_.size() > coeffs_.size()) coeffs_.resize(q.coeffs_.size(), Coeff(0));
    for (std::size_t k = 0; k < q.coeffs_.size(); ++k) coeffs_[k] += q.coeffs_[k];
    normalize();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& q) {
    if (q.coeffs_.size() > coeffs_.size()) coeffs_.resize(q.coeffs_.size(), Coeff(0));
    for (std::size_t k = 0; k < q.coeffs_.size(); ++k) coeffs_[k] -= q.coeffs_[k];
    normalize();
    return *this;
  }
  Polynomial& operator*=(const Coeff& c) {
    for (auto& a : coeffs_) a *= c;
    normalize();
    return *this;
  }

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator-(Polynomial p) { return p *= Coeff(-1); }
  friend Polynomial operator*(Polynomial p, const Coeff& c) { return p *= c; }
  friend Polynomial operator*(const Coeff& c, Polynomial p) { return p *= c; }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<Coeff> out(p.coeffs_.size() + q.coeffs_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < q.coeffs_.size(); ++j) out[i + j] += p.coeffs_[i] * q.coeffs_[j];
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial& p, const Polynomial& q) { return p.coeffs_ == q.coeffs_; }
  friend bool operator!=(const Polynomial& p, const Polynomial& q) { return !(p == q); }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == Coeff(0)) coeffs_.pop_back();
  }

  std::vector<Coeff> coeffs_;
};

using RationalPoly = Polynomial<Rational>;
using RealPoly = Polynomial<double>;

template <class Coeff>
Polynomial<Coeff> differentiate(const Polynomial<Coeff>& p) {
  const auto& c = p.coeffs();
  if (c.size() <= 1) return {};
  std::vector<Coeff> out(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) out[k - 1] = c[k] * Coeff(static_cast<long>(k));
  return Polynomial<Coeff>(std::move(out));
}

/// The unique q with q' = p and q(0) = constant.
template <class Coeff>
Polynomial<Coeff> antiderivative(const Polynomial<Coeff>& p, const Coeff& constant) {
  const auto& c = p.coeffs();
  std::vector<Coeff> out(c.size() + 1);
  out[0] = constant;
  for (std::size_t k = 0; k < c.size(); ++k) out[k + 1] = c[k] / Coeff(static_cast<long>(k + 1));
  return Polynomial<Coeff>(std::move(out));
}

template <class Coeff>
Coeff evaluate(const Polynomial<Coeff>& p, const Coeff& t) {
  return p(t);
}

inline RealPoly to_real(const RationalPoly& p) {
  std::vector<double> c;
  c.reserve(p.coeffs().size());
  for (const auto& q : p.coeffs()) c.push_back(q.get_d());
  return RealPoly(std::move(c));
}

inline nlohmann::json to_json(const RationalPoly& p) {
  auto arr = nlohmann::json::array();
  for (const auto& q : p.coeffs()) arr.push_back(to_string(q));
  return arr;
}

inline RationalPoly rational_poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be a JSON array of rational strings");
  std::vector<Rational> c;
  for (const auto& e : j) {
    if (!e.is_string()) throw std::invalid_argument("polynomial coefficient must be a \"num/den\" string");
    c.push_back(parse_rational(e.get<std::string>()));
  }
  return RationalPoly(std::move(c));
}

/// Human-readable form, ascending powers: "1/2 t + 3 t^2".
inline std::string pretty(const RationalPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    const auto& c = p.coeffs()[k];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational a = abs(c);
    if (k == 0 || a != 1) os << a.get_str();
    if (k >= 1) os << (k == 0 || a != 1 ? " " : "") << "t";
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const RationalPoly& p) { return os << pretty(p); }

}  // namespace explab
