#pragma once

// Exact rational scalars. GMP keeps every value in lowest terms with a
// positive denominator, so equality is structural.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace explab {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical "num/den" form; zero is "0/1" and integers keep the "/1".
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "n", "n/d" and optional leading sign; rejects zero denominators.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  auto slash = s.find('/');
  auto valid_int = [](const std::string& part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && part[0] == '-') i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  Rational q;
  if (slash == std::string::npos) {
    if (!valid_int(s, true)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    q = Rational(Integer(s));
  } else {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Integer d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    q = Rational(Integer(num), d);
    q.canonicalize();
  }
  return q;
}

inline Rational rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Exact conversion (every finite double is a dyadic rational).
inline Rational from_double(double x) { return Rational(x); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational factorial(unsigned n) {
  Integer f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return Rational(f);
}

}  // namespace explab
