#ifndef GFC_RATIONAL_HPP
#define GFC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gfc {

/// Exact rational scalar. All cohomology dimensions in this library are
/// integer-exact claims, so no floating point is used anywhere.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational rat(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(num, den);
}

inline Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

inline Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Rational rational_pow(const Rational& base, long long e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("0^negative");
    return 1 / rational_pow(base, -e);
  }
  Rational r = 1, b = base;
  for (long long k = e; k > 0; k >>= 1) {
    if (k & 1) r *= b;
    if (k > 1) b *= b;
  }
  return r;
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline long long to_long(const Rational& q) {
  if (!is_integer(q)) throw std::domain_error("rational is not an integer");
  return static_cast<long long>(numerator(q));
}

inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + s);
  }
}

}  // namespace gfc

#endif
