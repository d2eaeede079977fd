#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ehrhart_local {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational makeRational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r{Integer(num), Integer(den)};
  r.canonicalize();
  return r;
}

inline Rational makeRational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r{num, den};
  r.canonicalize();
  return r;
}

inline int signOf(const Rational& r) { return sgn(r); }

inline Integer floorOf(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer ceilOf(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline std::int64_t toInt64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer exceeds 64-bit range");
  return z.get_si();
}

inline Rational absOf(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Lowest-terms "p/q", or "p" when the denominator is 1.
inline std::string toString(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rational parseRational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    return makeRational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational number: " + s);
  }
}

/// Fixed-point decimal with `digits` fractional digits, rounded half away from
/// zero. Deterministic for a given rational.
inline std::string toDecimal(const Rational& r, int digits = 12) {
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rational scaled = absOf(r) * scale + Rational(1, 2);
  Integer q = floorOf(scaled);
  std::string mag = q.get_str();
  if (static_cast<int>(mag.size()) <= digits) mag.insert(0, digits + 1 - mag.size(), '0');
  std::string intPart = mag.substr(0, mag.size() - digits);
  std::string frac = mag.substr(mag.size() - digits);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = (r < 0 && q != 0) ? "-" : "";
  out += intPart;
  if (!frac.empty()) out += "." + frac;
  return out;
}

}  // namespace ehrhart_local
