#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "apcl/errors.hpp"

namespace apcl {

using BigInt = mpz_class;
using Rational = mpq_class;

// mpq_class(n, d) does not canonicalize; every construction from a raw pair
// goes through here.
inline Rational rat(long num, long den = 1) {
  if (den == 0) throw ConfigError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ConfigError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::string to_string(const BigInt& z) { return z.get_str(); }

// Exact conversion; every finite double is a dyadic rational.
inline Rational rational_from_double_exact(double x) {
  Rational q(x);
  q.canonicalize();
  return q;
}

// Nearest rational with denominator <= max_den (continued fraction
// convergents).  Used when ingesting float config values that are meant to be
// exact rationals.
inline Rational rationalize(double x, unsigned long max_den = 1000000) {
  if (!std::isfinite(x)) throw ConfigError("rationalize: non-finite value");
  Rational exact = rational_from_double_exact(x);
  if (exact.get_den() <= max_den) return exact;
  // Walk convergents p/q of the continued fraction until q would exceed the
  // bound, then pick the better of the last convergent and best semiconvergent.
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest = exact;
  while (true) {
    BigInt a = rest.get_num() / rest.get_den();  // truncation toward zero
    if (rest < 0 && rest.get_num() % rest.get_den() != 0) a -= 1;  // floor
    BigInt p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) {
      // Largest k with q0 + k*q1 <= max_den gives the best semiconvergent.
      BigInt k = (BigInt(max_den) - q0) / q1;
      Rational semi = rat(p0 + k * p1, q0 + k * q1);
      Rational conv = rat(p1, q1);
      return abs(exact - semi) < abs(exact - conv) ? semi : conv;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rational frac = rest - a;
    if (frac == 0) return rat(p1, q1);
    rest = 1 / frac;
  }
}

// lcm of the denominators of a list; >= 1.
inline BigInt common_denominator(const std::vector<Rational>& qs) {
  BigInt d = 1;
  for (const auto& q : qs) {
    BigInt den = q.get_den();
    d = lcm(d, den);
  }
  return d;
}

inline long double to_long_double(const Rational& q) {
  // gmpxx only converts to double; recover extra bits from the remainder.
  mpf_class f(q, 128);
  double hi = f.get_d();
  f -= hi;
  return static_cast<long double>(hi) + static_cast<long double>(f.get_d());
}

}  // namespace apcl
