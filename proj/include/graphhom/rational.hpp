#pragma once

#include <gmpxx.h>

#include <string>

#include "graphhom/errors.hpp"

namespace graphhom {

// Exact rational scalar. mpq_class keeps gcd(|num|, den) = 1 and den > 0
// after canonicalize(); every constructor below canonicalizes, and GMP's
// arithmetic preserves canonical form.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw validation_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rat(const Integer& num, const Integer& den) {
  if (den == 0) throw validation_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p" or "p/q", optional leading minus.
inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw validation_error("cannot parse rational: " + s);
  if (q.get_den() == 0) throw validation_error("rational with zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

} // namespace graphhom
