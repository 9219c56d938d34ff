#pragma once

#include <gmpxx.h>

#include <string>

#include "tanaka/errors.hpp"

namespace tanaka {

using Integer = mpz_class;

// mpq_class with the canonical-form invariant (lowest terms, positive
// denominator) enforced at every construction site.  gmpxx arithmetic on
// canonical operands stays canonical, so helpers are only needed when a
// rational is assembled from raw parts.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) fail(Errc::InvalidArgument, "rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace tanaka
