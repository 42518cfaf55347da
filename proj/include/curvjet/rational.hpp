#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace curvjet {

// Exact rational scalar. mpq_class keeps results reduced with positive
// denominator through arithmetic, so equality is plain comparison.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p" or "p/q"; whitespace is not accepted. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

// Canonical text form: "p" when integral, otherwise "p/q" with q > 0.
std::string to_string(const Rational& r);

// Exact square root when the value is a square in Q, nullopt otherwise.
std::optional<Rational> exact_sqrt(const Rational& value);

}  // namespace curvjet
