#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace period_atlas::exactalg {

// Canonical arbitrary-precision fraction: gcd(|num|, den) = 1, den > 0.
// Every Rational produced by this library is canonicalized.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a", "-a", "a/b". Throws ParseError on malformed input or b == 0.
Rational parse_rational(std::string_view text);

/// Always "num/den", including den == 1 (the polynomial text format needs it).
std::string to_fraction_string(const Rational& q);

/// "num" when den == 1, else "num/den".
std::string to_string(const Rational& q);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline int sign(const Rational& q) { return sgn(q); }

/// Smallest rational with denominator 2^bits that is >= q (bits >= 0).
Rational round_up(const Rational& q, unsigned bits);
Rational round_down(const Rational& q, unsigned bits);

/// Nearest double (rounded by GMP).
inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact rational value of a finite double.
Rational from_double(double x);

/// Rational lower/upper bounds for sqrt(q) with |hi - lo| <= 2^-bits, q >= 0.
struct SqrtEnclosure {
  Rational lo;
  Rational hi;
};
SqrtEnclosure sqrt_enclosure(const Rational& q, unsigned bits);

}  // namespace period_atlas::exactalg
