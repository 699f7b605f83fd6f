#include "period_atlas/exactalg/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "period_atlas/errors.hpp"

namespace period_atlas::exactalg {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) throw ParseError("malformed integer '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const Integer num = parse_integer(text.substr(0, slash));
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text[0] == '-') throw ParseError("negative denominator");
  const Integer den = parse_integer(den_text);
  if (den == 0) throw ParseError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return to_fraction_string(q);
}

Rational round_up(const Rational& q, unsigned bits) {
  Integer scaled = q.get_num() << bits;
  Integer quot;
  mpz_cdiv_q(quot.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  Rational r(quot, Integer(1) << bits);
  r.canonicalize();
  return r;
}

Rational round_down(const Rational& q, unsigned bits) {
  Integer scaled = q.get_num() << bits;
  Integer quot;
  mpz_fdiv_q(quot.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  Rational r(quot, Integer(1) << bits);
  r.canonicalize();
  return r;
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("from_double: non-finite value");
  Rational r(x);
  r.canonicalize();
  return r;
}

SqrtEnclosure sqrt_enclosure(const Rational& q, unsigned bits) {
  if (q < 0) throw std::invalid_argument("sqrt_enclosure: negative argument");
  // floor(sqrt(q * 4^bits)) / 2^bits <= sqrt(q) <= that + 2^-bits
  const Integer scale = Integer(1) << (2 * bits);
  Integer floor_scaled;
  mpz_fdiv_q(floor_scaled.get_mpz_t(), Integer(q.get_num() * scale).get_mpz_t(),
             q.get_den().get_mpz_t());
  Integer root;
  mpz_sqrt(root.get_mpz_t(), floor_scaled.get_mpz_t());
  const Integer denom = Integer(1) << bits;
  Rational lo(root, denom);
  Rational hi(Integer(root + 1), denom);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

}  // namespace period_atlas::exactalg
