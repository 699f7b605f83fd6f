#include "period_atlas/exactalg/mpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "period_atlas/errors.hpp"

namespace period_atlas::exactalg {

namespace {

constexpr unsigned kShiftU = 2 * MPoly::kBitsPerVar;
constexpr unsigned kShiftW = MPoly::kBitsPerVar;
constexpr MPoly::Key kMask = MPoly::kMaxExponent;

unsigned shift_of(Var v) {
  switch (v) {
    case Var::U:
      return kShiftU;
    case Var::W:
      return kShiftW;
    case Var::D:
      return 0;
  }
  return 0;
}

std::uint32_t exponent_of(MPoly::Key k, Var v) {
  return static_cast<std::uint32_t>((k >> shift_of(v)) & kMask);
}

MPoly::Key with_exponent(MPoly::Key k, Var v, std::uint32_t e) {
  const unsigned s = shift_of(v);
  return (k & ~(kMask << s)) | (static_cast<MPoly::Key>(e) << s);
}

// Integer image of p: p = ints / den.
struct IntegerImage {
  std::vector<std::pair<MPoly::Key, Integer>> terms;
  Integer den{1};
};

IntegerImage integer_image(const MPoly& p) {
  IntegerImage img;
  for (const auto& [k, c] : p.terms()) {
    mpz_lcm(img.den.get_mpz_t(), img.den.get_mpz_t(), c.get_den().get_mpz_t());
  }
  img.terms.reserve(p.size());
  for (const auto& [k, c] : p.terms()) {
    Integer scaled = img.den / c.get_den();
    scaled *= c.get_num();
    img.terms.emplace_back(k, std::move(scaled));
  }
  return img;
}

}  // namespace

std::string_view var_name(Var v) {
  switch (v) {
    case Var::U:
      return "u";
    case Var::W:
      return "w";
    case Var::D:
      return "D";
  }
  return "?";
}

Var parse_var(std::string_view name) {
  if (name == "u") return Var::U;
  if (name == "w") return Var::W;
  if (name == "D") return Var::D;
  throw ParseError("unknown variable '" + std::string(name) + "'");
}

MPoly::MPoly(const Rational& c) {
  if (c != 0) terms_.emplace(0, c);
}

MPoly::MPoly(long c) : MPoly(Rational(c)) {}

MPoly MPoly::variable(Var v, std::uint32_t power) {
  Exponent e{0, 0, 0};
  e[static_cast<std::size_t>(v)] = power;
  return monomial(1, e);
}

MPoly MPoly::monomial(const Rational& c, const Exponent& e) {
  MPoly p;
  if (c != 0) p.terms_.emplace(pack(e), c);
  return p;
}

MPoly MPoly::from_coeffs(Var v, const std::vector<Rational>& ascending) {
  MPoly p;
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    if (ascending[i] == 0) continue;
    Exponent e{0, 0, 0};
    e[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(i);
    p.terms_.emplace(pack(e), ascending[i]);
  }
  return p;
}

MPoly::Key MPoly::pack(const Exponent& e) {
  for (auto x : e) {
    if (x > kMaxExponent) throw std::overflow_error("MPoly: exponent too large");
  }
  return (static_cast<Key>(e[0]) << kShiftU) | (static_cast<Key>(e[1]) << kShiftW) |
         static_cast<Key>(e[2]);
}

Exponent MPoly::unpack(Key k) {
  return {exponent_of(k, Var::U), exponent_of(k, Var::W), exponent_of(k, Var::D)};
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

Rational MPoly::constant_term() const {
  auto it = terms_.find(0);
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned MPoly::degree(Var v) const {
  unsigned d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, exponent_of(k, v));
  return d;
}

unsigned MPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [k, c] : terms_) {
    const auto e = unpack(k);
    d = std::max(d, e[0] + e[1] + e[2]);
  }
  return d;
}

bool MPoly::uses(Var v) const { return degree(v) > 0; }

std::optional<Var> MPoly::sole_variable() const {
  std::optional<Var> found;
  for (Var v : kVars) {
    if (!uses(v)) continue;
    if (found) return std::nullopt;
    found = v;
  }
  return found;
}

Rational MPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(pack(e));
  return it == terms_.end() ? Rational(0) : it->second;
}

MPoly MPoly::coeff(Var v, unsigned k) const {
  MPoly out;
  for (const auto& [key, c] : terms_) {
    if (exponent_of(key, v) == k) out.terms_.emplace(with_exponent(key, v, 0), c);
  }
  return out;
}

MPoly MPoly::leading_coeff(Var v) const { return coeff(v, degree(v)); }

std::vector<MPoly> MPoly::coeffs_in(Var v) const {
  std::vector<MPoly> out(is_zero() ? 0 : degree(v) + 1);
  for (const auto& [key, c] : terms_) {
    out[exponent_of(key, v)].terms_.emplace(with_exponent(key, v, 0), c);
  }
  return out;
}

std::pair<Exponent, Rational> MPoly::leading_term() const {
  if (terms_.empty()) throw ZeroInput("leading_term of zero polynomial");
  const auto& [k, c] = *terms_.rbegin();
  return {unpack(k), c};
}

MPoly MPoly::derivative(Var v) const {
  MPoly out;
  for (const auto& [key, c] : terms_) {
    const auto e = exponent_of(key, v);
    if (e == 0) continue;
    out.terms_.emplace(with_exponent(key, v, e - 1), c * e);
  }
  return out;
}

MPoly MPoly::substitute(Var v, const Rational& value) const {
  if (!uses(v)) return *this;
  const unsigned deg = degree(v);
  std::vector<Rational> powers(deg + 1);
  powers[0] = 1;
  for (unsigned i = 1; i <= deg; ++i) powers[i] = powers[i - 1] * value;
  MPoly out;
  for (const auto& [key, c] : terms_) {
    out.add_term(with_exponent(key, v, 0), c * powers[exponent_of(key, v)]);
  }
  return out;
}

MPoly MPoly::compose(Var v, const MPoly& replacement) const {
  const auto parts = coeffs_in(v);
  MPoly out;
  // Horner in the replacement.
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    out = out * replacement;
    out += *it;
  }
  return out;
}

Rational MPoly::evaluate(const Rational& u, const Rational& w, const Rational& d) const {
  return substitute(Var::U, u).substitute(Var::W, w).substitute(Var::D, d).constant_term();
}

double MPoly::evaluate(double u, double w, double d) const {
  double acc = 0.0;
  for (const auto& [key, c] : terms_) {
    const auto e = unpack(key);
    double term = c.get_d();
    for (std::uint32_t i = 0; i < e[0]; ++i) term *= u;
    for (std::uint32_t i = 0; i < e[1]; ++i) term *= w;
    for (std::uint32_t i = 0; i < e[2]; ++i) term *= d;
    acc += term;
  }
  return acc;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result(1);
  MPoly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

MPoly MPoly::operator-() const {
  MPoly out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

void MPoly::add_term(Key k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

MPoly& MPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) {
  *this = *this * o;
  return *this;
}

void MPoly::add_scaled(const MPoly& o, const Rational& c, const Exponent& e) {
  if (c == 0) return;
  const Key shift = pack(e);
  for (const auto& [k, v] : o.terms_) {
    // Exponent addition is key addition as long as no field overflows.
    const auto ek = unpack(k);
    if (ek[0] + e[0] > kMaxExponent || ek[1] + e[1] > kMaxExponent ||
        ek[2] + e[2] > kMaxExponent) {
      throw std::overflow_error("MPoly: exponent too large");
    }
    add_term(k + shift, v * c);
  }
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.is_constant()) return a * b.constant_term();
  if (a.is_constant()) return b * a.constant_term();
  for (Var v : kVars) {
    if (a.degree(v) + b.degree(v) > MPoly::kMaxExponent) {
      throw std::overflow_error("MPoly: exponent too large");
    }
  }
  // Multiply integer images with mpz accumulation, then rescale once.
  const IntegerImage ia = integer_image(a);
  const IntegerImage ib = integer_image(b);
  std::unordered_map<MPoly::Key, Integer> acc;
  acc.reserve(ia.terms.size() * ib.terms.size() / 2 + 1);
  for (const auto& [ka, ca] : ia.terms) {
    for (const auto& [kb, cb] : ib.terms) {
      Integer& slot = acc[ka + kb];
      mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
  const Integer den = ia.den * ib.den;
  MPoly out;
  for (auto& [k, num] : acc) {
    if (num == 0) continue;
    Rational c(num, den);
    c.canonicalize();
    out.terms_.emplace(k, std::move(c));
  }
  return out;
}

std::string to_pretty_string(const MPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto e = MPoly::unpack(it->first);
    Rational c = it->second;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit_monomial = e[0] == 0 && e[1] == 0 && e[2] == 0;
    bool need_star = false;
    if (c != 1 || unit_monomial) {
      os << to_string(c);
      need_star = true;
    }
    for (Var v : kVars) {
      const auto ev = e[static_cast<std::size_t>(v)];
      if (ev == 0) continue;
      if (need_star) os << "*";
      os << var_name(v);
      if (ev > 1) os << "^" << ev;
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace period_atlas::exactalg
