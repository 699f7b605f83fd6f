#include "period_atlas/exactalg/upoly.hpp"

#include <stdexcept>
#include <string>

#include "period_atlas/errors.hpp"

namespace period_atlas::exactalg {

UPoly::UPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

UPoly::UPoly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::from_mpoly(const MPoly& p, Var v) {
  std::vector<Rational> c(p.is_zero() ? 0 : p.degree(v) + 1);
  for (const auto& [key, coef] : p.terms()) {
    const auto e = MPoly::unpack(key);
    for (Var other : kVars) {
      if (other != v && e[static_cast<std::size_t>(other)] != 0) {
        throw std::invalid_argument("UPoly::from_mpoly: polynomial is not univariate in " +
                                    std::string(var_name(v)));
      }
    }
    c[e[static_cast<std::size_t>(v)]] = coef;
  }
  return UPoly(std::move(c));
}

MPoly UPoly::to_mpoly(Var v) const { return MPoly::from_coeffs(v, c_); }

Rational UPoly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

double UPoly::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return UPoly(std::move(d));
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(out));
}

UPoly UPoly::operator-() const {
  UPoly out = *this;
  for (auto& x : out.c_) x = -x;
  return out;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw ZeroInput("UPoly::divmod: division by zero polynomial");
  if (degree() < d.degree()) return {UPoly{}, *this};
  std::vector<Rational> rem = c_;
  std::vector<Rational> quot(c_.size() - d.c_.size() + 1);
  const Rational inv_lead = 1 / d.leading();
  const std::size_t dn = d.c_.size();
  for (std::size_t k = quot.size(); k-- > 0;) {
    Rational q = rem[k + dn - 1] * inv_lead;
    if (q == 0) continue;
    for (std::size_t j = 0; j < dn; ++j) rem[k + j] -= q * d.c_[j];
    quot[k] = std::move(q);
  }
  rem.resize(dn - 1);
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

UPoly UPoly::primitive_positive_scale() const {
  if (is_zero()) return {};
  Integer den = 1;
  for (const auto& x : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
  Integer g = 0;
  for (const auto& x : c_) {
    const Integer n = x.get_num() * (den / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational scale(den, g);
  scale.canonicalize();
  return *this * scale;
}

UPoly UPoly::primitive() const {
  UPoly p = primitive_positive_scale();
  if (!p.is_zero() && p.leading() < 0) p = -p;
  return p;
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  return *this * Rational(1 / leading());
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  // Euclid over Q with primitive normalization after each step to curb growth.
  UPoly x = a.primitive();
  UPoly y = b.primitive();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    UPoly r = x.divmod(y).second.primitive();
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UPoly exact_quotient(const UPoly& a, const UPoly& b) {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero()) throw NotDivisible("exact_quotient: nonzero remainder");
  return q;
}

std::pair<unsigned, UPoly> strip_factor(const UPoly& a, const UPoly& b) {
  if (b.degree() < 1) throw std::invalid_argument("strip_factor: factor must be non-constant");
  unsigned k = 0;
  UPoly cur = a;
  while (!cur.is_zero()) {
    auto [q, r] = cur.divmod(b);
    if (!r.is_zero()) break;
    cur = std::move(q);
    ++k;
  }
  return {k, cur};
}

}  // namespace period_atlas::exactalg
