#pragma once

#include <utility>
#include <vector>

#include "period_atlas/exactalg/mpoly.hpp"
#include "period_atlas/exactalg/rational.hpp"

namespace period_atlas::exactalg {

/// Dense univariate polynomial over Q, coefficient i multiplies x^i.
/// The coefficient vector never has a trailing zero; the zero polynomial is empty.
/// Used as the working representation for root counting and gcd computations.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> ascending);
  UPoly(const Rational& c);  // NOLINT(google-explicit-constructor)

  /// Throws std::invalid_argument if p uses a variable other than v.
  static UPoly from_mpoly(const MPoly& p, Var v);
  MPoly to_mpoly(Var v) const;

  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const Rational& leading() const { return c_.back(); }
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  Rational evaluate(const Rational& x) const;
  int sign_at(const Rational& x) const { return sgn(evaluate(x)); }
  double evaluate(double x) const;
  UPoly derivative() const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const Rational& s);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const Rational& s) { return a *= s; }
  UPoly operator-() const;
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder over Q. Throws ZeroInput on division by zero.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;

  /// Integer coefficients with gcd 1, obtained by multiplying with a positive rational.
  UPoly primitive_positive_scale() const;
  /// Primitive integer polynomial with positive leading coefficient.
  UPoly primitive() const;
  UPoly monic() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Greatest common divisor, monic (zero if both inputs are zero).
UPoly gcd(const UPoly& a, const UPoly& b);

/// Exact quotient; throws NotDivisible when the remainder is nonzero.
UPoly exact_quotient(const UPoly& a, const UPoly& b);

/// Largest k such that b^k divides a, and the cofactor a / b^k.
std::pair<unsigned, UPoly> strip_factor(const UPoly& a, const UPoly& b);

}  // namespace period_atlas::exactalg
