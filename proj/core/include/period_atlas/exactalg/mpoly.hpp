#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "period_atlas/exactalg/rational.hpp"

namespace period_atlas::exactalg {

/// The three ordered variables every polynomial in this library lives in.
enum class Var : std::uint8_t { U = 0, W = 1, D = 2 };

inline constexpr std::array<Var, 3> kVars{Var::U, Var::W, Var::D};

std::string_view var_name(Var v);
Var parse_var(std::string_view name);

/// (e_u, e_w, e_D)
using Exponent = std::array<std::uint32_t, 3>;

/// Sparse polynomial over Q in (u, w, D).
///
/// Terms are kept in a map keyed by the packed exponent triple; the packing
/// preserves lexicographic order on (e_u, e_w, e_D), so iteration is in
/// ascending lex order and the last term is the lex-leading term. No zero
/// coefficient is ever stored, which makes structural equality polynomial
/// equality.
class MPoly {
 public:
  using Key = std::uint64_t;
  using TermMap = std::map<Key, Rational>;

  static constexpr unsigned kBitsPerVar = 21;
  static constexpr std::uint32_t kMaxExponent = (1u << kBitsPerVar) - 1;

  MPoly() = default;
  MPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  MPoly(long c);             // NOLINT(google-explicit-constructor)

  static MPoly variable(Var v, std::uint32_t power = 1);
  static MPoly monomial(const Rational& c, const Exponent& e);
  /// Univariate polynomial in `v` from ascending coefficients c_0, c_1, ...
  static MPoly from_coeffs(Var v, const std::vector<Rational>& ascending);

  static Key pack(const Exponent& e);
  static Exponent unpack(Key k);

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_constant() const;
  /// Value of the constant term (0 when absent).
  Rational constant_term() const;

  unsigned degree(Var v) const;
  unsigned total_degree() const;
  bool uses(Var v) const;
  /// Variable of a univariate non-constant polynomial; nullopt otherwise.
  std::optional<Var> sole_variable() const;

  Rational coeff(const Exponent& e) const;
  /// Coefficient of v^k, a polynomial in the other two variables.
  MPoly coeff(Var v, unsigned k) const;
  MPoly leading_coeff(Var v) const;
  /// Coefficients of powers of v, index = power.
  std::vector<MPoly> coeffs_in(Var v) const;

  /// Lex-leading term (exponent, coefficient). Precondition: nonzero.
  std::pair<Exponent, Rational> leading_term() const;

  MPoly derivative(Var v) const;
  MPoly substitute(Var v, const Rational& value) const;
  /// Replace v by an arbitrary polynomial.
  MPoly compose(Var v, const MPoly& replacement) const;

  Rational evaluate(const Rational& u, const Rational& w, const Rational& d) const;
  double evaluate(double u, double w, double d) const;

  MPoly pow(unsigned e) const;
  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Rational& c);

  /// Adds c * x^e * o in place.
  void add_scaled(const MPoly& o, const Rational& c, const Exponent& e);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
  friend MPoly operator*(const Rational& c, MPoly a) { return a *= c; }
  friend MPoly operator*(MPoly a, long c) { return a *= Rational(c); }
  friend MPoly operator*(long c, MPoly a) { return a *= Rational(c); }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

 private:
  void add_term(Key k, const Rational& c);
  TermMap terms_;
};

inline const MPoly kU = MPoly::variable(Var::U);
inline const MPoly kW = MPoly::variable(Var::W);
inline const MPoly kD = MPoly::variable(Var::D);

/// Human-readable rendering, e.g. "3*u^2*D - 1/2". Stable, descending lex order.
std::string to_pretty_string(const MPoly& p);

}  // namespace period_atlas::exactalg
