#include "period_atlas/errors.hpp"
#include "period_atlas/exactalg/algorithms.hpp"

namespace period_atlas::exactalg {

IntervalQ::IntervalQ(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!(lo_ < hi_)) {
    throw std::invalid_argument("IntervalQ: need lo < hi, got [" + to_string(lo_) + ", " +
                                to_string(hi_) + "]");
  }
}

MPoly exact_divide(const MPoly& p, const MPoly& q) {
  if (q.is_zero()) throw ZeroInput("exact_divide: zero divisor");
  if (p.is_zero()) return {};
  if (q.is_constant()) return p * Rational(1 / q.constant_term());

  Exponent quotient_degree{};
  for (Var v : kVars) {
    const auto dp = p.degree(v);
    const auto dq = q.degree(v);
    if (dq > dp) throw NotDivisible("exact_divide: divisor degree exceeds dividend degree");
    quotient_degree[static_cast<std::size_t>(v)] = dp - dq;
  }

  const auto [lead_exp, lead_coef] = q.leading_term();
  const Rational inv_lead = 1 / lead_coef;
  MPoly rem = p;
  MPoly quot;
  while (!rem.is_zero()) {
    const auto [e, c] = rem.leading_term();
    Exponent t{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (e[i] < lead_exp[i] || e[i] - lead_exp[i] > quotient_degree[i]) {
        throw NotDivisible("exact_divide: nonzero remainder");
      }
      t[i] = e[i] - lead_exp[i];
    }
    const Rational tc = c * inv_lead;
    quot += MPoly::monomial(tc, t);
    rem.add_scaled(q, -tc, t);
  }
  return quot;
}

std::pair<unsigned, MPoly> strip_factor(const MPoly& p, const MPoly& q) {
  if (q.is_constant()) throw std::invalid_argument("strip_factor: factor must be non-constant");
  unsigned k = 0;
  MPoly cur = p;
  while (!cur.is_zero()) {
    try {
      cur = exact_divide(cur, q);
    } catch (const NotDivisible&) {
      break;
    }
    ++k;
  }
  return {k, cur};
}

}  // namespace period_atlas::exactalg
