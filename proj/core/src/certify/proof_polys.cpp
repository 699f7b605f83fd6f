#include "period_atlas/certify/proof_polys.hpp"

#include <algorithm>
#include <stdexcept>

#include "period_atlas/errors.hpp"
#include "period_atlas/exactalg/algorithms.hpp"

namespace period_atlas::certify {

using exactalg::exact_divide;
using exactalg::Rational;
using exactalg::Var;

namespace {

const MPoly& u_() {
  static const MPoly v = MPoly::variable(Var::U);
  return v;
}
const MPoly& w_() {
  static const MPoly v = MPoly::variable(Var::W);
  return v;
}
const MPoly& d_() {
  static const MPoly v = MPoly::variable(Var::D);
  return v;
}

struct Fraction {
  MPoly num;
  MPoly den;
};

// multiplier * sum(num_i / den_i); every term must clear exactly.
unsigned degree_uw(const MPoly& p) {
  unsigned d = 0;
  for (const auto& [key, c] : p.terms()) {
    const auto e = MPoly::unpack(key);
    d = std::max(d, e[0] + e[1]);
  }
  return d;
}

MPoly clear(const std::vector<Fraction>& terms, const MPoly& multiplier) {
  MPoly out;
  for (const auto& t : terms) out += exact_divide(t.num * multiplier, t.den);
  return out;
}

}  // namespace

std::string branch_name(Branch b) { return b == Branch::Decreasing ? "decreasing" : "increasing"; }

Branch parse_branch(const std::string& name) {
  if (name == "decreasing") return Branch::Decreasing;
  if (name == "increasing") return Branch::Increasing;
  throw std::invalid_argument("unknown branch '" + name + "'");
}

MPoly quadratic_q(Var x) {
  const MPoly X = MPoly::variable(x);
  const MPoly& D = d_();
  return 1 + 2 * D * X + D * (1 + 2 * D) * X.pow(2);
}

MPoly quartic_P(Var x) {
  const MPoly X = MPoly::variable(x);
  const MPoly& D = d_();
  return -1 - 4 * D * X - 2 * D * (2 * D - 1) * X.pow(2) -
         2 * D * (1 + D + 2 * D.pow(2)) * X.pow(3) + D.pow(2) * (1 + 2 * D) * X.pow(4);
}

MPoly build_P2() {
  const MPoly &u = u_(), &w = w_(), &D = d_();
  const std::vector<Fraction> f2{
      {(1 - u) * quadratic_q(Var::U), u * (1 + D * u).pow(3)},
      {(1 - w) * quadratic_q(Var::W), w * (1 + D * w).pow(3)},
  };
  return clear(f2, u * w * (1 + D * u).pow(3) * (1 + D * w).pow(3));
}

MPoly build_P3() {
  const MPoly &u = u_(), &w = w_(), &D = d_();
  const MPoly Pu = quartic_P(Var::U);
  const MPoly Pw = quartic_P(Var::W);
  const std::vector<Fraction> f3{
      {w * (w - 1) * (1 + D * u), u * (u - 1) * (1 + D * w)},
      {Pu * w.pow(2) * (1 + D * w).pow(4), Pw * u.pow(2) * (1 + D * u).pow(4)},
  };
  const MPoly cleared = clear(f3, (u - 1) * u.pow(2) * (1 + D * u).pow(4) * (1 + D * w) * Pw);
  return exact_divide(cleared, w);
}

MPoly cofactor_S() {
  const MPoly &u = u_(), &D = d_();
  return -8 * D.pow(9) * u.pow(7) * (u - 1).pow(3) * (1 + 2 * D) * (D + 1).pow(9) *
         (D * u + 1).pow(21) * (D * (1 + 2 * D) * u.pow(2) + 2 * D * u + 1);
}

MPoly d13_Q1() {
  const MPoly &u = u_(), &w = w_();
  return u.pow(3) * (1 - w).pow(2) + w.pow(3) * (1 - u).pow(2);
}

MPoly d13_Q2() {
  const MPoly &u = u_(), &w = w_();
  return -9 * u * (u - 3).pow(3) +
         3 * (81 - 270 * u + 180 * u.pow(2) - 36 * u.pow(3) + 5 * u.pow(4)) * w +
         (-243 + 540 * u - 270 * u.pow(2) + 18 * u.pow(3) - 5 * u.pow(4)) * w.pow(2) -
         (u + 3) * (-27 + 45 * u - 21 * u.pow(2) + u.pow(3)) * w.pow(3) -
         (u - 1) * (-9 + 6 * u + u.pow(2)) * w.pow(4);
}

std::vector<long> d13_R_coefficients() {
  return {531441, -3188646, 8148762, -11455506, 9546255, -4776408, 1487889,
          -406782, 143856,  -32238,   1593,    -180,      -4};
}

MPoly d13_R() {
  MPoly r;
  const auto c = d13_R_coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    r += MPoly::monomial(Rational(c[i]), {static_cast<std::uint32_t>(i), 0, 0});
  }
  return r;
}

MPoly K0() {
  const MPoly& D = d_();
  return 22 * D.pow(2) + 22 * D + 1;
}

MPoly K1() {
  const MPoly& D = d_();
  return 128 * D.pow(4) + 256 * D.pow(3) + 112 * D.pow(2) - 16 * D - 3;
}

MPoly delta_w_expected() {
  const MPoly& D = d_();
  return -16 * (D + 1).pow(4) * D.pow(4) *
         (304 * D.pow(4) + 608 * D.pow(3) + 296 * D.pow(2) - 8 * D + 27);
}

MPoly negative_axis_to_unit(const MPoly& p, Var from, Var to) {
  const unsigned n = p.degree(from);
  const MPoly t = MPoly::variable(to);
  const MPoly one_minus_t = 1 - t;
  // sum c_j(.) x^j  ->  sum c_j(.) (-t)^j (1-t)^(n-j)
  MPoly out;
  const auto coeffs = p.coeffs_in(from);
  for (unsigned j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j].is_zero()) continue;
    out += coeffs[j] * (-t).pow(j) * one_minus_t.pow(n - j);
  }
  return out;
}

void ProofPolynomials::set(const std::string& name, MPoly p) {
  for (auto& [k, v] : entries) {
    if (k == name) {
      v = std::move(p);
      return;
    }
  }
  entries.emplace_back(name, std::move(p));
}

bool ProofPolynomials::has(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.first == name) return true;
  }
  return false;
}

const MPoly& ProofPolynomials::get(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.first == name) return e.second;
  }
  throw std::out_of_range("no proof polynomial named '" + name + "'");
}

ProofPolynomials build_proof_polys(Branch b) {
  ProofPolynomials pp;
  pp.branch = b;
  pp.set("P", quartic_P(Var::W));
  const MPoly p2 = build_P2();
  const MPoly p3 = build_P3();
  if (degree_uw(p2) != 7) {
    throw NotDivisible("P2 has degree " + std::to_string(degree_uw(p2)) + " in (u,w), expected 7");
  }
  if (degree_uw(p3) != 11) {
    throw NotDivisible("P3 has degree " + std::to_string(degree_uw(p3)) + " in (u,w), expected 11");
  }
  pp.set("P2", p2);
  pp.set("P3", p3);
  if (b == Branch::Decreasing) {
    pp.set("S", cofactor_S());
    pp.set("Q1", d13_Q1());
    pp.set("Q2", d13_Q2());
    pp.set("R", d13_R());
  }
  pp.set("K0", K0());
  pp.set("K1", K1());
  return pp;
}

}  // namespace period_atlas::certify
