#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <random>

#include "oracles.hpp"
#include "period_atlas/certify/certify.hpp"
#include "period_atlas/dynsys/potential.hpp"
#include "period_atlas/errors.hpp"

using namespace period_atlas;
using namespace period_atlas::certify;
using exactalg::Var;
using period_atlas::testing::q;

namespace {

const MPoly u = MPoly::variable(Var::U);
const MPoly w = MPoly::variable(Var::W);
const MPoly D = MPoly::variable(Var::D);

double Pq(double x, double d) {
  return -1 - 4 * d * x - 2 * d * (2 * d - 1) * x * x - 2 * d * (1 + d + 2 * d * d) * x * x * x +
         d * d * (1 + 2 * d) * x * x * x * x;
}
double qq(double x, double d) { return 1 + 2 * d * x + d * (1 + 2 * d) * x * x; }
double F2(double a, double b, double d) {
  return (1 - a) * qq(a, d) / (a * std::pow(1 + d * a, 3)) + (1 - b) * qq(b, d) / (b * std::pow(1 + d * b, 3));
}
double F3(double a, double b, double d) {
  return b * (b - 1) * (1 + d * a) / (a * (a - 1) * (1 + d * b)) +
         Pq(a, d) / Pq(b, d) * b * b * std::pow(1 + d * b, 4) / (a * a * std::pow(1 + d * a, 4));
}

const ProofPolynomials& decreasing_polys() {
  static const ProofPolynomials pp = build_proof_polys(Branch::Decreasing);
  return pp;
}

const MPoly& decreasing_R2() {
  static const MPoly r2 = [] {
    CertifyOptions o;
    auto r = compute_R2(decreasing_polys(), o);
    REQUIRE(r.step.pass);
    return *r.r2;
  }();
  return r2;
}

}  // namespace

TEST_CASE("proof polynomials") {
  const auto& pp = decreasing_polys();
  CHECK(pp.get("P").substitute(Var::W, 0) == MPoly(-1));
  auto degree_uw = [](const MPoly& p) {
    unsigned d = 0;
    for (const auto& [k, c] : p.terms()) {
      const auto e = MPoly::unpack(k);
      d = std::max(d, e[0] + e[1]);
    }
    return d;
  };
  CHECK(degree_uw(pp.get("P2")) == 7);
  CHECK(degree_uw(pp.get("P3")) == 11);
  CHECK(pp.has("S"));
  CHECK(build_proof_polys(Branch::Increasing).has("P3"));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.05, 0.95), W(-3.0, -0.05), Dd(-0.45, -0.05);
  for (int i = 0; i < 20; ++i) {
    const double a = U(rng), b = W(rng), d = Dd(rng);
    const double p2 = a * b * std::pow(1 + d * a, 3) * std::pow(1 + d * b, 3) * F2(a, b, d);
    const double p3 = (a - 1) * a * a * std::pow(1 + d * a, 4) * (1 + d * b) * Pq(b, d) * F3(a, b, d) / b;
    CHECK(pp.get("P2").evaluate(a, b, d) == doctest::Approx(p2).epsilon(1e-10));
    CHECK(pp.get("P3").evaluate(a, b, d) == doctest::Approx(p3).epsilon(1e-9));
  }

  // A real common zero of F2, F3 at D = -0.3 found by Newton from a rough start.
  const double d = -0.3;
  double a = 1.3, b = -6.3;
  for (int it = 0; it < 50; ++it) {
    const double f = F2(a, b, d), g = F3(a, b, d), h = 1e-7;
    const double fa = (F2(a + h, b, d) - F2(a - h, b, d)) / (2 * h), fb = (F2(a, b + h, d) - F2(a, b - h, d)) / (2 * h);
    const double ga = (F3(a + h, b, d) - F3(a - h, b, d)) / (2 * h), gb = (F3(a, b + h, d) - F3(a, b - h, d)) / (2 * h);
    const double det = fa * gb - fb * ga;
    a -= (f * gb - fb * g) / det;
    b -= (fa * g - f * ga) / det;
  }
  REQUIRE(std::abs(F2(a, b, d)) < 1e-10);
  REQUIRE(std::abs(F3(a, b, d)) < 1e-10);
  const auto& P2 = pp.get("P2");
  const auto& P3 = pp.get("P3");
  double scale2 = 0, scale3 = 0;
  for (const auto& [k, c] : P2.terms()) {
    const auto e = MPoly::unpack(k);
    scale2 += std::abs(c.get_d() * std::pow(a, e[0]) * std::pow(b, e[1]) * std::pow(d, e[2]));
  }
  for (const auto& [k, c] : P3.terms()) {
    const auto e = MPoly::unpack(k);
    scale3 += std::abs(c.get_d() * std::pow(a, e[0]) * std::pow(b, e[1]) * std::pow(d, e[2]));
  }
  CHECK(std::abs(P2.evaluate(a, b, d)) < 1e-10 * scale2);
  CHECK(std::abs(P3.evaluate(a, b, d)) < 1e-10 * scale3);
}

TEST_CASE("sign of P on the w-range") {
  const auto s = check_P_negative(Branch::Decreasing);
  CHECK(s.pass);
  CHECK(check_P_negative(Branch::Increasing).pass);
  const auto wit = nlohmann::json::parse(s.witness);
  CHECK(wit.is_object());
}

TEST_CASE("D = -1/3 replay and tamper control") {
  CHECK(replay_d13().pass);
  CHECK(d13_R_coefficients().front() == 531441);
  CHECK(d13_R_coefficients().back() == -4);

  // Flip the sign of the w^4 u^2 coefficient of Q2.
  const MPoly q2 = d13_Q2();
  const Rational c = q2.coeff({2, 4, 0});
  REQUIRE(c != 0);
  const MPoly tampered = q2 - 2 * MPoly::monomial(c, {2, 4, 0});
  const auto s = replay_d13(d13_Q1(), tampered);
  CHECK_FALSE(s.pass);
  const auto wit = nlohmann::json::parse(s.witness);
  const bool located = wit.contains("mismatch_index") || (wit.contains("divisible") && !wit["divisible"].get<bool>());
  CHECK(located);
  if (wit.contains("mismatch_index")) CHECK(wit["mismatch_index"].get<int>() >= 0);

  // Sanity: the resultant vanishes at a common zero of Q1, Q2 off (0,1).
  const MPoly res = exactalg::resultant(d13_Q1(), d13_Q2(), Var::W);
  const auto roots = exactalg::isolate_roots(exactalg::exact_divide(res, 32 * (u - 1).pow(3) * u.pow(6)),
                                             exactalg::IntervalQ(q(-100), q(-1, 1000)), q(1, 1 << 30));
  REQUIRE_FALSE(roots.empty());
  const double u0 = roots.front().midpoint().get_d();
  bool common = false;
  for (double w0 = -50; w0 < 50; w0 += 1e-3) {
    const double a = d13_Q1().evaluate(u0, w0, 0), b = d13_Q1().evaluate(u0, w0 + 1e-3, 0);
    if (a * b <= 0) {
      double lo = w0, hi = w0 + 1e-3;
      for (int i = 0; i < 60; ++i) {
        const double m = 0.5 * (lo + hi);
        (d13_Q1().evaluate(u0, lo, 0) * d13_Q1().evaluate(u0, m, 0) <= 0 ? hi : lo) = m;
      }
      const double q2v = d13_Q2().evaluate(u0, lo, 0);
      double scale = 0;
      for (const auto& [k, cf] : d13_Q2().terms()) {
        const auto e = MPoly::unpack(k);
        scale += std::abs(cf.get_d() * std::pow(u0, e[0]) * std::pow(lo, e[1]));
      }
      common = common || std::abs(q2v) < 1e-6 * scale;
    }
  }
  CHECK(common);
}

TEST_CASE("R2 endpoint identities and bounding soundness") {
  const MPoly& r2 = decreasing_R2();
  CHECK(r2.degree(Var::U) == 12);
  CHECK(r2.substitute(Var::U, 0) == 54 * D * (D + 1));
  CHECK(r2.substitute(Var::U, 1) == 4 * D * (1 + 2 * D).pow(4) * (D + 1).pow(9));

  const exactalg::IntervalQ box(q(-16, 125), q(-267, 2086));
  const MPoly U = upper_bound_poly(r2, box);
  CHECK_FALSE(U.uses(Var::D));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const Rational u0 = q(1 + static_cast<long>(rng() % 999), 1000);
    const Rational t = q(static_cast<long>(rng() % 1001), 1000);
    const Rational d0 = box.lo() + t * box.width();
    const Rational uv = U.evaluate(u0, 0, 0);
    const Rational rv = r2.evaluate(u0, 0, d0);
    CHECK(uv >= rv);
    CHECK(rv < 0);
  }
  const auto b = bounding_poly("mid", r2, box, D - box.midpoint(), 0);
  CHECK(b.step.pass);
  CHECK_THROWS(upper_bound_poly(r2, exactalg::IntervalQ(q(-1, 10), q(1, 10))));
}

TEST_CASE("certificate agrees with the numeric curves") {
  const MPoly& r2 = decreasing_R2();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const Rational u0 = q(1 + static_cast<long>(rng() % 99), 100);
    const Rational d0 = q(-1 - static_cast<long>(rng() % 49), 100);
    CHECK(r2.evaluate(u0, 0, d0) != 0);
    const double gap = dynsys::curve_gap(u0.get_d(), d0.get_d());
    CHECK(gap != 0.0);
    CHECK(dynsys::pi_sigma(u0.get_d(), d0.get_d()) != 0.0);
  }
}

TEST_CASE("full certificate is deterministic") {
  const auto a = certify_monotonicity(Branch::Decreasing);
  CHECK(a.overall());
  const auto b = certify_monotonicity(Branch::Decreasing);
  CHECK(a.to_json() == b.to_json());
  const auto j = nlohmann::json::parse(a.to_json());
  CHECK(j["branch"] == "decreasing");
  CHECK(j["overall"] == "pass");
  CHECK(j["steps"].size() == a.steps.size());
}
