#include "period_atlas/dynsys/potential.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "period_atlas/errors.hpp"

namespace period_atlas::dynsys {

namespace {

constexpr int kDigits = std::numeric_limits<double>::digits - 2;

void require_branch_D(double D, const char* what) {
  if (!(D > -1.0 && D < 0.0)) throw DomainError(std::string(what) + " needs D in (-1,0)");
}

void require_unit_u(double u, const char* what) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError(std::string(what) + " needs u in (0,1)");
}

template <class G>
double newton(G g, double guess, double lo, double hi) {
  std::uintmax_t iters = 200;
  const double x = boost::math::tools::newton_raphson_iterate(g, guess, lo, hi, kDigits, iters);
  if (iters >= 200 || !std::isfinite(x)) throw ConvergenceFailure("Newton iteration did not settle");
  return x;
}

// s > 0 in t = -log(1-u): G(t) = log(1 - e^-t) + (D+1) t - log s.
double unstraighten_pos(double s, double D) {
  const double ls = std::log(s);
  auto G = [&](double t) { return std::log(-std::expm1(-t)) + (D + 1.0) * t - ls; };
  double lo = std::min(s, 1.0);
  for (int i = 0; G(lo) >= 0.0; ++i) {
    if (i > 2000) throw ConvergenceFailure("no lower bracket for s^-1");
    lo *= 0.5;
  }
  double hi = std::max(s, 1.0);
  for (int i = 0; G(hi) <= 0.0; ++i) {
    if (i > 2000 || !std::isfinite(hi)) throw ConvergenceFailure("no upper bracket for s^-1");
    hi *= 2.0;
  }
  auto g = [&](double t) { return std::make_pair(G(t), 1.0 / std::expm1(t) + (D + 1.0)); };
  const double t = newton(g, 0.5 * (lo + hi), lo, hi);
  return -std::expm1(-t);
}

// s < 0 in a = log|u|: G(a) = a - (D+1) log(1 + e^a) - log|s|.
double unstraighten_neg(double s, double D) {
  if (D >= 0.0 && -s >= 1.0) throw DomainError("s < -1 has no preimage when D >= 0");
  double near = s;
  double far = s;
  for (int i = 0; straighten(far, D) > s; ++i) {
    if (i > 2000 || !std::isfinite(far)) throw ConvergenceFailure("no bracket for s^-1 on u < 0");
    far *= 2.0;
  }
  if (far == near) return near;
  const double ls = std::log(-s);
  auto g = [&](double a) {
    const double e = std::exp(a);
    return std::make_pair(a - (D + 1.0) * std::log1p(e) - ls, 1.0 - (D + 1.0) * e / (1.0 + e));
  };
  const double lo = std::log(-near);
  const double hi = std::log(-far);
  const double a = newton(g, 0.5 * (lo + hi), lo, hi);
  return -std::exp(a);
}

}  // namespace

PotentialTerms potential_terms(double u, double D) {
  if (!(u < 1.0)) throw DomainError("potential needs u < 1");
  const double om = 1.0 - u;
  PotentialTerms t;
  t.V = 0.5 * u * u * std::pow(om, -2.0 * (D + 1.0));
  t.dV = u * (1.0 + D * u) * std::pow(om, -2.0 * D - 3.0);
  t.ell = std::pow(om, -(D + 2.0));
  return t;
}

double loud_energy(double D, double x, double y) {
  const double v = y * std::pow(1.0 - x, -(D + 1.0));
  return 0.5 * v * v + potential_terms(x, D).V;
}

double straighten(double u, double D) {
  if (!(u < 1.0)) throw DomainError("s(u) needs u < 1");
  return u * std::pow(1.0 - u, -(D + 1.0));
}

double unstraighten(double s, double D) {
  if (!std::isfinite(s)) throw DomainError("s^-1 of a non-finite value");
  if (!(D > -1.0)) throw DomainError("s^-1 needs D > -1");
  if (s == 0.0) return 0.0;
  if (std::abs(s) < 1e-3) {
    // u = s (1-u)^(D+1) contracts with rate about (D+1)|s|.
    double u = s;
    for (int i = 0; i < 60; ++i) {
      const double next = s * std::pow(1.0 - u, D + 1.0);
      if (next == u) break;
      u = next;
    }
    return u;
  }
  return s > 0.0 ? unstraighten_pos(s, D) : unstraighten_neg(s, D);
}

double involution_sigma(double u, double D) {
  require_branch_D(D, "sigma");
  require_unit_u(u, "sigma");
  return unstraighten(-straighten(u, D), D);
}

TurningPoints turning_points(double h, double D) {
  require_branch_D(D, "turning_points");
  if (!(h > 0.0)) throw DomainError("energy level must be positive");
  const double r = std::sqrt(2.0 * h);
  return {unstraighten(-r, D), unstraighten(r, D)};
}

double upper_turning_point(double h, double D) {
  if (!(D > -1.0 && D <= 0.0)) throw DomainError("upper_turning_point needs D in (-1,0]");
  if (!(h > 0.0)) throw DomainError("energy level must be positive");
  return unstraighten(std::sqrt(2.0 * h), D);
}

double criterion_f(double u, double D) {
  const double q = 1.0 + 2.0 * D * u + D * (1.0 + 2.0 * D) * u * u;
  const double l = 1.0 + D * u;
  return u * std::pow(1.0 - u, -3.0 * (D + 1.0)) * q / (2.0 * l * l);
}

double pi_sigma(double u, double D) {
  require_branch_D(D, "pi_sigma");
  if (D == -0.5) throw DomainError("pi_sigma is not defined at D = -1/2");
  require_unit_u(u, "pi_sigma");
  const double w = involution_sigma(u, D);
  if (std::abs(1.0 + D * u) < 1e-12 || std::abs(1.0 + D * w) < 1e-12)
    throw PoleError("1 + Du vanishes at the sample point");
  const double dsigma = potential_terms(u, D).dV / potential_terms(w, D).dV;
  return 0.5 * (criterion_f(u, D) - criterion_f(w, D) * dsigma);
}

double w_star(double D) {
  require_branch_D(D, "w*");
  if (D == -0.5) throw DomainError("w* is not defined at D = -1/2");
  return (-D + std::sqrt(-D * (1.0 + D))) / (D * (1.0 + 2.0 * D));
}

double curve_F1(double u, double w, double D) { return straighten(u, D) + straighten(w, D); }

double curve_F2(double u, double w, double D) {
  auto term = [D](double x) {
    const double l = 1.0 + D * x;
    return (1.0 - x) * (1.0 + 2.0 * D * x + D * (1.0 + 2.0 * D) * x * x) / (x * l * l * l);
  };
  return term(u) + term(w);
}

double curve_psi1(double u, double D) { return involution_sigma(u, D); }

double curve_psi2(double u, double D) {
  if (!(D > -0.5 && D < 0.0)) throw DomainError("curve machinery needs D in (-1/2,0)");
  require_unit_u(u, "psi_2");
  const double ws = w_star(D);
  const double lo = ws * (1.0 - 1e-12);
  auto F = [&](double w) { return curve_F2(u, w, D); };
  if (!(F(lo) > 0.0)) throw NoBracket("F_2 is not positive next to w*");
  double hi = 0.5 * ws;
  for (int i = 0; F(hi) >= 0.0; ++i) {
    if (i > 1000 || hi == 0.0) throw NoBracket("F_2 keeps its sign on (w*, 0)");
    hi *= 0.5;
  }
  std::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve(F, lo, hi, boost::math::tools::eps_tolerance<double>(kDigits),
                                                  iters);
  if (iters >= 200) throw ConvergenceFailure("psi_2 root did not settle");
  return 0.5 * (a + b);
}

double curve_gap(double u, double D) {
  if (!(D > -0.5 && D < 0.0)) throw DomainError("curve_gap needs D in (-1/2,0)");
  return curve_psi1(u, D) - curve_psi2(u, D);
}

}  // namespace period_atlas::dynsys
