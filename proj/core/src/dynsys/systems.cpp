#include "period_atlas/dynsys/systems.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "period_atlas/errors.hpp"

namespace period_atlas::dynsys {

using std::numbers::pi;

Vec2 loud_field(const LoudParams& p, Vec2 s) {
  return {-s.y + s.x * s.y, s.x + p.D * s.x * s.x + p.F * s.y * s.y};
}

Vec2 loud_field(const LoudParams& p, const PlanarState& s) {
  if (s.chart() != Chart::Loud) throw DomainError("loud_field expects a Loud (x,y) state");
  return loud_field(p, s.vec());
}

Vec2 zk_field_polar(const ZkParams& p, double r, double theta) {
  if (!p.is_normalized()) throw NotNormalized("zk_field needs a = 1; call normalize_zk first");
  const double rm = std::pow(r, 2 * p.n + p.k);
  return {rm * r * std::cos(p.k * theta), 1.0 + rm * std::sin(p.k * theta)};
}

Vec2 zk_field(const ZkParams& p, const PlanarState& s) {
  if (s.chart() != Chart::Polar) throw DomainError("zk_field expects a polar (r,theta) state");
  return zk_field_polar(p, s.c0(), s.c1());
}

Vec2 zk_field_complex(const ZkParams& p, Vec2 zv) {
  const std::complex<double> z{zv.x, zv.y};
  const std::complex<double> dz =
      std::complex<double>(0.0, 1.0) * z + p.a * std::pow(std::norm(z), p.n) * std::pow(z, p.k + 1);
  return {dz.real(), dz.imag()};
}

ZkNormalization normalize_zk(const ZkParams& p) {
  if (p.a == std::complex<double>(0.0, 0.0)) throw ZeroCoefficient("a = 0 leaves a linear center");
  if (p.k < 1) throw DomainError("normalize_zk needs k >= 1");
  ZkNormalization out;
  out.lambda = std::pow(std::abs(p.a), -1.0 / (2 * p.n + p.k));
  out.mu = -std::arg(p.a) / p.k;
  out.normalized = {p.n, p.k, {1.0, 0.0}};
  return out;
}

LoudReduction zk_to_loud(int n, int k) {
  if (n < 1 || k < 1) throw DomainError("zk_to_loud needs n, k >= 1");
  const double D = -static_cast<double>(k) / (2.0 * (k + n));
  return {LoudParams::distinguished(D), 1.0 + 2.0 * n / k};
}

ZkLoudPoint map_zk_orbit(const ZkParams& p, double rho) {
  if (p.k < 1) throw DomainError("map_zk_orbit needs k >= 1");
  if (!(rho >= 0.0)) throw DomainError("map_zk_orbit needs rho >= 0");
  const double b = 1.0 + 2.0 * p.n / p.k;
  ZkLoudPoint out;
  out.loud = PlanarState(Chart::Loud, 0.0, -(1.0 + b) * std::pow(rho, 2 * p.n + p.k));
  out.b = b;
  out.tau_per_t = p.k;
  out.s_per_tau = -1.0;
  return out;
}

double p2_constant(double D, double F) {
  return pi / 12.0 * (10 * D * D + 10 * D * F - D + 4 * F * F - 5 * F + 1);
}

double asymptotic_period(const LoudParams& p) {
  if (p.D > -1.0 && p.D < 0.0) return pi / (p.D + 1.0);
  if (p.D == 0.0) return 2 * pi;
  return std::numeric_limits<double>::infinity();
}

double asymptotic_period(const ZkParams& p) {
  if (p.k >= 1) return 2.0 * (p.k + p.n) * pi / (p.k + 2.0 * p.n);
  const double alpha = p.a.imag();
  if (alpha < 0) return std::numeric_limits<double>::infinity();
  return 0.0;
}

double period_dm1(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("D = -1 closed form needs 0 <= r < 1");
  return 2 * pi / std::sqrt(1.0 - r * r);
}

double period_kzero(double alpha, int n, double u) {
  if (!(u >= 0.0)) throw DomainError("k = 0 closed form needs u >= 0");
  const double den = 1.0 + alpha * std::pow(u, n);
  if (!(den > 0.0)) throw DomainError("1 + alpha u^n <= 0: outside the period annulus");
  return 2 * pi / den;
}

SecondCenter second_center_transform(const LoudParams& p) {
  const double D = p.D;
  if (!(D > -1.0 && D < 0.0)) throw DomainError("second center needs D in (-1,0)");
  SecondCenter out;
  out.image = {-1.0 - D, p.F};
  out.timefactor = std::sqrt(-D / (D + 1.0));
  out.startperiod = 2 * pi * out.timefactor;
  const double lim = pi / (D + 1.0);
  const double s = out.startperiod;
  if (D < -0.5)
    out.chain_holds = 2 * pi < s && s < lim;
  else if (D > -0.5)
    out.chain_holds = s < lim && lim < 2 * pi;
  else
    out.chain_holds = s == 2 * pi && lim == 2 * pi;
  return out;
}

}  // namespace period_atlas::dynsys
