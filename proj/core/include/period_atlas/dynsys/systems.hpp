#pragma once

#include <complex>

#include "period_atlas/dynsys/types.hpp"

namespace period_atlas::dynsys {

/// (-y + xy, x + Dx^2 + Fy^2).
Vec2 loud_field(const LoudParams& p, const PlanarState& s);
Vec2 loud_field(const LoudParams& p, Vec2 xy);

/// (dr/dt, dtheta/dt) = (r^(2n+k+1) cos k theta, 1 + r^(2n+k) sin k theta).
/// Throws NotNormalized unless a = 1.
Vec2 zk_field(const ZkParams& p, const PlanarState& s);
Vec2 zk_field_polar(const ZkParams& p, double r, double theta);
/// iz + a (z conj z)^n z^(k+1) for any a and k >= 0, as (Re, Im).
Vec2 zk_field_complex(const ZkParams& p, Vec2 z);

struct ZkNormalization {
  double lambda = 1.0;
  double mu = 0.0;
  ZkParams normalized;
};
/// z = lambda e^(i mu) w sends parameter a to 1 without changing time.
/// ZeroCoefficient for a = 0, DomainError for k = 0.
ZkNormalization normalize_zk(const ZkParams& p);

struct LoudReduction {
  LoudParams params;
  double b = 0.0;
};
/// D = -k/(2(k+n)), F = D + 1, b = 1 + 2n/k. DomainError unless n, k >= 1.
LoudReduction zk_to_loud(int n, int k);

struct ZkLoudPoint {
  PlanarState loud;
  double b = 0.0;
  /// tau = k t and s = -tau; one Loud loop spans k sectors of angle 2pi/k, so
  /// periods agree with factor exactly 1.
  double tau_per_t = 1.0;
  double s_per_tau = -1.0;
};
/// The Loud point corresponding to z = rho: (0, -(1+b) rho^(2n+k)).
ZkLoudPoint map_zk_orbit(const ZkParams& p, double rho);

/// pi/12 (10D^2 + 10DF - D + 4F^2 - 5F + 1).
double p2_constant(double D, double F);

/// pi/(D+1) on (-1,0), +inf for D = -1 and outside [-1,0].
double asymptotic_period(const LoudParams& p);
/// 2(k+n)pi/(k+2n) for k >= 1. For k = 0 with a = alpha i: +inf when alpha < 0
/// (the annulus ends at a circle of equilibria), 0 when alpha > 0.
double asymptotic_period(const ZkParams& p);

/// D = -1: 2pi/sqrt(1-r^2). DomainError for r outside [0,1).
double period_dm1(double r);
/// k = 0, a = alpha i: 2pi/(1 + alpha u^n) with u = z conj z. DomainError when
/// 1 + alpha u^n <= 0 or u < 0.
double period_kzero(double alpha, int n, double u);

struct SecondCenter {
  LoudParams image;
  double timefactor = 1.0;
  double startperiod = 0.0;
  /// 2pi < start < pi/(D+1) for D < -1/2, start < pi/(D+1) < 2pi for
  /// D > -1/2, all equal at D = -1/2.
  bool chain_holds = false;
};
/// u = (Dx+1)/(D+1), v = sqrt(-D/(D+1)) y, D -> -1-D. DomainError off (-1,0).
SecondCenter second_center_transform(const LoudParams& p);

}  // namespace period_atlas::dynsys
