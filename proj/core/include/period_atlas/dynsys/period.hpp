#pragma once

#include <iosfwd>
#include <optional>
#include <span>

#include "period_atlas/dynsys/types.hpp"

namespace period_atlas::dynsys {

struct QuadratureResult {
  double value = 0.0;
  double err_estimate = 0.0;
};

/// T(h) = 2 int ell/sqrt(2(h - V)) du over (u_-, u_+), for D in (-1,0).
/// The integral is taken in theta with s(u) = sqrt(2h) sin theta.
QuadratureResult period_quadrature(double h, double D);

struct AbelianTriple {
  double T = 0.0;
  double I = 0.0;
  double A = 0.0;
  double err_estimate = 0.0;
};
/// T, I = 2 int g/v du and A = 2 int ell v du on the upper branch v > 0.
AbelianTriple abelian_triple(double h, double D);

struct ReturnMapOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  /// The orbit must stay inside |x|, |y| <= box (r <= box in polar).
  double box = 1e12;
  double max_time = 1e4;
  /// Rotation center; the section is the ray from here through the start.
  Vec2 center{};
};

struct ReturnMapResult {
  double period = 0.0;
  /// Where the orbit meets the section again, in the start chart.
  Vec2 hit{};
  /// Largest |H - H0| seen at step ends; only for Loud with F = D + 1.
  std::optional<double> energy_drift;
  std::size_t steps = 0;
};

/// Loud start in the Loud chart. EscapedAnnulus, MaxTimeExceeded.
ReturnMapResult period_returnmap(const LoudParams& p, const PlanarState& start,
                                 const ReturnMapOptions& opts = {});
/// Z_k start: polar with a normalized system and k >= 1 (k times the time from
/// theta0 to theta0 + 2pi/k), or complex with k = 0 and any a.
ReturnMapResult period_returnmap(const ZkParams& p, const PlanarState& start,
                                 const ReturnMapOptions& opts = {});

/// One period of the orbit as `t,x,y` rows.
void dump_orbit_csv(const LoudParams& p, const PlanarState& start, std::ostream& os,
                    const ReturnMapOptions& opts = {});

struct P2Fit {
  double P2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
};
/// Least squares of (T(rho) - 2pi)/rho^2 = P2 + c3 rho + c4 rho^2 with starts
/// (rho, 0). Needs at least three radii.
P2Fit fit_p2(const LoudParams& p, std::span<const double> rhos, const ReturnMapOptions& opts = {});

}  // namespace period_atlas::dynsys
