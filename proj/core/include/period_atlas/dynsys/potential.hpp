#pragma once

namespace period_atlas::dynsys {

/// Potential chart: u = x, v = y (1-x)^(-(D+1)), H = v^2/2 + V(u).
struct PotentialTerms {
  double V = 0.0;
  double dV = 0.0;
  double ell = 1.0;
};
/// V = u^2 (1-u)^(-2(D+1)) / 2, V' = u(1+Du)(1-u)^(-2D-3), ell = (1-u)^(-(D+2)).
/// DomainError for u >= 1.
PotentialTerms potential_terms(double u, double D);

/// H at the Loud point (x, y) of the family F = D + 1.
double loud_energy(double D, double x, double y);

/// s(u) = u (1-u)^(-(D+1)), so V = s^2/2.
double straighten(double u, double D);
/// Inverse of straighten. Any s > 0 has a preimage in (0,1); s < 0 needs D < 0.
/// Throws DomainError when no preimage exists, ConvergenceFailure otherwise.
double unstraighten(double s, double D);

/// The w < 0 with V(w) = V(u), for u in (0,1) and D in (-1,0).
double involution_sigma(double u, double D);

struct TurningPoints {
  double minus = 0.0;
  double plus = 0.0;
};
/// The two solutions of V(u) = h around the origin. D in (-1,0).
TurningPoints turning_points(double h, double D);
/// u_+ alone; also defined for D = 0.
double upper_turning_point(double h, double D);

/// f(u) = -g/2 + (gV/V')' with g = u(1-u)^(-3(D+1)), in closed form.
double criterion_f(double u, double D);
/// (f(u) - f(sigma(u)) sigma'(u))/2. DomainError at D = -1/2 or off the
/// domain, PoleError within 1e-12 of 1 + Du = 0.
double pi_sigma(double u, double D);

/// (-D + sqrt(-D(1+D)))/(D(1+2D)).
double w_star(double D);
/// F_1 and F_2 of the two curves whose intersection the criterion excludes.
double curve_F1(double u, double w, double D);
double curve_F2(double u, double w, double D);
/// psi_1(u) = sigma(u) and psi_2(u) the root of F_2 in (w*, 0).
double curve_psi1(double u, double D);
/// Throws NoBracket when F_2(u, .) has no sign change on (w*, 0).
double curve_psi2(double u, double D);
/// psi_1 - psi_2 for u in (0,1) and D in (-1/2,0).
double curve_gap(double u, double D);

}  // namespace period_atlas::dynsys
