#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "period_atlas/dynsys/period.hpp"
#include "period_atlas/dynsys/potential.hpp"
#include "period_atlas/errors.hpp"

namespace period_atlas::dynsys {

// With s(u) = u(1-u)^(-(D+1)) the level V = h reads s = sqrt(2h) sin(theta),
// ds = (1+Du)(1-u)^(-(D+2)) du and v = sqrt(2h) cos(theta), so the endpoint
// singularities disappear:
//   T = 2 int dtheta/(1+Du),  I = 2 int u(1-u)^(-2D-1)/(1+Du) dtheta,
//   A = 4h int cos^2(theta)/(1+Du) dtheta  over (-pi/2, pi/2).

namespace {

constexpr double kTol = 1e-14;
constexpr double kAccept = 1e-6;

template <class K>
QuadratureResult theta_integral(double h, double D, K kernel) {
  if (!(D > -1.0 && D < 0.0)) throw DomainError("quadrature needs D in (-1,0)");
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("energy level must be positive");
  const double r = std::sqrt(2.0 * h);
  auto f = [&](double th) {
    const double u = unstraighten(r * std::sin(th), D);
    return kernel(th, u);
  };
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  double err = 0.0;
  double l1 = 0.0;
  const double half = std::numbers::pi / 2;
  const double left = integrator.integrate(f, -half, 0.0, kTol, &err, &l1);
  double err2 = 0.0;
  const double right = integrator.integrate(f, 0.0, half, kTol, &err2, &l1);
  QuadratureResult out{left + right, err + err2};
  if (!std::isfinite(out.value) || out.err_estimate > kAccept * std::abs(out.value))
    throw ConvergenceFailure("theta quadrature did not converge");
  return out;
}

}  // namespace

QuadratureResult period_quadrature(double h, double D) {
  auto res = theta_integral(h, D, [D](double, double u) { return 1.0 / (1.0 + D * u); });
  res.value *= 2.0;
  res.err_estimate *= 2.0;
  return res;
}

AbelianTriple abelian_triple(double h, double D) {
  const auto T = period_quadrature(h, D);
  auto I = theta_integral(h, D, [D](double, double u) {
    return u * std::pow(1.0 - u, -2.0 * D - 1.0) / (1.0 + D * u);
  });
  auto A = theta_integral(h, D, [D](double th, double u) {
    const double c = std::cos(th);
    return c * c / (1.0 + D * u);
  });
  AbelianTriple out;
  out.T = T.value;
  out.I = 2.0 * I.value;
  out.A = 4.0 * h * A.value;
  out.err_estimate = std::max({T.err_estimate, 2.0 * I.err_estimate, 4.0 * h * A.err_estimate});
  return out;
}

}  // namespace period_atlas::dynsys
