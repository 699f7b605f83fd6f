#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <ostream>

#include "period_atlas/dynsys/period.hpp"
#include "period_atlas/dynsys/potential.hpp"
#include "period_atlas/dynsys/systems.hpp"
#include "period_atlas/errors.hpp"

namespace period_atlas::dynsys {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;
using std::numbers::pi;

struct Crossing {
  double t = 0.0;
  State x{};
  std::size_t steps = 0;
};

// Integrates x' = field(x) until the event g turns from negative to
// nonnegative at a point where accept(x) holds. dg is the derivative of g
// along the flow. observe(t, x) sees every step end.
template <class Field, class G, class DG, class Accept, class Inside, class Observe>
Crossing run_to_section(Field field, State x0, G g, DG dg, Accept accept, Inside inside, Observe observe,
                        const ReturnMapOptions& opts) {
  auto sys = [&](const State& x, State& dxdt, double) {
    const Vec2 v = field(x);
    dxdt = {v.x, v.y};
  };
  auto stepper = odeint::make_dense_output(opts.abs_tol, opts.rel_tol, odeint::runge_kutta_dopri5<State>());
  stepper.initialize(x0, 0.0, 1e-4);
  observe(0.0, x0);
  double g_prev = g(x0);
  std::size_t steps = 0;
  State xa{};
  while (true) {
    const auto [t0, t1] = stepper.do_step(sys);
    ++steps;
    const State& x1 = stepper.current_state();
    if (!inside(x1)) throw EscapedAnnulus("orbit left the bounding region");
    if (t1 > opts.max_time) throw MaxTimeExceeded("no return to the section before max_time");
    const double g1 = g(x1);
    if (g_prev < 0.0 && g1 >= 0.0 && accept(x1)) {
      double a = t0;
      double b = t1;
      double t = t1;
      State x = x1;
      for (int it = 0; it < 100; ++it) {
        const double gx = g(x);
        if (gx == 0.0) break;
        if (gx < 0.0)
          a = t;
        else
          b = t;
        const double d = dg(x);
        double tn = (d != 0.0) ? t - gx / d : 0.5 * (a + b);
        if (!(tn > a && tn < b)) tn = 0.5 * (a + b);
        const bool done = std::abs(tn - t) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(t);
        t = tn;
        stepper.calc_state(t, xa);
        x = xa;
        if (done || b - a <= 4 * std::numeric_limits<double>::epsilon() * std::abs(t)) break;
      }
      observe(t, x);
      return {t, x, steps};
    }
    observe(t1, x1);
    g_prev = g1;
  }
}

double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Ray section through `start` around `center` for a planar field in Cartesian
// coordinates.
template <class Field, class Observe>
Crossing ray_return(Field field, Vec2 start, const ReturnMapOptions& opts, Observe observe) {
  const Vec2 c = opts.center;
  Vec2 dir{start.x - c.x, start.y - c.y};
  const double len = std::hypot(dir.x, dir.y);
  if (!(len > 0.0)) throw DomainError("the start point is the center");
  dir = {dir.x / len, dir.y / len};
  const double orient = cross(dir, field(State{start.x, start.y}));
  if (orient == 0.0) throw DomainError("the flow is tangent to the section at the start");
  const double sgn = orient > 0 ? 1.0 : -1.0;
  auto g = [&](const State& x) { return sgn * cross(dir, {x[0] - c.x, x[1] - c.y}); };
  auto dg = [&](const State& x) { return sgn * cross(dir, field(x)); };
  auto accept = [&](const State& x) { return (x[0] - c.x) * dir.x + (x[1] - c.y) * dir.y > 0.0; };
  auto inside = [&](const State& x) {
    return std::isfinite(x[0]) && std::isfinite(x[1]) && std::abs(x[0]) <= opts.box && std::abs(x[1]) <= opts.box;
  };
  return run_to_section(field, State{start.x, start.y}, g, dg, accept, inside, observe, opts);
}

template <class Observe>
ReturnMapResult loud_return(const LoudParams& p, const PlanarState& start, const ReturnMapOptions& opts,
                            Observe observe) {
  if (start.chart() != Chart::Loud) throw DomainError("Loud return map expects a Loud (x,y) start");
  auto field = [&](const State& x) { return loud_field(p, Vec2{x[0], x[1]}); };
  const bool energy = p.is_distinguished() && p.D > -1.0 && p.D <= 0.0 && start.c0() < 1.0;
  double h0 = 0.0;
  double drift = 0.0;
  if (energy) h0 = loud_energy(p.D, start.c0(), start.c1());
  auto obs = [&](double t, const State& x) {
    if (energy) {
      if (!(x[0] < 1.0)) throw EscapedAnnulus("orbit crossed the invariant line x = 1");
      drift = std::max(drift, std::abs(loud_energy(p.D, x[0], x[1]) - h0));
    }
    observe(t, x);
  };
  const Crossing c = ray_return(field, start.vec(), opts, obs);
  ReturnMapResult out;
  out.period = c.t;
  out.hit = {c.x[0], c.x[1]};
  out.steps = c.steps;
  if (energy) out.energy_drift = drift;
  return out;
}

}  // namespace

ReturnMapResult period_returnmap(const LoudParams& p, const PlanarState& start, const ReturnMapOptions& opts) {
  return loud_return(p, start, opts, [](double, const State&) {});
}

ReturnMapResult period_returnmap(const ZkParams& p, const PlanarState& start, const ReturnMapOptions& opts) {
  auto none = [](double, const State&) {};
  if (p.k == 0) {
    if (start.chart() != Chart::Complex) throw DomainError("k = 0 return map expects a complex start");
    auto field = [&](const State& x) { return zk_field_complex(p, Vec2{x[0], x[1]}); };
    ReturnMapOptions o = opts;
    o.center = {};
    const Crossing c = ray_return(field, start.vec(), o, none);
    ReturnMapResult out;
    out.period = c.t;
    out.hit = {c.x[0], c.x[1]};
    out.steps = c.steps;
    return out;
  }
  if (p.k < 0 || p.n < 0) throw DomainError("Z_k return map needs n, k >= 0");
  if (!p.is_normalized()) throw NotNormalized("Z_k return map needs a = 1; call normalize_zk first");
  if (start.chart() != Chart::Polar) throw DomainError("Z_k return map expects a polar start");
  if (!(start.c0() > 0.0)) throw DomainError("the start point is the center");
  const double target = start.c1() + 2 * pi / p.k;
  auto field = [&](const State& x) { return zk_field_polar(p, x[0], x[1]); };
  auto g = [&](const State& x) { return x[1] - target; };
  auto dg = [&](const State& x) { return field(x).y; };
  auto accept = [](const State&) { return true; };
  auto inside = [&](const State& x) {
    return std::isfinite(x[0]) && std::isfinite(x[1]) && x[0] > 0.0 && x[0] <= opts.box;
  };
  const Crossing c = run_to_section(field, State{start.c0(), start.c1()}, g, dg, accept, inside, none, opts);
  ReturnMapResult out;
  out.period = p.k * c.t;
  out.hit = {c.x[0], c.x[1]};
  out.steps = c.steps;
  return out;
}

void dump_orbit_csv(const LoudParams& p, const PlanarState& start, std::ostream& os, const ReturnMapOptions& opts) {
  os << "t,x,y\n";
  loud_return(p, start, opts, [&](double t, const State& x) {
    os << format_g17(t) << ',' << format_g17(x[0]) << ',' << format_g17(x[1]) << '\n';
  });
}

P2Fit fit_p2(const LoudParams& p, std::span<const double> rhos, const ReturnMapOptions& opts) {
  if (rhos.size() < 3) throw DomainError("the P2 fit needs at least three radii");
  // Normal equations for the basis (1, rho, rho^2).
  double m[3][4] = {};
  for (double rho : rhos) {
    if (!(rho > 0.0)) throw DomainError("fit radii must be positive");
    const double T = period_returnmap(p, PlanarState(Chart::Loud, rho, 0.0), opts).period;
    const double y = (T - 2 * pi) / (rho * rho);
    const double b[3] = {1.0, rho, rho * rho};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += b[i] * b[j];
      m[i][3] += b[i] * y;
    }
  }
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    std::swap(m[c], m[piv]);
    if (m[c][c] == 0.0) throw DomainError("degenerate P2 fit (repeated radii)");
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

}  // namespace period_atlas::dynsys
