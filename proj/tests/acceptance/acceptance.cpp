#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "period_atlas/dynsys/period.hpp"
#include "period_atlas/dynsys/potential.hpp"
#include "period_atlas/dynsys/systems.hpp"
#include "period_atlas/exactalg/algorithms.hpp"
#include "period_atlas/exactalg/poly_io.hpp"

#ifndef PERIOD_ATLAS_CLI
#error "PERIOD_ATLAS_CLI must name the command-line binary"
#endif

using namespace period_atlas;
using namespace period_atlas::dynsys;
using exactalg::IntervalQ;
using exactalg::MPoly;
using exactalg::Rational;
using exactalg::Var;
using std::numbers::pi;
using testing::q;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// Accumulates sub-checks of one criterion and a short failure log.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) {
      ++failed_;
      if (failed_ <= 5) log_ << (failed_ > 1 ? "; " : "") << what;
    }
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream os;
    os << (total_ - failed_) << "/" << total_ << " checks";
    if (failed_) os << "; failed: " << log_.str();
    return os.str();
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::ostringstream log_;
};

std::string g(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string secs(double t) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << t << " s";
  return os.str();
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const MPoly u = MPoly::variable(Var::U);
const MPoly w = MPoly::variable(Var::W);
const MPoly D = MPoly::variable(Var::D);

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MPoly read_poly(const fs::path& p) { return exactalg::parse_text(slurp(p)); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct CliRun {
  int exit_code = -1;
  double seconds = 0.0;
  json report;
  fs::path polys;
};

CliRun run_certify(const std::string& branch, const fs::path& dir) {
  fs::create_directories(dir);
  CliRun r;
  r.polys = dir / "polys";
  const fs::path out = dir / "report.json";
  const std::string cmd = std::string("\"") + PERIOD_ATLAS_CLI + "\" certify --branch " + branch + " --out \"" +
                          out.string() + "\" --emit-polys \"" + r.polys.string() + "\" > \"" +
                          (dir / "stdout.txt").string() + "\" 2>&1";
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  r.seconds = seconds_since(t0);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (fs::exists(out)) r.report = json::parse(slurp(out));
  return r;
}

const json* find_step(const json& report, const std::string& name) {
  if (!report.contains("steps")) return nullptr;
  for (const auto& s : report["steps"])
    if (s["name"] == name) return &s;
  return nullptr;
}

fs::path scratch_dir() {
  return fs::temp_directory_path() / ("period_atlas_acceptance_" + std::to_string(::getpid()));
}

// 1 --------------------------------------------------------------------------

MPoly q1_d13() { return u.pow(3) * (1 - w).pow(2) + w.pow(3) * (1 - u).pow(2); }

MPoly q2_d13() {
  return -9 * u * (u - 3).pow(3) + 3 * (81 - 270 * u + 180 * u.pow(2) - 36 * u.pow(3) + 5 * u.pow(4)) * w +
         (-243 + 540 * u - 270 * u.pow(2) + 18 * u.pow(3) - 5 * u.pow(4)) * w.pow(2) -
         (u + 3) * (-27 + 45 * u - 21 * u.pow(2) + u.pow(3)) * w.pow(3) -
         (u - 1) * (-9 + 6 * u + u.pow(2)) * w.pow(4);
}

const long kRCoefficients[13] = {531441, -3188646, 8148762, -11455506, 9546255, -4776408, 1487889,
                                 -406782, 143856,  -32238,   1593,    -180,      -4};

Outcome criterion1() {
  Checks c;
  // (a) uses local copies of Q1, Q2 and R, not the library ones.
  const auto t0 = std::chrono::steady_clock::now();
  MPoly R;
  for (unsigned i = 0; i < 13; ++i) R += MPoly(kRCoefficients[i]) * u.pow(i);
  const MPoly res = exactalg::resultant(q1_d13(), q2_d13(), Var::W);
  c.expect(res == 32 * (u - 1).pow(3) * u.pow(6) * R, "(a) Res(Q1,Q2,w) = 32(u-1)^3 u^6 R(u)");
  c.expect(exactalg::sturm_count(R, IntervalQ(q(0), q(1))) == 0, "(a) R has no roots in (0,1)");
  const double t_a = seconds_since(t0);

  const CliRun run = run_certify("decreasing", scratch_dir() / "decreasing");
  c.expect(run.exit_code == 0, "certify --branch decreasing exit " + std::to_string(run.exit_code));
  c.expect(run.report.value("overall", "") == "pass", "overall verdict");
  c.expect(run.seconds < 15 * 60, "full pipeline under 15 min");
  if (run.report.is_null()) return {c.ok(), c.summary()};

  const json* d13 = find_step(run.report, "replay_D13");
  c.expect(d13 && (*d13)["verdict"] == "pass", "(a) replay_D13 step");
  if (d13)
    c.expect(exactalg::parse_json((*d13)["witness"]["R"].dump()) == R, "(a) reported R equals the reference coefficients");

  // (b)
  const MPoly R2 = read_poly(run.polys / "R2.txt");
  c.expect(R2.substitute(Var::U, 0) == 54 * D * (D + 1), "(b) R2(0;D) = 54D(D+1)");
  c.expect(R2.substitute(Var::U, 1) == 4 * D * (1 + 2 * D).pow(4) * (D + 1).pow(9), "(b) R2(1;D)");

  // (c)
  const json* pneg = find_step(run.report, "check_P_negative");
  c.expect(pneg && (*pneg)["verdict"] == "pass", "(c) check_P_negative step");
  if (pneg) {
    const MPoly dw = exactalg::parse_json((*pneg)["witness"]["delta_w"].dump());
    const MPoly expected =
        -16 * (D + 1).pow(4) * D.pow(4) * (304 * D.pow(4) + 608 * D.pow(3) + 296 * D.pow(2) - 8 * D + 27);
    c.expect(dw == expected, "(c) Delta_w matches the reference product");
  }

  // (d) exponents recovered from the emitted Delta_u by exact trial division.
  MPoly rest = read_poly(run.polys / "Delta_u.txt");
  const MPoly K0 = read_poly(run.polys / "K0.txt");
  const MPoly K1 = read_poly(run.polys / "K1.txt");
  c.expect(K0 == 22 * D.pow(2) + 22 * D + 1 || K0 == D.pow(2) + D + q(1, 22), "K0 = 22D^2 + 22D + 1");
  unsigned e = 0;
  std::tie(e, rest) = exactalg::strip_factor(rest, D);
  c.expect(e == 43, "(d) D^" + std::to_string(e));
  std::tie(e, rest) = exactalg::strip_factor(rest, D + 1);
  c.expect(e == 43, "(d) (D+1)^" + std::to_string(e));
  std::tie(e, rest) = exactalg::strip_factor(rest, 1 + 2 * D);
  c.expect(e == 32, "(d) (1+2D)^" + std::to_string(e));
  std::tie(e, rest) = exactalg::strip_factor(rest, K0);
  c.expect(e == 3, "(d) K0^" + std::to_string(e));
  std::tie(e, rest) = exactalg::strip_factor(rest, K1);
  c.expect(e == 2, "(d) K1^" + std::to_string(e));
  const MPoly W = read_poly(run.polys / "W.txt");
  std::tie(e, rest) = exactalg::strip_factor(rest, W);
  c.expect(e == 2 && rest.is_constant(), "(d) remaining block W^2 times a constant");

  // (e) one rational D per sub-interval, recounted from R2 here.
  const json* sub = find_step(run.report, "check_subintervals");
  c.expect(sub && (*sub)["verdict"] == "pass", "(e) check_subintervals step");
  if (sub) {
    const auto& samples = (*sub)["witness"]["samples"];
    c.expect(samples.size() == 4, "(e) four sub-intervals");
    for (const auto& s : samples) {
      const Rational d0 = exactalg::parse_rational(s["D"].get<std::string>());
      c.expect(exactalg::sturm_count(R2.substitute(Var::D, d0), IntervalQ(q(0), q(1))) == 0,
               "(e) R2 roots at D = " + s["D"].get<std::string>());
    }
  }

  // (f)
  for (const char* root : {"D0", "D1", "D2"}) {
    const json* b = find_step(run.report, std::string("bounding_poly[") + root + "]");
    c.expect(b && (*b)["verdict"] == "pass", std::string("(f) bounding step ") + root);
    const MPoly U = read_poly(run.polys / (std::string("U_") + root + ".txt"));
    c.expect(!U.uses(Var::D) && exactalg::sturm_count(U, IntervalQ(q(0), q(1))) == 0 &&
                 U.evaluate(q(1, 2), 0, 0) < 0,
             std::string("(f) U_") + root + " < 0 on (0,1)");
  }
  c.expect(t_a < 10.0, "(a) under 10 s");
  return {c.ok(), c.summary() + "; (a) " + secs(t_a) + ", full run " + secs(run.seconds)};
}

// 2 --------------------------------------------------------------------------

Outcome criterion2() {
  Checks c;
  const CliRun run = run_certify("increasing", scratch_dir() / "increasing");
  c.expect(run.exit_code == 0, "certify --branch increasing exit " + std::to_string(run.exit_code));
  c.expect(run.report.value("overall", "") == "pass", "overall verdict");
  c.expect(run.seconds < 15 * 60, "full pipeline under 15 min");
  std::size_t bounding = 0;
  if (run.report.contains("steps")) {
    for (const auto& s : run.report["steps"]) {
      c.expect(s["verdict"] == "pass", s["name"].get<std::string>());
      bounding += s["name"].get<std::string>().rfind("bounding_poly", 0) == 0;
    }
  }
  c.expect(find_step(run.report, "compute_R2") != nullptr, "compute_R2 present");
  c.expect(find_step(run.report, "check_subintervals") != nullptr, "check_subintervals present");
  return {c.ok(), c.summary() + "; " + std::to_string(bounding) + " bounding steps, " + secs(run.seconds)};
}

// 3 --------------------------------------------------------------------------

Outcome criterion3() {
  Checks c;
  double worst = 0.0;
  const LoudParams half = LoudParams::distinguished(-0.5);
  for (int i = 0; i <= 12; ++i) {
    const double h = std::pow(10.0, -3.0 + 0.5 * i);
    const double tq = period_quadrature(h, -0.5).value;
    const double tr = period_returnmap(half, PlanarState(Chart::Loud, upper_turning_point(h, -0.5), 0)).period;
    worst = std::max({worst, std::abs(tq - 2 * pi), std::abs(tr - 2 * pi)});
    c.expect(std::abs(tq - 2 * pi) < 1e-9, "quadrature D=-1/2 h=" + g(h));
    c.expect(std::abs(tr - 2 * pi) < 1e-9, "return map D=-1/2 h=" + g(h));
  }
  // The D = 0 annulus is h < 1/2.
  const LoudParams zero = LoudParams::distinguished(0.0);
  for (double h : {1e-3, 1e-2, 0.05, 0.1, 0.2, 0.3, 0.4, 0.45}) {
    const double tr = period_returnmap(zero, PlanarState(Chart::Loud, upper_turning_point(h, 0.0), 0)).period;
    worst = std::max(worst, std::abs(tr - 2 * pi));
    c.expect(std::abs(tr - 2 * pi) < 1e-9, "return map D=0 h=" + g(h));
  }
  return {c.ok(), c.summary() + "; max |T - 2pi| = " + g(worst)};
}

// 4 --------------------------------------------------------------------------

Outcome criterion4() {
  Checks c;
  const double rhos[] = {0.002, 0.004, 0.006, 0.008, 0.01};
  std::ostringstream detail;
  for (double d : {-0.4, -0.25, -0.1}) {
    const double target = pi * d * (2 * d + 1);
    const double fit = fit_p2(LoudParams::distinguished(d), rhos).P2;
    c.expect(rel_close(fit, target, 1e-3), "fit at D=" + g(d));
    c.expect(rel_close(p2_constant(d, d + 1), target, 1e-14), "P2 formula at D=" + g(d));
    detail << " D=" << d << ":" << std::abs(fit / target - 1);
  }
  const LoudParams p{-0.25, 0.75};
  c.expect(rel_close(p2_constant(p.D, p.F), -pi / 8, 1e-14), "P2(-1/4,3/4) = -pi/8");
  const double fit = fit_p2(p, rhos).P2;
  c.expect(rel_close(fit, -pi / 8, 1e-3), "fit at (-1/4,3/4)");
  detail << " (-1/4,3/4):" << std::abs(fit / (-pi / 8) - 1);
  return {c.ok(), c.summary() + "; relative errors" + detail.str()};
}

// 5 --------------------------------------------------------------------------

Outcome criterion5() {
  Checks c;
  std::ostringstream detail;
  for (double d : {-0.75, -0.25, -0.1}) {
    const double T = period_quadrature(1e6, d).value;
    const double lim = pi / (d + 1);
    c.expect(rel_close(T, lim, 1e-2), "T(1e6) at D=" + g(d));
    detail << " D=" << d << ":" << std::abs(T / lim - 1);
  }
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {3, 4}}) {
    const ZkParams z{n, k, {1.0, 0.0}};
    const double b = zk_to_loud(n, k).b;
    // Radius at which the mapped Loud energy is 1e4.
    const double rho = std::pow(std::sqrt(2e4) / (1 + b), 1.0 / (2 * n + k));
    const double T = period_returnmap(z, PlanarState(Chart::Polar, rho, 0)).period;
    const double lim = 2.0 * (k + n) * pi / (k + 2 * n);
    c.expect(rel_close(T, lim, 1e-2), "Z_k (" + std::to_string(n) + "," + std::to_string(k) + ")");
    detail << " (" << n << "," << k << "):" << std::abs(T / lim - 1);
  }
  return {c.ok(), c.summary() + "; relative errors" + detail.str()};
}

// 6 --------------------------------------------------------------------------

Outcome criterion6() {
  Checks c;
  const double t = period_returnmap(LoudParams{-1.0, 0.0}, PlanarState(Chart::Loud, 0.6, 0)).period;
  c.expect(std::abs(t - 7.853981633974483) < 1e-8, "D=-1 at r=0.6 gave " + g(t));
  double worst = std::abs(t - 7.853981633974483);
  for (const auto& [alpha, n] : std::vector<std::pair<double, int>>{{1.0, 1}, {-1.0, 2}}) {
    const ZkParams z{n, 0, {0.0, alpha}};
    const double umax = alpha < 0 ? std::pow(-1.0 / alpha, 1.0 / n) : 2.0;
    for (int i = 1; i <= 20; ++i) {
      const double uu = umax * i / 21.0;
      const double T = period_returnmap(z, PlanarState(Chart::Complex, std::sqrt(uu), 0)).period;
      const double exact = 2 * pi / (1 + alpha * std::pow(uu, n));
      worst = std::max(worst, std::abs(T - exact));
      c.expect(std::abs(T - exact) < 1e-8, "k=0 alpha=" + g(alpha) + " u=" + g(uu));
    }
  }
  return {c.ok(), c.summary() + "; max abs error " + g(worst)};
}

// 7 --------------------------------------------------------------------------

Outcome criterion7() {
  Checks c;
  double worst_q = 0.0, worst_z = 0.0;
  for (double d : {-0.75, -0.5, -0.25, -0.1})
    for (double h : {0.01, 0.1, 1.0, 10.0}) {
      const double tq = period_quadrature(h, d).value;
      const double tr =
          period_returnmap(LoudParams::distinguished(d), PlanarState(Chart::Loud, turning_points(h, d).plus, 0))
              .period;
      worst_q = std::max(worst_q, std::abs(tr / tq - 1));
      c.expect(rel_close(tr, tq, 1e-7), "engines at D=" + g(d) + " h=" + g(h));
    }
  struct Triple {
    int n, k;
    double rho;
  };
  for (const Triple& t : {Triple{1, 1, 0.5}, Triple{1, 1, 1.5}, Triple{1, 2, 0.8}, Triple{2, 1, 0.7},
                          Triple{3, 4, 0.9}, Triple{2, 3, 1.2}, Triple{1, 3, 0.4}, Triple{4, 1, 1.0}}) {
    const ZkParams z{t.n, t.k, {1.0, 0.0}};
    const double tz = period_returnmap(z, PlanarState(Chart::Polar, t.rho, 0)).period;
    const double tl = period_returnmap(zk_to_loud(t.n, t.k).params, map_zk_orbit(z, t.rho).loud).period;
    worst_z = std::max(worst_z, std::abs(tz / tl - 1));
    c.expect(rel_close(tz, tl, 1e-8), "Z_k vs Loud n=" + std::to_string(t.n) + " k=" + std::to_string(t.k));
  }
  return {c.ok(), c.summary() + "; max rel quadrature/return map " + g(worst_q) + ", Z_k/Loud " + g(worst_z)};
}

// 8 --------------------------------------------------------------------------

Outcome criterion8() {
  Checks c;
  double worst = 0.0;
  for (double d : {-0.3, -0.6})
    for (double h : {0.5, 5.0}) {
      const double step = 1e-4 * h;
      const auto p = abelian_triple(h + step, d);
      const auto m = abelian_triple(h - step, d);
      const double T = abelian_triple(h, d).T;
      const double r1 = std::abs((p.A - m.A) / (2 * step) - T);
      const double r2 = std::abs(2 * h * (p.T - m.T) / (2 * step) + (p.I - m.I) / (2 * step) / (d + 1));
      worst = std::max({worst, r1, r2});
      c.expect(r1 < 1e-6, "A' = T at D=" + g(d) + " h=" + g(h));
      c.expect(r2 < 1e-6, "2hT' + I'/(D+1) = 0 at D=" + g(d) + " h=" + g(h));
    }
  return {c.ok(), c.summary() + "; max residual " + g(worst)};
}

// 9 --------------------------------------------------------------------------

Outcome criterion9() {
  Checks c;
  for (double d : {-0.9, -0.75, -0.6, -0.4, -0.25, -0.1}) {
    const Trend want = d > -0.5 ? Trend::Decreasing : Trend::Increasing;
    PeriodCurve curve;
    for (int i = 0; i < 50; ++i) {
      const double h = std::pow(10.0, -2.0 + 4.0 * i / 49.0);
      curve.push({h, period_quadrature(h, d).value, PeriodMethod::Quadrature, 0.0});
    }
    const auto v = curve.monotonicity(0.0);
    c.expect(v.trend == want, "period curve at D=" + g(d) + " (violation index " +
                                  std::to_string(v.first_violation) + ")");
    int pos = 0, neg = 0;
    for (int i = 1; i <= 512; ++i) {
      const double val = pi_sigma(i / 513.0, d);
      pos += val > 0;
      neg += val < 0;
    }
    c.expect((pos == 512) != (neg == 512), "Pi_sigma single-signed at D=" + g(d));
  }
  return {c.ok(), c.summary() + "; h in [1e-2, 1e2] log-spaced, u = i/513"};
}

// 10 -------------------------------------------------------------------------

Outcome criterion10() {
  Checks c;
  std::mt19937_64 rng(20261018);
  for (int t = 0; t < 200; ++t) {
    const auto rp = testing::random_root_poly(rng);
    std::size_t known = 0;
    for (const auto& r : rp.roots) known += rp.interval.contains(r) ? 1 : 0;
    const std::size_t grid = testing::grid_root_count(rp.poly, rp.interval, q(1, 32));
    c.expect(grid == known, "grid oracle self-check " + std::to_string(t));
    c.expect(exactalg::sturm_count(rp.poly, rp.interval) == grid, "sturm case " + std::to_string(t));
  }
  int shared_pairs = 0;
  for (int t = 0; t < 200; ++t) {
    exactalg::UPoly a = testing::random_upoly(rng, 5);
    exactalg::UPoly b = testing::random_upoly(rng, 5);
    if (t % 2 == 0) {
      const exactalg::UPoly f = testing::random_upoly(rng, 2);
      a = a * f;
      b = b * f;
    }
    while (a.degree() < 1) a = testing::random_upoly(rng, 5);
    while (b.degree() < 1) b = testing::random_upoly(rng, 5);
    const bool vanishes = exactalg::resultant(a.to_mpoly(Var::U), b.to_mpoly(Var::U), Var::U).is_zero();
    const bool shared = exactalg::gcd(a, b).degree() >= 1;
    shared_pairs += shared;
    c.expect(vanishes == shared, "resultant pair " + std::to_string(t));
  }
  c.expect(shared_pairs >= 90, "enough pairs with a common root");
  std::uniform_int_distribution<unsigned> mult(1, 3);
  for (int t = 0; t < 100; ++t) {
    exactalg::UPoly p(Rational(1));
    for (int i = 0; i < 3; ++i) p = p * testing::upow(testing::random_upoly(rng, 3), mult(rng));
    const MPoly mp = p.to_mpoly(Var::D);
    if (mp.is_constant()) continue;
    MPoly back(1);
    const auto parts = exactalg::squarefree_decomposition(mp);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      back *= parts[i].factor.pow(parts[i].multiplicity);
      for (std::size_t j = i + 1; j < parts.size(); ++j)
        c.expect(parts[i].multiplicity != parts[j].multiplicity, "distinct multiplicities " + std::to_string(t));
    }
    c.expect(back * mp.leading_coeff(Var::D).constant_term() == mp, "squarefree reassembly " + std::to_string(t));
  }
  return {c.ok(), c.summary() + "; 200 Sturm, 200 resultant, 100 squarefree cases"};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "certificate replay, decreasing branch", criterion1},
      {2, "certificate replay, increasing branch", criterion2},
      {3, "isochrony at D = -1/2 and D = 0", criterion3},
      {4, "local expansion constant", criterion4},
      {5, "boundary limits", criterion5},
      {6, "closed forms", criterion6},
      {7, "equivalence of engines", criterion7},
      {8, "Abelian integral identities", criterion8},
      {9, "monotonicity property suite", criterion9},
      {10, "exact algebra oracle suite", criterion10},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& cr : all) {
    if (!only.empty() && !only.count(cr.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
      const Outcome o = cr.run();
      pass = o.pass;
      detail = o.detail;
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    failures += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << cr.id << ": " << cr.title << " (" << detail << ", "
              << secs(seconds_since(t0)) << ")" << std::endl;
  }
  std::error_code ec;
  fs::remove_all(scratch_dir(), ec);
  return failures == 0 ? 0 : 1;
}
