#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "period_atlas/certify/certify.hpp"
#include "period_atlas/dynsys/period.hpp"
#include "period_atlas/dynsys/potential.hpp"
#include "period_atlas/dynsys/systems.hpp"
#include "period_atlas/errors.hpp"
#include "period_atlas/exactalg/algorithms.hpp"
#include "period_atlas/exactalg/poly_io.hpp"
#include "support.hpp"

namespace pa = period_atlas;
namespace dyn = period_atlas::dynsys;
using namespace period_atlas::cli;

namespace {

void emit(const std::optional<std::string>& out, const std::string& content) {
  if (out && *out != "-")
    atomic_write(*out, content);
  else
    std::cout << content << std::flush;
}

// Summary lines go to stdout unless stdout carries the data.
std::ostream& summary(const std::optional<std::string>& out) {
  return (out && *out != "-") ? std::cout : std::cerr;
}

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return dyn::format_g17(x);
}

// period ---------------------------------------------------------------------

struct PeriodArgs {
  std::string system;
  std::optional<double> D, F;
  int n = 1, k = 1;
  double a_re = 1.0, a_im = 0.0;
  std::optional<std::string> h_grid, rho_grid;
  std::string method = "auto";
  double tol = 1e-12;
  std::optional<std::string> out;
};

struct PointResult {
  double period = 0.0;
  double err = 0.0;
  std::string error;
};

dyn::ReturnMapOptions rm_opts(double tol) {
  dyn::ReturnMapOptions o;
  o.abs_tol = tol;
  o.rel_tol = tol;
  return o;
}

// The difference against a 100x looser run bounds the integration error.
template <class Run>
PointResult returnmap_point(Run run, double tol) {
  const double t = run(rm_opts(tol));
  const double loose = run(rm_opts(std::min(1e-6, tol * 100)));
  return {t, std::abs(t - loose), {}};
}

int cmd_period(const PeriodArgs& a) {
  const unsigned threads = thread_count();
  if (!(a.tol > 0.0)) throw UsageError("--tol must be positive");
  std::vector<double> grid;
  dyn::PeriodMethod method = dyn::PeriodMethod::ReturnMap;
  std::function<PointResult(double)> point;
  double limit = 0.0;

  if (a.system == "loud") {
    if (!a.D) throw UsageError("--system loud needs --D");
    const double D = *a.D;
    const dyn::LoudParams p{D, a.F.value_or(D + 1.0)};
    if (a.h_grid.has_value() == a.rho_grid.has_value()) throw UsageError("give exactly one of --h or --rho");
    limit = p.is_distinguished() ? dyn::asymptotic_period(p) : std::nan("");
    if (a.h_grid) {
      if (!p.is_distinguished()) throw UsageError("--h needs F = D + 1 (the energy chart); use --rho");
      grid = parse_grid(*a.h_grid);
      if (grid.front() <= 0.0) throw UsageError("energy levels must be positive");
      std::string m = a.method == "auto" ? (D > -1.0 && D < 0.0 ? "quadrature" : "returnmap") : a.method;
      if (m == "quadrature") {
        if (!(D > -1.0 && D < 0.0)) throw UsageError("quadrature needs D in (-1,0)");
        method = dyn::PeriodMethod::Quadrature;
        point = [D](double h) {
          const auto q = dyn::period_quadrature(h, D);
          return PointResult{q.value, q.err_estimate, {}};
        };
      } else if (m == "returnmap") {
        if (!(D > -1.0 && D <= 0.0)) throw UsageError("--h with the return map needs D in (-1,0]");
        point = [p, D, tol = a.tol](double h) {
          const dyn::PlanarState s(dyn::Chart::Loud, dyn::upper_turning_point(h, D), 0.0);
          return returnmap_point([&](const dyn::ReturnMapOptions& o) { return dyn::period_returnmap(p, s, o).period; },
                                 tol);
        };
      } else {
        throw UsageError("--method for --h must be quadrature or returnmap");
      }
    } else {
      grid = parse_grid(*a.rho_grid);
      if (grid.front() <= 0.0) throw UsageError("radii must be positive");
      std::string m = a.method == "auto" ? "returnmap" : a.method;
      if (m == "closedform") {
        if (!(D == -1.0 && p.F == 0.0)) throw UsageError("closed form for Loud exists only at D = -1, F = 0");
        method = dyn::PeriodMethod::ClosedForm;
        point = [](double r) { return PointResult{dyn::period_dm1(r), 0.0, {}}; };
      } else if (m == "returnmap") {
        point = [p, tol = a.tol](double r) {
          const dyn::PlanarState s(dyn::Chart::Loud, r, 0.0);
          return returnmap_point([&](const dyn::ReturnMapOptions& o) { return dyn::period_returnmap(p, s, o).period; },
                                 tol);
        };
      } else {
        throw UsageError("--method for --rho must be returnmap or closedform");
      }
    }
  } else if (a.system == "zk") {
    if (a.h_grid || !a.rho_grid) throw UsageError("--system zk takes --rho");
    if (a.n < 0 || a.k < 0 || a.n + a.k < 1) throw UsageError("need n, k >= 0 and n + k >= 1");
    const dyn::ZkParams p{a.n, a.k, {a.a_re, a.a_im}};
    if (p.a == std::complex<double>(0.0, 0.0)) throw UsageError("a must be nonzero");
    grid = parse_grid(*a.rho_grid);
    if (grid.front() <= 0.0) throw UsageError("radii must be positive");
    std::string m = a.method == "auto" ? "returnmap" : a.method;
    if (p.k == 0) {
      if (std::abs(p.a.real()) > 0.0) throw UsageError("k = 0 is a center only for purely imaginary a");
      limit = dyn::asymptotic_period(p);
      if (m == "closedform") {
        method = dyn::PeriodMethod::ClosedForm;
        point = [p](double r) { return PointResult{dyn::period_kzero(p.a.imag(), p.n, r * r), 0.0, {}}; };
      } else if (m == "returnmap") {
        point = [p, tol = a.tol](double r) {
          const dyn::PlanarState s(dyn::Chart::Complex, r, 0.0);
          return returnmap_point([&](const dyn::ReturnMapOptions& o) { return dyn::period_returnmap(p, s, o).period; },
                                 tol);
        };
      } else {
        throw UsageError("--method for k = 0 must be returnmap or closedform");
      }
    } else {
      if (m != "returnmap") throw UsageError("--method for Z_k must be returnmap");
      const auto nz = dyn::normalize_zk(p);
      limit = dyn::asymptotic_period(nz.normalized);
      point = [nz, tol = a.tol](double r) {
        const dyn::PlanarState s(dyn::Chart::Polar, r / nz.lambda, -nz.mu);
        return returnmap_point(
            [&](const dyn::ReturnMapOptions& o) { return dyn::period_returnmap(nz.normalized, s, o).period; }, tol);
      };
    }
  } else {
    throw UsageError("--system must be loud or zk");
  }

  std::vector<PointResult> res(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    try {
      res[i] = point(grid[i]);
    } catch (const std::exception& e) {
      res[i].error = e.what();
    }
  });

  dyn::PeriodCurve curve;
  std::string status;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!res[i].error.empty()) {
      status = "# status: failed at param=" + fmt(grid[i]) + ": " + res[i].error + "\n";
      break;
    }
    curve.push({grid[i], res[i].period, method, res[i].err});
  }
  emit(a.out, curve.to_csv() + status);
  auto& os = summary(a.out);
  os << "points: " << curve.size() << "/" << grid.size() << "\n";
  os << "limit: " << fmt(limit) << "\n";
  const auto v = curve.monotonicity(1e-9);
  switch (v.trend) {
    case dyn::Trend::Constant: os << "monotonicity: constant within 1e-9\n"; break;
    case dyn::Trend::Increasing: os << "monotonicity: strictly increasing\n"; break;
    case dyn::Trend::Decreasing: os << "monotonicity: strictly decreasing\n"; break;
    case dyn::Trend::NotMonotone:
      os << "monotonicity: not monotone (first violation at index " << v.first_violation << ")\n";
      break;
  }
  if (!status.empty()) {
    std::cerr << "error: " << status.substr(10);
    return kComputeFailed;
  }
  return kOk;
}

// criterion ------------------------------------------------------------------

struct CriterionArgs {
  double D = 0.0;
  int points = 512;
  std::optional<std::string> u_grid;
  std::optional<std::string> out;
};

int cmd_criterion(const CriterionArgs& a) {
  const double D = a.D;
  if (!(D > -1.0 && D < 0.0) || D == -0.5) throw UsageError("--D must lie in (-1,0) and differ from -1/2");
  std::vector<double> us;
  if (a.u_grid) {
    us = parse_grid(*a.u_grid);
    if (!(us.front() > 0.0 && us.back() < 1.0)) throw UsageError("the u-grid must lie inside the open interval (0,1)");
  } else {
    if (a.points < 2) throw UsageError("--points must be at least 2");
    for (int i = 1; i <= a.points; ++i) us.push_back(static_cast<double>(i) / (a.points + 1));
  }
  // The pole u = -1/D of f only matters for D < -1/2, where it sits beyond u = 1.
  std::erase_if(us, [D](double u) { return std::abs(u + 1.0 / D) < 1e-3; });
  std::vector<double> vals(us.size());
  parallel_for(us.size(), thread_count(), [&](std::size_t i) { vals[i] = dyn::pi_sigma(us[i], D); });
  std::ostringstream csv;
  csv << "u,pi_sigma\n";
  int pos = 0, neg = 0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    csv << fmt(us[i]) << ',' << fmt(vals[i]) << '\n';
    pos += vals[i] > 0;
    neg += vals[i] < 0;
  }
  emit(a.out, csv.str());
  const bool single = (pos == 0 || neg == 0) && pos + neg == static_cast<int>(us.size());
  summary(a.out) << "points: " << us.size() << "\nsingle-signed: "
                 << (single ? (pos ? "yes (positive)" : "yes (negative)") : "no") << "\n";
  return kOk;
}

// certify --------------------------------------------------------------------

struct CertifyArgs {
  std::string branch;
  std::optional<std::string> out;
  std::optional<std::string> emit_polys;
  double direct_budget = 120.0;
};

int cmd_certify(const CertifyArgs& a) {
  pa::certify::Branch b;
  try {
    b = pa::certify::parse_branch(a.branch);
  } catch (const std::invalid_argument&) {
    throw UsageError("--branch must be decreasing or increasing");
  }
  if (!(a.direct_budget >= 0.0)) throw UsageError("--direct-budget must be nonnegative");
  pa::certify::CertifyOptions opts;
  opts.threads = thread_count();
  opts.direct_budget = std::chrono::milliseconds(static_cast<long long>(a.direct_budget * 1000));
  pa::certify::Certifier cert(b, opts);
  const auto report = cert.run();
  emit(a.out, report.to_json());
  if (a.emit_polys) {
    std::filesystem::create_directories(*a.emit_polys);
    for (const auto& [name, poly] : cert.polys().entries)
      atomic_write((std::filesystem::path(*a.emit_polys) / (name + ".txt")).string(), pa::exactalg::to_text(poly));
  }
  auto& os = summary(a.out);
  for (const auto& s : report.steps) os << (s.pass ? "pass  " : "FAIL  ") << s.name << "\n";
  os << "overall: " << (report.overall() ? "pass" : "fail") << "\n";
  return report.overall() ? kOk : kCertificateFailed;
}

// map ------------------------------------------------------------------------

struct MapArgs {
  int n = 1, k = 1;
  std::optional<double> rho;
  std::optional<double> alpha;
  int points = 10;
};

int cmd_map(const MapArgs& a) {
  using std::numbers::pi;
  if (a.n < 0 || a.k < 0 || a.n + a.k < 1) throw UsageError("need n, k >= 0 and n + k >= 1");
  std::cout << "n: " << a.n << "\nk: " << a.k << "\n";
  if (a.k == 0) {
    if (!a.alpha || *a.alpha == 0.0) throw UsageError("k = 0 needs a nonzero --alpha (a = alpha i)");
    const double al = *a.alpha;
    std::cout << "closed form: T(u) = 2pi/(1 + alpha u^n), u = z conj(z)\n";
    double umax = 2.0;
    if (al < 0) {
      umax = std::pow(-1.0 / al, 1.0 / a.n);
      std::cout << "annulus: u < " << fmt(umax) << " (the circle u = " << fmt(umax)
                << " is full of equilibria)\nlimit: inf (period -> inf at the boundary)\n";
    } else {
      std::cout << "annulus: unbounded\nlimit: 0\n";
    }
    if (a.points < 2) throw UsageError("--points must be at least 2");
    std::cout << "u,period\n";
    for (int i = 1; i <= a.points; ++i) {
      const double u = umax * i / (a.points + 1);
      std::cout << fmt(u) << ',' << fmt(dyn::period_kzero(al, a.n, u)) << '\n';
    }
    return kOk;
  }
  if (a.n == 0) {
    std::cout << "isochronous: every orbit has period 2pi\n";
    return kOk;
  }
  const auto red = dyn::zk_to_loud(a.n, a.k);
  const dyn::ZkParams p{a.n, a.k, {1.0, 0.0}};
  std::cout << "b: " << fmt(red.b) << "\nD: " << fmt(red.params.D) << "\nF: " << fmt(red.params.F) << "\n";
  if (a.rho) {
    if (!(*a.rho > 0.0)) throw UsageError("--rho must be positive");
    const auto m = dyn::map_zk_orbit(p, *a.rho);
    std::cout << "initial point: (" << fmt(m.loud.c0()) << ", " << fmt(m.loud.c1()) << ")\n";
    std::cout << "energy: " << fmt(dyn::loud_energy(red.params.D, m.loud.c0(), m.loud.c1())) << "\n";
  }
  std::cout << "limit zk: " << fmt(dyn::asymptotic_period(p)) << "\n";
  std::cout << "limit loud: " << fmt(dyn::asymptotic_period(red.params)) << "\n";
  return kOk;
}

// sturm ----------------------------------------------------------------------

struct SturmArgs {
  std::string file;
  std::string interval;
};

int cmd_sturm(const SturmArgs& a) {
  const auto comma = a.interval.find(',');
  if (comma == std::string::npos) throw UsageError("--interval must be LO,HI");
  pa::exactalg::Rational lo, hi;
  try {
    lo = pa::exactalg::parse_rational(a.interval.substr(0, comma));
    hi = pa::exactalg::parse_rational(a.interval.substr(comma + 1));
  } catch (const pa::ParseError& e) {
    throw UsageError(std::string("--interval: ") + e.what());
  }
  if (!(lo < hi)) throw UsageError("--interval needs LO < HI");
  std::ifstream in(a.file, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << a.file << "\n";
    return kComputeFailed;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  const auto p = pa::exactalg::parse_text(ss.str());
  std::cout << pa::exactalg::sturm_count(p, pa::exactalg::IntervalQ(lo, hi)) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Period functions of planar centers: tables, criteria and exact certificates"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", "period_atlas 0.1.0");

  PeriodArgs pa_args;
  auto* period = app.add_subcommand("period", "Sample a period function to CSV");
  period->add_option("--system", pa_args.system, "loud | zk")->required();
  period->add_option("--D", pa_args.D, "Loud parameter D");
  period->add_option("--F", pa_args.F, "Loud parameter F (default D + 1)");
  period->add_option("--n", pa_args.n, "Z_k exponent n")->capture_default_str();
  period->add_option("--k", pa_args.k, "Z_k order k")->capture_default_str();
  period->add_option("--a-re", pa_args.a_re, "Re a")->capture_default_str();
  period->add_option("--a-im", pa_args.a_im, "Im a")->capture_default_str();
  period->add_option("--h", pa_args.h_grid, "energy grid start:stop:lin|log:count (Loud, F = D + 1)");
  period->add_option("--rho", pa_args.rho_grid, "radius grid start:stop:lin|log:count");
  period->add_option("--method", pa_args.method, "auto | quadrature | returnmap | closedform")
      ->capture_default_str();
  period->add_option("--tol", pa_args.tol, "integrator tolerance")->capture_default_str();
  period->add_option("--out", pa_args.out, "CSV path (default stdout)");

  CriterionArgs cr_args;
  auto* criterion = app.add_subcommand("criterion", "Scan the sign of the criterion operator on (0,1)");
  criterion->add_option("--D", cr_args.D, "D in (-1,0), D != -1/2")->required();
  criterion->add_option("--points", cr_args.points, "interior points u = i/(N+1)")->capture_default_str();
  criterion->add_option("--u", cr_args.u_grid, "explicit u-grid start:stop:lin|log:count inside (0,1)");
  criterion->add_option("--out", cr_args.out, "CSV path (default stdout)");

  CertifyArgs ce_args;
  auto* certify = app.add_subcommand("certify", "Replay the exact monotonicity certificate");
  certify->add_option("--branch", ce_args.branch, "decreasing | increasing")->required();
  certify->add_option("--out", ce_args.out, "JSON report path (default stdout)");
  certify->add_option("--emit-polys", ce_args.emit_polys, "directory for <name>.txt polynomial files");
  certify->add_option("--direct-budget", ce_args.direct_budget, "seconds for direct resultants before interpolation")
      ->capture_default_str();

  MapArgs ma_args;
  auto* map = app.add_subcommand("map", "Reduce a Z_k equation to the Loud family");
  map->add_option("--n", ma_args.n, "exponent n")->required();
  map->add_option("--k", ma_args.k, "order k")->required();
  map->add_option("--rho", ma_args.rho, "radius of the Z_k orbit to map");
  map->add_option("--alpha", ma_args.alpha, "k = 0 only: a = alpha i");
  map->add_option("--points", ma_args.points, "k = 0 only: closed-form grid size")->capture_default_str();

  SturmArgs st_args;
  auto* sturm = app.add_subcommand("sturm", "Count distinct real roots in an open interval");
  sturm->add_option("--file", st_args.file, "polynomial in text format")->required();
  sturm->add_option("--interval", st_args.interval, "LO,HI as rationals, e.g. 0,1")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*period) return cmd_period(pa_args);
    if (*criterion) return cmd_criterion(cr_args);
    if (*certify) return cmd_certify(ce_args);
    if (*map) return cmd_map(ma_args);
    if (*sturm) return cmd_sturm(st_args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputeFailed;
  }
  return kUsage;
}
