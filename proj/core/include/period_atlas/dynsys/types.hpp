#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace period_atlas::dynsys {

/// x' = -y + xy, y' = x + Dx^2 + Fy^2.
struct LoudParams {
  double D = 0.0;
  double F = 1.0;

  /// The sub-family F = D + 1.
  static LoudParams distinguished(double D) { return {D, D + 1.0}; }
  bool is_distinguished() const noexcept;
};

/// z' = iz + a (z conj(z))^n z^(k+1).
struct ZkParams {
  int n = 1;
  int k = 1;
  std::complex<double> a{1.0, 0.0};

  bool is_normalized() const noexcept;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

enum class Chart { Complex, Polar, RTheta, XY, Loud, Potential };

std::string chart_name(Chart c);

/// Two coordinates tagged with their chart. Polar and (R,Theta) states need a
/// nonnegative radius; potential states need u < 1.
class PlanarState {
 public:
  PlanarState() = default;
  /// Throws DomainError when the coordinates are outside the chart.
  PlanarState(Chart chart, double c0, double c1);

  Chart chart() const noexcept { return chart_; }
  double c0() const noexcept { return c0_; }
  double c1() const noexcept { return c1_; }
  Vec2 vec() const noexcept { return {c0_, c1_}; }

 private:
  Chart chart_ = Chart::Loud;
  double c0_ = 0.0;
  double c1_ = 0.0;
};

enum class PeriodMethod { Quadrature, ReturnMap, ClosedForm };

std::string method_name(PeriodMethod m);

struct PeriodSample {
  double param = 0.0;
  double period = 0.0;
  PeriodMethod method = PeriodMethod::Quadrature;
  double err_estimate = 0.0;
};

enum class Trend { Constant, Increasing, Decreasing, NotMonotone };

struct MonotonicityVerdict {
  Trend trend = Trend::NotMonotone;
  /// Index of the first sample breaking the trend set by the first pair.
  std::ptrdiff_t first_violation = -1;
};

/// Sampled period function. Parameters strictly increase and periods are positive.
class PeriodCurve {
 public:
  /// Throws DomainError when the invariants would break.
  void push(const PeriodSample& s);
  const std::vector<PeriodSample>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }

  /// Strict monotonicity; samples within `flat_tol` (absolute) of the first
  /// period everywhere count as Constant.
  MonotonicityVerdict monotonicity(double flat_tol = 0.0) const;

  /// Header `param,period,method,err_estimate`, 17 significant digits, LF.
  void write_csv(std::ostream& os) const;
  std::string to_csv() const;

 private:
  std::vector<PeriodSample> samples_;
};

/// printf("%.17g").
std::string format_g17(double x);

}  // namespace period_atlas::dynsys
