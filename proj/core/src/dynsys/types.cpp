#include "period_atlas/dynsys/types.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "period_atlas/errors.hpp"

namespace period_atlas::dynsys {

bool LoudParams::is_distinguished() const noexcept { return F == D + 1.0; }

bool ZkParams::is_normalized() const noexcept { return a == std::complex<double>(1.0, 0.0); }

std::string chart_name(Chart c) {
  switch (c) {
    case Chart::Complex: return "complex";
    case Chart::Polar: return "polar";
    case Chart::RTheta: return "RTheta";
    case Chart::XY: return "XY";
    case Chart::Loud: return "loud";
    case Chart::Potential: return "potential";
  }
  return "?";
}

PlanarState::PlanarState(Chart chart, double c0, double c1) : chart_(chart), c0_(c0), c1_(c1) {
  if (!std::isfinite(c0) || !std::isfinite(c1)) throw DomainError("non-finite " + chart_name(chart) + " state");
  if ((chart == Chart::Polar || chart == Chart::RTheta) && c0 < 0.0)
    throw DomainError("negative radius in " + chart_name(chart) + " chart");
  if (chart == Chart::Potential && c0 >= 1.0) throw DomainError("u >= 1 in potential chart");
}

std::string method_name(PeriodMethod m) {
  switch (m) {
    case PeriodMethod::Quadrature: return "quadrature";
    case PeriodMethod::ReturnMap: return "returnmap";
    case PeriodMethod::ClosedForm: return "closedform";
  }
  return "?";
}

void PeriodCurve::push(const PeriodSample& s) {
  if (!std::isfinite(s.param) || !(s.period > 0.0)) throw DomainError("period sample must be finite and positive");
  if (!samples_.empty() && !(s.param > samples_.back().param))
    throw DomainError("period curve parameters must increase strictly");
  samples_.push_back(s);
}

MonotonicityVerdict PeriodCurve::monotonicity(double flat_tol) const {
  MonotonicityVerdict v;
  if (samples_.size() < 2) {
    v.trend = Trend::Constant;
    return v;
  }
  const double t0 = samples_.front().period;
  bool flat = true;
  for (const auto& s : samples_) flat = flat && std::abs(s.period - t0) <= flat_tol;
  if (flat) {
    v.trend = Trend::Constant;
    return v;
  }
  const double d0 = samples_[1].period - t0;
  v.trend = d0 > 0 ? Trend::Increasing : d0 < 0 ? Trend::Decreasing : Trend::NotMonotone;
  if (v.trend == Trend::NotMonotone) {
    v.first_violation = 1;
    return v;
  }
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    const double d = samples_[i].period - samples_[i - 1].period;
    if ((v.trend == Trend::Increasing && !(d > 0)) || (v.trend == Trend::Decreasing && !(d < 0))) {
      v.first_violation = static_cast<std::ptrdiff_t>(i);
      v.trend = Trend::NotMonotone;
      break;
    }
  }
  return v;
}

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void PeriodCurve::write_csv(std::ostream& os) const {
  os << "param,period,method,err_estimate\n";
  for (const auto& s : samples_)
    os << format_g17(s.param) << ',' << format_g17(s.period) << ',' << method_name(s.method) << ','
       << format_g17(s.err_estimate) << '\n';
}

std::string PeriodCurve::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

}  // namespace period_atlas::dynsys
