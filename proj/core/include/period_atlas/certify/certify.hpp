#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "period_atlas/certify/proof_polys.hpp"
#include "period_atlas/exactalg/algorithms.hpp"

namespace period_atlas::certify {

using exactalg::IntervalQ;
using exactalg::Rational;

struct CertifyOptions {
  /// Worker threads for interpolated resultants.
  unsigned threads = 1;
  /// Direct (Sylvester/Bareiss) resultants get this much wall-clock time before
  /// the evaluation/interpolation path takes over. Zero skips the direct path.
  std::chrono::milliseconds direct_budget{std::chrono::minutes(2)};
  unsigned bound_retries = 10;
  /// One rational per sub-interval of the branch; empty means branch defaults.
  std::vector<Rational> samples;
};

/// One verdict of the certificate. `witness` is a JSON object (serialized)
/// holding enough data to recheck the step on its own.
struct StepResult {
  std::string name;
  std::string claim;
  bool pass = false;
  std::string witness = "{}";
};

struct CertificateReport {
  Branch branch = Branch::Decreasing;
  std::vector<StepResult> steps;

  bool overall() const;
  /// {"branch":...,"steps":[{"name","claim","verdict","witness"}],"overall":...}
  std::string to_json(int indent = 2) const;
};

/// Open D-interval of the branch: (-1/2, 0) or (-1, -1/2).
IntervalQ branch_interval(Branch b);
std::vector<Rational> default_samples(Branch b);

/// Number of distinct roots of a univariate p strictly inside iv, after
/// removing the linear factors that vanish at the endpoints.
std::size_t count_open(const MPoly& p, const IntervalQ& iv);

/// Resultant in v: direct elimination within the budget, otherwise by
/// interpolation in D.
MPoly certified_resultant(const MPoly& p, const MPoly& q, exactalg::Var v, const CertifyOptions& opts);
MPoly certified_discriminant(const MPoly& p, exactalg::Var v, const CertifyOptions& opts);

/// A root of the discriminant inside the branch, with the squarefree factor
/// that defines it and a rational isolating interval.
struct BifurcationRoot {
  std::string name;
  MPoly factor;
  IntervalQ enclosure;
};

StepResult step_build(Branch b, ProofPolynomials& out);
StepResult check_P_negative(Branch b);
StepResult replay_d13(const MPoly& q1 = d13_Q1(), const MPoly& q2 = d13_Q2());

/// On success `target` is the polynomial whose roots on x in (0,1) (variable u)
/// are certified absent: R2(u;D) on the decreasing branch, and on the increasing
/// branch R2(w;D) pulled back from w < 0 to t in (0,1).
struct R2Result {
  StepResult step;
  std::optional<MPoly> r2;
  std::optional<MPoly> target;
};
R2Result compute_R2(const ProofPolynomials& pp, const CertifyOptions& opts);

struct DiscriminantResult {
  StepResult step;
  std::optional<MPoly> delta;
  std::optional<MPoly> residual_block;  // W on the decreasing branch
  std::vector<BifurcationRoot> roots;   // ascending
};
DiscriminantResult analyze_discriminant(Branch b, const MPoly& target, const CertifyOptions& opts);

StepResult check_subintervals(Branch b, const MPoly& target, std::vector<BifurcationRoot> roots,
                              const std::vector<Rational>& samples);

struct BoundingResult {
  StepResult step;
  std::optional<MPoly> U;
  std::optional<IntervalQ> enclosure;
  unsigned attempts = 0;
};
/// U(u) = sum_j max_{D in {lo,hi}} (sum_m c_{j,m} D^m) u^j term by term.
MPoly upper_bound_poly(const MPoly& target, const IntervalQ& d_interval);
/// Bounds target over D in iv (0 not in iv) and checks U < 0 on (0,1). On
/// failure the enclosure is shrunk around the root of `factor` and retried.
BoundingResult bounding_poly(const std::string& root_name, const MPoly& target, IntervalQ iv,
                             const MPoly& factor, unsigned retries);

/// Runs every step of the branch in order. Later steps that depend on a failed
/// step are reported as failed with the missing prerequisite named.
class Certifier {
 public:
  explicit Certifier(Branch b, CertifyOptions opts = {});
  CertificateReport run();
  /// Named polynomials collected during run() (R2, Delta, K0, K1, W, U_*, ...).
  const ProofPolynomials& polys() const noexcept { return polys_; }

 private:
  Branch branch_;
  CertifyOptions opts_;
  ProofPolynomials polys_;
};

CertificateReport certify_monotonicity(Branch b, const CertifyOptions& opts = {});

}  // namespace period_atlas::certify
