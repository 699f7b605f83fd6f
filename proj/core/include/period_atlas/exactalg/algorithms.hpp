#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "period_atlas/exactalg/mpoly.hpp"
#include "period_atlas/exactalg/rational.hpp"
#include "period_atlas/exactalg/upoly.hpp"

namespace period_atlas::exactalg {

/// Open rational interval (lo, hi), lo < hi.
class IntervalQ {
 public:
  IntervalQ(Rational lo, Rational hi);

  const Rational& lo() const noexcept { return lo_; }
  const Rational& hi() const noexcept { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }
  bool contains(const Rational& x) const { return lo_ < x && x < hi_; }
  /// Closed-interval intersection test.
  bool intersects(const IntervalQ& o) const { return !(hi_ < o.lo_ || o.hi_ < lo_); }
  /// Every point of *this is strictly below every point of o.
  bool strictly_below(const IntervalQ& o) const { return hi_ < o.lo_; }

  friend bool operator==(const IntervalQ& a, const IntervalQ& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  Rational lo_;
  Rational hi_;
};

/// p / q, exact. Throws ZeroInput for q == 0 and NotDivisible if q does not divide p.
MPoly exact_divide(const MPoly& p, const MPoly& q);

/// Largest k with q^k | p, and the cofactor.
std::pair<unsigned, MPoly> strip_factor(const MPoly& p, const MPoly& q);

/// Fraction-free (Bareiss) determinant. The matrix is square; entries may be
/// arbitrary polynomials. Constant matrices take an integer fast path.
MPoly determinant(std::vector<std::vector<MPoly>> m);

/// Sylvester matrix of p and q with respect to v; rows of p first.
std::vector<std::vector<MPoly>> sylvester_matrix(const MPoly& p, const MPoly& q, Var v);

/// Canonical resultant: the Sylvester determinant in v. Throws ZeroInput if
/// either input is zero.
MPoly resultant(const MPoly& p, const MPoly& q, Var v);

using Deadline = std::chrono::steady_clock::time_point;

/// resultant(p, q, v), or nullopt if the elimination runs past `budget`.
std::optional<MPoly> resultant_within(const MPoly& p, const MPoly& q, Var v,
                                      std::chrono::steady_clock::duration budget);

/// (-1)^(n(n-1)/2) Res(p, dp/dv, v) / lc_v(p), n = deg_v(p) >= 2.
MPoly discriminant(const MPoly& p, Var v);

/// The discriminant sign/normalization applied to an already computed Res(p, dp/dv, v).
MPoly discriminant_from_resultant(const MPoly& res, const MPoly& p, Var v);

struct InterpolationOptions {
  /// Worker threads for the per-node resultants (values <= 1 mean serial).
  unsigned threads = 1;
};

/// Resultant computed by evaluation at rational values of `param` and
/// interpolation of every coefficient; equals resultant(p, q, v) exactly.
/// The number of nodes is deg_v(q)*deg_param(p) + deg_v(p)*deg_param(q) + 1;
/// nodes at which a leading coefficient in v vanishes are skipped.
MPoly interpolated_resultant(const MPoly& p, const MPoly& q, Var v, Var param,
                             const InterpolationOptions& opts = {});

/// Discriminant via interpolated_resultant in `param`.
MPoly interpolated_discriminant(const MPoly& p, Var v, Var param,
                                const InterpolationOptions& opts = {});

/// Newton interpolation of polynomial values given at distinct nodes of `param`.
MPoly interpolate(const std::vector<Rational>& nodes, const std::vector<MPoly>& values, Var param);

struct SquarefreeFactor {
  MPoly factor;  // monic, univariate
  unsigned multiplicity;
};

/// Yun's algorithm. p = c * prod(factor_i ^ multiplicity_i) for a rational c;
/// factors are monic, squarefree, pairwise coprime, ordered by multiplicity.
std::vector<SquarefreeFactor> squarefree_decomposition(const MPoly& p);

/// Squarefree part p / gcd(p, p'), monic.
UPoly squarefree_part(const UPoly& p);

/// Sturm chain p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i) (each p_{i+1}
/// rescaled by a positive rational, which leaves sign variations unchanged).
class SturmSeq {
 public:
  explicit SturmSeq(const UPoly& p);
  const std::vector<UPoly>& chain() const noexcept { return chain_; }
  /// Number of sign variations at x (zeros skipped).
  int variations(const Rational& x) const;

 private:
  std::vector<UPoly> chain_;
};

/// Exact number of distinct real roots of p in (lo, hi). Uses the squarefree
/// part. Throws EndpointRoot if p vanishes at lo or hi, ZeroInput if p == 0.
std::size_t sturm_count(const MPoly& p, const IntervalQ& iv);
std::size_t sturm_count(const UPoly& p, const IntervalQ& iv);

/// Disjoint isolating intervals, one per distinct root in iv, ascending, each
/// narrower than tol. Endpoints of the returned intervals are never roots.
std::vector<IntervalQ> isolate_roots(const MPoly& p, const IntervalQ& iv, const Rational& tol);
std::vector<IntervalQ> isolate_roots(const UPoly& p, const IntervalQ& iv, const Rational& tol);

/// Narrows an isolating interval of a squarefree p by bisection until its width is < tol.
IntervalQ refine_root(const UPoly& squarefree, IntervalQ iv, const Rational& tol);

}  // namespace period_atlas::exactalg
