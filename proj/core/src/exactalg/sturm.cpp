#include <algorithm>
#include <stdexcept>

#include "period_atlas/errors.hpp"
#include "period_atlas/exactalg/algorithms.hpp"

namespace period_atlas::exactalg {

namespace {

UPoly as_univariate(const MPoly& p) {
  const auto v = p.sole_variable();
  if (!v && !p.is_constant()) {
    throw std::invalid_argument("expected a univariate polynomial, got " + to_pretty_string(p));
  }
  return UPoly::from_mpoly(p, v.value_or(Var::U));
}

void check_endpoints(const UPoly& p, const IntervalQ& iv) {
  if (p.is_zero()) throw ZeroInput("root counting on the zero polynomial");
  if (p.evaluate(iv.lo()) == 0) throw EndpointRoot("polynomial vanishes at " + to_string(iv.lo()));
  if (p.evaluate(iv.hi()) == 0) throw EndpointRoot("polynomial vanishes at " + to_string(iv.hi()));
}

// A split point inside (lo, hi) at which sf does not vanish, near the midpoint.
Rational split_point(const UPoly& sf, const IntervalQ& iv) {
  Rational offset = iv.width() / 2;
  for (int j = 0; j < 4096; ++j) {
    const Rational candidate = iv.lo() + offset;
    if (sf.evaluate(candidate) != 0) return candidate;
    // lo + w/2 + w/2^(j+3) stays strictly inside and hits finitely many roots.
    offset = iv.width() / 2 + iv.width() / (Rational(Integer(1) << (j + 3)));
  }
  throw std::logic_error("split_point: no non-root found");
}

}  // namespace

UPoly squarefree_part(const UPoly& p) {
  if (p.is_zero()) throw ZeroInput("squarefree_part of zero polynomial");
  if (p.degree() < 1) return UPoly(Rational(1));
  return exact_quotient(p, gcd(p, p.derivative())).monic();
}

std::vector<SquarefreeFactor> squarefree_decomposition(const MPoly& p) {
  if (p.is_zero()) throw ZeroInput("squarefree_decomposition of zero polynomial");
  const auto var = p.sole_variable();
  if (!var) {
    if (p.is_constant()) return {};
    throw std::invalid_argument("squarefree_decomposition: polynomial must be univariate");
  }
  const UPoly f = UPoly::from_mpoly(p, *var);
  const UPoly df = f.derivative();
  // Yun: a_i are the factors of multiplicity i.
  const UPoly g = gcd(f, df);
  UPoly b = exact_quotient(f, g);
  UPoly c = exact_quotient(df, g);
  UPoly d = c - b.derivative();
  std::vector<SquarefreeFactor> out;
  for (unsigned i = 1; b.degree() >= 1; ++i) {
    const UPoly a = gcd(b, d);
    if (a.degree() >= 1) out.push_back({a.monic().to_mpoly(*var), i});
    b = exact_quotient(b, a);
    c = exact_quotient(d, a);
    d = c - b.derivative();
  }
  return out;
}

SturmSeq::SturmSeq(const UPoly& p) {
  if (p.is_zero()) throw ZeroInput("Sturm sequence of zero polynomial");
  chain_.push_back(p);
  if (p.degree() < 1) return;
  chain_.push_back(p.derivative().primitive_positive_scale());
  while (true) {
    const UPoly& prev = chain_[chain_.size() - 2];
    const UPoly& cur = chain_.back();
    UPoly r = prev.divmod(cur).second;
    if (r.is_zero()) break;
    chain_.push_back((-r).primitive_positive_scale());
  }
}

int SturmSeq::variations(const Rational& x) const {
  int count = 0;
  int last = 0;
  for (const auto& q : chain_) {
    const int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

std::size_t sturm_count(const UPoly& p, const IntervalQ& iv) {
  check_endpoints(p, iv);
  const SturmSeq seq(squarefree_part(p));
  return static_cast<std::size_t>(seq.variations(iv.lo()) - seq.variations(iv.hi()));
}

std::size_t sturm_count(const MPoly& p, const IntervalQ& iv) { return sturm_count(as_univariate(p), iv); }

IntervalQ refine_root(const UPoly& sf, IntervalQ iv, const Rational& tol) {
  int s_lo = sf.sign_at(iv.lo());
  if (s_lo == 0 || sf.sign_at(iv.hi()) == 0) throw EndpointRoot("refine_root: endpoint is a root");
  if (s_lo == sf.sign_at(iv.hi())) throw std::invalid_argument("refine_root: no sign change");
  while (!(iv.width() < tol)) {
    const Rational mid = split_point(sf, iv);
    if (sf.sign_at(mid) == s_lo) {
      iv = IntervalQ(mid, iv.hi());
    } else {
      iv = IntervalQ(iv.lo(), mid);
    }
  }
  return iv;
}

std::vector<IntervalQ> isolate_roots(const UPoly& p, const IntervalQ& iv, const Rational& tol) {
  if (!(tol > 0)) throw std::invalid_argument("isolate_roots: tolerance must be positive");
  check_endpoints(p, iv);
  const UPoly sf = squarefree_part(p);
  const SturmSeq seq(sf);
  std::vector<IntervalQ> done;
  struct Pending {
    IntervalQ iv;
    int v_lo;
    int v_hi;
  };
  std::vector<Pending> stack{{iv, seq.variations(iv.lo()), seq.variations(iv.hi())}};
  while (!stack.empty()) {
    Pending cur = stack.back();
    stack.pop_back();
    const int count = cur.v_lo - cur.v_hi;
    if (count == 0) continue;
    if (count == 1) {
      done.push_back(refine_root(sf, cur.iv, tol));
      continue;
    }
    const Rational mid = split_point(sf, cur.iv);
    const int v_mid = seq.variations(mid);
    stack.push_back({IntervalQ(mid, cur.iv.hi()), v_mid, cur.v_hi});
    stack.push_back({IntervalQ(cur.iv.lo(), mid), cur.v_lo, v_mid});
  }
  std::sort(done.begin(), done.end(),
            [](const IntervalQ& a, const IntervalQ& b) { return a.lo() < b.lo(); });
  return done;
}

std::vector<IntervalQ> isolate_roots(const MPoly& p, const IntervalQ& iv, const Rational& tol) {
  return isolate_roots(as_univariate(p), iv, tol);
}

}  // namespace period_atlas::exactalg
