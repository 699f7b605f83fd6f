#include "period_atlas/certify/certify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "detail/poly_json.hpp"
#include "period_atlas/errors.hpp"

namespace period_atlas::certify {

using exactalg::exact_divide;
using exactalg::strip_factor;
using exactalg::sturm_count;
using exactalg::to_string;
using exactalg::UPoly;
using exactalg::Var;
using nlohmann::json;

namespace {

const MPoly kU = MPoly::variable(Var::U);
const MPoly kW = MPoly::variable(Var::W);
const MPoly kD = MPoly::variable(Var::D);

Rational q(long n, long d = 1) { return exactalg::make_rational(n, d); }

json rat(const Rational& x) { return to_string(x); }
json iv_json(const IntervalQ& iv) { return json::array({rat(iv.lo()), rat(iv.hi())}); }
json poly(const MPoly& p) { return detail::poly_to_json(p); }

// Runs `body`, which fills the witness and returns the verdict. Library
// errors become a failed verdict with the message recorded.
StepResult guarded(const std::string& name, const std::string& claim,
                   const std::function<bool(json&)>& body) {
  json w = json::object();
  bool ok = false;
  try {
    ok = body(w);
  } catch (const std::exception& e) {
    w["error"] = e.what();
    ok = false;
  }
  return {name, claim, ok, w.dump()};
}

StepResult missing(const std::string& name, const std::string& claim, const std::string& prereq) {
  json w = {{"error", "prerequisite step failed: " + prereq}};
  return {name, claim, false, w.dump()};
}

// p(D) has no root in the open interval and is positive (sign = +1) or negative there.
bool has_sign_on(const MPoly& p, const IntervalQ& iv, int sign) {
  if (count_open(p, iv) != 0) return false;
  const Rational m = iv.midpoint();
  return sgn(p.evaluate(Rational(0), Rational(0), m)) == sign;
}

Rational eval_d(const MPoly& p, const Rational& d) { return p.evaluate(Rational(0), Rational(0), d); }

UPoly in_d(const MPoly& p) { return UPoly::from_mpoly(p, Var::D); }

const IntervalQ& reference_d2_interval() {
  static const IntervalQ iv(q(-16, 125), q(-267, 2086));
  return iv;
}

const Rational kIsolationTol = Rational(1, exactalg::Integer(1) << 24);

// Refines the isolating intervals of a root list until `x` lies in none of them.
void refine_away(std::vector<BifurcationRoot>& roots, const Rational& x) {
  for (auto& r : roots) {
    int guard = 0;
    while (r.enclosure.contains(x) || r.enclosure.lo() == x || r.enclosure.hi() == x) {
      if (++guard > 200) throw ConvergenceFailure("cannot separate sample from root " + r.name);
      r.enclosure = exactalg::refine_root(exactalg::squarefree_part(in_d(r.factor)), r.enclosure,
                                          r.enclosure.width() / 4);
    }
  }
}

}  // namespace

bool CertificateReport::overall() const {
  return !steps.empty() &&
         std::all_of(steps.begin(), steps.end(), [](const StepResult& s) { return s.pass; });
}

std::string CertificateReport::to_json(int indent) const {
  nlohmann::ordered_json out;
  out["branch"] = branch_name(branch);
  out["steps"] = nlohmann::ordered_json::array();
  for (const auto& s : steps) {
    nlohmann::ordered_json j;
    j["name"] = s.name;
    j["claim"] = s.claim;
    j["verdict"] = s.pass ? "pass" : "fail";
    j["witness"] = nlohmann::ordered_json::parse(s.witness);
    out["steps"].push_back(std::move(j));
  }
  out["overall"] = overall() ? "pass" : "fail";
  return out.dump(indent) + "\n";
}

IntervalQ branch_interval(Branch b) {
  return b == Branch::Decreasing ? IntervalQ(q(-1, 2), q(0)) : IntervalQ(q(-1), q(-1, 2));
}

std::vector<Rational> default_samples(Branch b) {
  if (b == Branch::Decreasing) return {q(-1, 3), q(-1, 8), q(-1, 10), q(-1, 50)};
  return {q(-39, 40), q(-9, 10), q(-7, 8), q(-3, 4)};
}

std::size_t count_open(const MPoly& p, const IntervalQ& iv) {
  if (p.is_zero()) throw ZeroInput("count_open: zero polynomial");
  if (p.is_constant()) return 0;
  const auto var = p.sole_variable();
  if (!var) throw std::invalid_argument("count_open: polynomial must be univariate");
  const MPoly x = MPoly::variable(*var);
  MPoly rest = strip_factor(p, x - iv.lo()).second;
  rest = strip_factor(rest, x - iv.hi()).second;
  if (rest.is_constant()) return 0;
  return sturm_count(rest, iv);
}

MPoly certified_resultant(const MPoly& p, const MPoly& q2, Var v, const CertifyOptions& opts) {
  if (opts.direct_budget.count() > 0) {
    if (auto r = exactalg::resultant_within(p, q2, v, opts.direct_budget)) return *r;
  }
  exactalg::InterpolationOptions io;
  io.threads = opts.threads;
  return exactalg::interpolated_resultant(p, q2, v, Var::D, io);
}

MPoly certified_discriminant(const MPoly& p, Var v, const CertifyOptions& opts) {
  if (p.degree(v) < 2) throw std::invalid_argument("discriminant: degree must be at least 2");
  return exactalg::discriminant_from_resultant(certified_resultant(p, p.derivative(v), v, opts), p, v);
}

StepResult step_build(Branch b, ProofPolynomials& out) {
  return guarded("build_proof_polys",
                 "P2 = uw(1+Du)^3(1+Dw)^3 F2 and P3 = (u-1)u^2(1+Du)^4(1+Dw)P(w;D) F3 / w are "
                 "polynomials of degree 7 and 11 in (u,w)",
                 [&](json& w) {
                   out = build_proof_polys(b);
                   const MPoly& P = out.get("P");
                   w["P"] = poly(P);
                   w["P2"] = poly(out.get("P2"));
                   w["P3"] = poly(out.get("P3"));
                   w["P2_degree"] = 7;
                   w["P3_degree"] = 11;
                   w["P3_division_by_w"] = "exact";
                   return true;
                 });
}

StepResult check_P_negative(Branch b) {
  if (b == Branch::Decreasing) {
    return guarded(
        "check_P_negative", "P(w;D) < 0 for w*(D) < w < 0 and -1/2 < D < 0", [](json& w) {
          const IntervalQ branch = branch_interval(Branch::Decreasing);
          const MPoly P = quartic_P(Var::W);
          w["restriction"] = "w*(D) < w < 0 where 1+2Dw+D(1+2D)w^2 > 0";

          const MPoly dw = exactalg::discriminant(P, Var::W);
          const MPoly quartic = 304 * kD.pow(4) + 608 * kD.pow(3) + 296 * kD.pow(2) - 8 * kD + 27;
          const bool dw_match = dw == delta_w_expected();
          const std::size_t quartic_roots = count_open(quartic, branch);
          w["delta_w"] = poly(dw);
          w["delta_w_matches"] = dw_match;
          w["quartic_roots_in_branch"] = quartic_roots;

          const MPoly p0 = P.substitute(Var::W, 0);
          const bool p0_ok = p0 == MPoly(-1);
          w["P_at_0"] = to_pretty_string(p0);

          // D = -1/3: w* = -3(1+sqrt 2) inside [-29/4, -36/5].
          const Rational d13 = q(-1, 3);
          const auto s2 = exactalg::sqrt_enclosure(2, 64);
          const Rational enc_lo = q(-29, 4);
          const Rational enc_hi = q(-36, 5);
          const bool enclosure_ok = enc_lo < -3 * (1 + s2.hi) && -3 * (1 + s2.lo) < enc_hi;
          const MPoly p13 = P.substitute(Var::D, d13);
          const std::size_t p13_roots = sturm_count(p13, IntervalQ(enc_lo, Rational(0)));
          w["w_star_enclosure_D13"] = json::array({rat(enc_lo), rat(enc_hi)});
          w["w_star_enclosure_valid"] = enclosure_ok;
          w["P_D13_roots_on_enclosure_to_0"] = p13_roots;

          // P == L (mod q(w)) with L linear in w; checked as an exact division.
          const MPoly lin = 2 * (kD + 1) * (4 * kD.pow(2) + 4 * kD - 1) * kW + 2 * (2 * kD + 3) * (kD + 1);
          exact_divide((1 + 2 * kD).pow(2) * P + lin, quadratic_q(Var::W));
          w["reduction_mod_q"] = "(1+2D)^2 P(w;D) + 2(D+1)(4D^2+4D-1)w + 2(2D+3)(D+1) is divisible by q(w;D)";
          const MPoly l13 = (-1 * lin).substitute(Var::D, d13) * Rational(1 / ((1 + 2 * d13) * (1 + 2 * d13)));
          const Rational at_lo = l13.evaluate(Rational(0), enc_lo, Rational(0));
          const Rational at_hi = l13.evaluate(Rational(0), enc_hi, Rational(0));
          const bool reduced_negative = at_lo < 0 && at_hi < 0;
          w["P_w_star_D13_bounds"] = json::array({rat(at_lo), rat(at_hi)});

          // For w < 0 both parts of the reduced numerator are positive on the branch.
          const bool sign_argument = has_sign_on(4 * kD.pow(2) + 4 * kD - 1, branch, -1) &&
                                     has_sign_on(kD + 1, branch, 1) &&
                                     has_sign_on(2 * kD + 3, branch, 1) &&
                                     has_sign_on(kD * (1 + 2 * kD), branch, -1);
          w["sign_argument"] = sign_argument;
          return dw_match && quartic_roots == 0 && p0_ok && enclosure_ok && p13_roots == 0 &&
                 reduced_negative && sign_argument;
        });
  }
  return guarded("check_P_negative", "P(w;D) has no zeros for w < 0 and -1 < D < -1/2", [](json& w) {
    const IntervalQ branch = branch_interval(Branch::Increasing);
    w["restriction"] = "none: q(w;D) > 1 for w < 0 on this branch, so all of w < 0 is covered";
    const bool q_positive = has_sign_on(kD * (1 + 2 * kD), branch, 1);
    const MPoly P = quartic_P(Var::W);
    const MPoly M = negative_axis_to_unit(P, Var::W, Var::U);
    const MPoly m0 = M.substitute(Var::U, 0);
    const MPoly m1 = M.substitute(Var::U, 1);
    const bool ends = m0 == MPoly(-1) && m1 == kD.pow(2) * (1 + 2 * kD) && count_open(m1, branch) == 0;
    const MPoly dt = exactalg::discriminant(M, Var::U);
    const std::size_t disc_roots = count_open(dt, branch);
    const Rational base = q(-3, 4);
    const std::size_t base_roots = sturm_count(M.substitute(Var::D, base), IntervalQ(q(0), q(1)));
    w["substitution"] = "w = -t/(1-t), t in (0,1)";
    w["M_at_0"] = to_pretty_string(m0);
    w["M_at_1"] = to_pretty_string(m1);
    w["delta_t"] = poly(dt);
    w["delta_t_roots_in_branch"] = disc_roots;
    w["base_D"] = rat(base);
    w["base_roots"] = base_roots;
    w["q_quadratic_coefficient_positive"] = q_positive;
    return q_positive && ends && disc_roots == 0 && base_roots == 0;
  });
}

StepResult replay_d13(const MPoly& q1, const MPoly& q2) {
  return guarded("replay_D13", "Res(Q1,Q2,w) = 32(u-1)^3 u^6 R(u) and R has no roots in (0,1)",
                 [&](json& w) {
                   const MPoly res = exactalg::resultant(q1, q2, Var::W);
                   const MPoly cof = 32 * (kU - 1).pow(3) * kU.pow(6);
                   MPoly quot;
                   try {
                     quot = exact_divide(res, cof);
                   } catch (const NotDivisible&) {
                     w["divisible"] = false;
                     w["resultant"] = poly(res);
                     return false;
                   }
                   w["divisible"] = true;
                   const auto expect = d13_R_coefficients();
                   const std::size_t top = std::max<std::size_t>(expect.size() - 1, quot.degree(Var::U));
                   for (std::size_t i = 0; i <= top; ++i) {
                     const Rational want = i < expect.size() ? Rational(expect[i]) : Rational(0);
                     const Rational got = quot.coeff({static_cast<std::uint32_t>(i), 0, 0});
                     if (want != got || quot.uses(Var::W) || quot.uses(Var::D)) {
                       w["mismatch_index"] = i;
                       w["expected"] = rat(want);
                       w["got"] = rat(got);
                       w["quotient"] = poly(quot);
                       return false;
                     }
                   }
                   w["R"] = poly(quot);
                   const std::size_t roots = sturm_count(quot, IntervalQ(q(0), q(1)));
                   w["R_roots_in_0_1"] = roots;
                   const bool p2_link = build_P2().substitute(Var::D, q(-1, 3)) == q2 * q(1, 243);
                   w["P2_at_D13_equals_Q2_over_243"] = p2_link;
                   return roots == 0 && p2_link;
                 });
}

R2Result compute_R2(const ProofPolynomials& pp, const CertifyOptions& opts) {
  R2Result out;
  const Branch b = pp.branch;
  const IntervalQ branch = branch_interval(b);
  if (b == Branch::Decreasing) {
    out.step = guarded(
        "compute_R2", "Res(P2,P3,w) = S(u;D) R2(u;D) with R2(0;D) = 54D(D+1), R2(1;D) = 4D(1+2D)^4(D+1)^9",
        [&](json& w) {
          const MPoly res = certified_resultant(pp.get("P2"), pp.get("P3"), Var::W, opts);
          const MPoly r2 = exact_divide(res, pp.get("S"));
          w["S"] = poly(pp.get("S"));
          w["R2"] = poly(r2);
          const unsigned deg = r2.degree(Var::U);
          w["R2_degree_u"] = deg;
          const MPoly at0 = r2.substitute(Var::U, 0);
          const MPoly at1 = r2.substitute(Var::U, 1);
          const bool e0 = at0 == 54 * kD * (kD + 1);
          const bool e1 = at1 == 4 * kD * (1 + 2 * kD).pow(4) * (kD + 1).pow(9);
          w["R2_at_0"] = to_pretty_string(at0);
          w["R2_at_1"] = to_pretty_string(at1);
          w["R2_at_0_matches"] = e0;
          w["R2_at_1_matches"] = e1;
          const MPoly lc = r2.leading_coeff(Var::U);
          const bool lc_ok = count_open(lc, branch) == 0;
          w["R2_leading_coefficient"] = to_pretty_string(lc);
          // S is nonzero on (0,1) x branch: only q(u;D) needs an argument (concave, positive at 0 and 1).
          const bool s_ok = has_sign_on(kD * (1 + 2 * kD), branch, -1) &&
                            has_sign_on((2 * kD + 1) * (kD + 1), branch, 1);
          w["S_nonvanishing"] = s_ok;
          const bool ok = deg == 12 && e0 && e1 && lc_ok && s_ok && !r2.uses(Var::W);
          if (ok) {
            out.r2 = r2;
            out.target = r2;
          }
          return ok;
        });
    return out;
  }
  out.step = guarded(
      "compute_R2",
      "Res(P2,P3,u) = (elementary factors) R2(w;D), and R2 has nonvanishing values at w = 0 and w -> -inf",
      [&](json& w) {
        const MPoly res = certified_resultant(pp.get("P2"), pp.get("P3"), Var::U, opts);
        MPoly rest = res;
        const std::vector<std::pair<std::string, MPoly>> factors{
            {"w", kW},           {"w-1", kW - 1},         {"1+Dw", 1 + kD * kW},
            {"D", kD},           {"D+1", kD + 1},         {"1+2D", 1 + 2 * kD},
            {"q(w)", quadratic_q(Var::W)},
        };
        json stripped = json::object();
        for (const auto& [name, f] : factors) {
          auto [k, r] = strip_factor(rest, f);
          stripped[name] = k;
          rest = std::move(r);
        }
        w["stripped_exponents"] = stripped;
        // Same constant as in S on the other branch.
        const MPoly r2 = rest * q(-1, 8);
        w["constant"] = "-8";
        w["R2"] = poly(r2);
        const unsigned deg = r2.degree(Var::W);
        w["R2_degree_w"] = deg;
        // Stripped factors are nonzero for w < 0, -1 < D < -1/2.
        const bool factors_ok = has_sign_on(kD * (1 + 2 * kD), branch, 1);
        const MPoly target = negative_axis_to_unit(r2, Var::W, Var::U);
        w["substitution"] = "w = -t/(1-t), t in (0,1)";
        w["M"] = poly(target);
        const MPoly at0 = target.substitute(Var::U, 0);
        const MPoly at1 = target.substitute(Var::U, 1);
        const MPoly lc = target.leading_coeff(Var::U);
        w["M_at_0"] = to_pretty_string(at0);
        w["M_at_1"] = to_pretty_string(at1);
        w["M_leading_coefficient"] = to_pretty_string(lc);
        const bool ends = count_open(at0, branch) == 0 && count_open(at1, branch) == 0 &&
                          count_open(lc, branch) == 0 && at0 == 54 * kD * (kD + 1);
        w["endpoints_nonvanishing"] = ends;
        const bool ok = deg == 12 && factors_ok && ends && target.degree(Var::U) == 12 &&
                        !target.uses(Var::W);
        if (ok) {
          out.r2 = r2;
          out.target = target;
        }
        return ok;
      });
  return out;
}

DiscriminantResult analyze_discriminant(Branch b, const MPoly& target, const CertifyOptions& opts) {
  DiscriminantResult out;
  const IntervalQ branch = branch_interval(b);
  const std::string claim =
      b == Branch::Decreasing
          ? "Delta_u = c D^43 (D+1)^43 (1+2D)^32 K0^3 K1^2 W^2 with W of degree 22; roots -1/2 < D2 < D1 < D0 < 0"
          : "the discriminant in t has finitely many isolated roots in (-1,-1/2), mirrored from the decreasing branch";
  out.step = guarded("analyze_discriminant", claim, [&](json& w) {
    const MPoly delta = certified_discriminant(target, Var::U, opts);
    out.delta = delta;
    w["delta_degree"] = delta.degree(Var::D);
    MPoly rest = delta;
    json exps = json::object();
    unsigned e[3];
    const std::vector<std::pair<std::string, MPoly>> lin{{"D", kD}, {"D+1", kD + 1}, {"1+2D", 1 + 2 * kD}};
    for (std::size_t i = 0; i < lin.size(); ++i) {
      auto [k, r] = strip_factor(rest, lin[i].second);
      e[i] = k;
      exps[lin[i].first] = k;
      rest = std::move(r);
    }
    w["exponents"] = exps;
    const auto blocks = exactalg::squarefree_decomposition(rest);
    MPoly reassembled(1);
    json bj = json::array();
    for (const auto& blk : blocks) {
      reassembled *= blk.factor.pow(blk.multiplicity);
      bj.push_back({{"multiplicity", blk.multiplicity}, {"degree", blk.factor.degree(Var::D)}});
    }
    w["blocks"] = bj;
    exact_divide(rest, reassembled);  // throws unless the quotient is a constant multiple

    auto block = [&](unsigned m) -> const MPoly* {
      for (const auto& blk : blocks) {
        if (blk.multiplicity == m) return &blk.factor;
      }
      return nullptr;
    };
    const MPoly* b3 = block(3);
    const MPoly* b2 = block(2);
    if (b3 == nullptr || b2 == nullptr || blocks.size() != 2) {
      w["error"] = "unexpected block structure";
      return false;
    }
    // Known factors, mirrored by D -> -1-D on the increasing branch.
    auto mirror = [&](const MPoly& p) {
      return b == Branch::Decreasing ? p : p.compose(Var::D, -1 - kD);
    };
    const MPoly k0 = mirror(K0());
    const MPoly k1 = mirror(K1());
    const bool k0_ok = *b3 * Rational(k0.leading_coeff(Var::D).constant_term()) == k0;
    MPoly wblock;
    bool k1_ok = true;
    try {
      wblock = exact_divide(*b2, k1);
    } catch (const NotDivisible&) {
      k1_ok = false;
    }
    w["K0_is_multiplicity_3_block"] = k0_ok;
    w["K1_divides_multiplicity_2_block"] = k1_ok;
    if (!k0_ok || !k1_ok) return false;
    const MPoly W = UPoly::from_mpoly(wblock, Var::D).primitive().to_mpoly(Var::D);
    out.residual_block = W;
    w["W"] = poly(W);
    w["W_degree"] = W.degree(Var::D);

    MPoly ratio;
    bool proportional = true;
    try {
      ratio = exact_divide(delta, kD.pow(e[0]) * (kD + 1).pow(e[1]) * (1 + 2 * kD).pow(e[2]) *
                                      k0.pow(3) * k1.pow(2) * W.pow(2));
      proportional = ratio.is_constant() && !ratio.is_zero();
    } catch (const NotDivisible&) {
      proportional = false;
    }
    w["proportional"] = proportional;
    if (!proportional) return false;
    const Rational c = ratio.constant_term();
    w["constant"] = rat(c);
    w["constant_over_33554432"] = rat(c / Rational(33554432));

    bool exps_ok = true;
    if (b == Branch::Decreasing) {
      exps_ok = e[0] == 43 && e[1] == 43 && e[2] == 32;
      w["exponents_match_43_43_32"] = exps_ok;
    }
    const bool w_degree_ok = W.degree(Var::D) == 22;

    const std::vector<std::pair<std::string, MPoly>> named{{"D0", k0}, {"D1", k1}, {"D2", W}};
    json rj = json::object();
    bool one_each = true;
    for (const auto& [name, f] : named) {
      const auto roots = exactalg::isolate_roots(f, branch, kIsolationTol);
      rj[name] = {{"count", roots.size()}};
      if (roots.size() != 1) {
        one_each = false;
        continue;
      }
      rj[name]["enclosure"] = iv_json(roots[0]);
      out.roots.push_back({name, f, roots[0]});
    }
    w["roots"] = rj;
    if (!one_each) return false;
    std::sort(out.roots.begin(), out.roots.end(),
              [](const BifurcationRoot& x, const BifurcationRoot& y) { return x.enclosure.lo() < y.enclosure.lo(); });
    bool ordered = true;
    for (std::size_t i = 0; i + 1 < out.roots.size(); ++i) {
      ordered = ordered && out.roots[i].enclosure.strictly_below(out.roots[i + 1].enclosure);
    }
    json order = json::array();
    for (const auto& r : out.roots) order.push_back(r.name);
    w["ascending_order"] = order;
    const std::vector<std::string> expect_order =
        b == Branch::Decreasing ? std::vector<std::string>{"D2", "D1", "D0"}
                                : std::vector<std::string>{"D0", "D1", "D2"};
    for (std::size_t i = 0; i < out.roots.size(); ++i) ordered = ordered && out.roots[i].name == expect_order[i];
    w["disjoint_and_ordered"] = ordered;

    bool reference_ok = true;
    if (b == Branch::Decreasing) {
      const IntervalQ& piv = reference_d2_interval();
      const Rational wl = eval_d(W, piv.lo());
      const Rational wh = eval_d(W, piv.hi());
      const bool sign_change = sgn(wl) * sgn(wh) < 0;
      const IntervalQ& d2 = std::find_if(out.roots.begin(), out.roots.end(), [](const auto& r) {
                              return r.name == "D2";
                            })->enclosure;
      const bool meets = d2.intersects(piv);
      w["W_sign_change_on_reference_interval"] = sign_change;
      w["D2_enclosure_meets_reference_interval"] = meets;
      reference_ok = sign_change && meets;
    }
    return exps_ok && w_degree_ok && ordered && reference_ok;
  });
  return out;
}

StepResult check_subintervals(Branch b, const MPoly& target, std::vector<BifurcationRoot> roots,
                              const std::vector<Rational>& samples) {
  return guarded(
      "check_subintervals", "the target polynomial has no roots in (0,1) at one rational D per sub-interval",
      [&](json& w) {
        const IntervalQ branch = branch_interval(b);
        std::vector<Rational> chosen = samples.empty() ? default_samples(b) : samples;
        const std::size_t pieces = roots.size() + 1;
        bool repaired_any = false;
        if (chosen.size() != pieces) {
          chosen.assign(pieces, Rational(0));
          repaired_any = true;
        }
        for (const auto& s : chosen) {
          if (branch.contains(s)) refine_away(roots, s);
        }
        json list = json::array();
        bool ok = true;
        for (std::size_t i = 0; i < pieces; ++i) {
          const Rational lower = i == 0 ? branch.lo() : roots[i - 1].enclosure.hi();
          const Rational upper = i == roots.size() ? branch.hi() : roots[i].enclosure.lo();
          Rational s = chosen[i];
          bool repaired = false;
          if (!(lower < s && s < upper)) {
            s = (lower + upper) / 2;
            repaired = true;
            repaired_any = true;
          }
          const std::size_t count = sturm_count(target.substitute(Var::D, s), IntervalQ(q(0), q(1)));
          json item = {{"D", rat(s)},
                       {"between", json::array({i == 0 ? std::string("branch_lo") : roots[i - 1].name,
                                                i == roots.size() ? std::string("branch_hi") : roots[i].name})},
                       {"roots_in_0_1", count}};
          if (repaired) item["repaired_from"] = rat(chosen[i]);
          list.push_back(item);
          ok = ok && count == 0;
        }
        w["samples"] = list;
        w["repaired"] = repaired_any;
        return ok;
      });
}

MPoly upper_bound_poly(const MPoly& target, const IntervalQ& iv) {
  if (!(iv.hi() <= 0 || iv.lo() >= 0)) {
    throw std::invalid_argument("upper_bound_poly: D-interval must not contain 0 in its interior");
  }
  std::map<std::uint32_t, Rational> coeff;
  for (const auto& [key, c] : target.terms()) {
    const auto e = MPoly::unpack(key);
    if (e[1] != 0) throw std::invalid_argument("upper_bound_poly: target must not use w");
    Rational lo_m = 1;
    Rational hi_m = 1;
    for (std::uint32_t i = 0; i < e[2]; ++i) {
      lo_m *= iv.lo();
      hi_m *= iv.hi();
    }
    coeff[e[0]] += std::max(Rational(c * lo_m), Rational(c * hi_m));
  }
  MPoly U;
  for (const auto& [j, c] : coeff) U += MPoly::monomial(c, {j, 0, 0});
  return U;
}

BoundingResult bounding_poly(const std::string& root_name, const MPoly& target, IntervalQ iv,
                             const MPoly& factor, unsigned retries) {
  BoundingResult out;
  out.step = guarded(
      "bounding_poly[" + root_name + "]",
      "R(u;D) <= U(u) < 0 on (0,1) for every D in the enclosure of " + root_name, [&](json& w) {
        const UPoly f = exactalg::squarefree_part(in_d(factor));
        if (f.sign_at(iv.lo()) * f.sign_at(iv.hi()) >= 0 || sturm_count(f, iv) != 1) {
          w["error"] = "enclosure does not isolate the root";
          w["enclosure"] = iv_json(iv);
          return false;
        }
        json tries = json::array();
        for (unsigned attempt = 0; attempt <= retries; ++attempt) {
          out.attempts = attempt + 1;
          const MPoly U = upper_bound_poly(target, iv);
          const Rational mid = U.evaluate(q(1, 2), Rational(0), Rational(0));
          bool ok = mid < 0;
          std::size_t roots = 0;
          if (ok) {
            try {
              roots = sturm_count(U, IntervalQ(q(0), q(1)));
            } catch (const EndpointRoot&) {
              ok = false;
            }
            ok = ok && roots == 0;
          }
          json attempt_w = {{"enclosure", iv_json(iv)}, {"U_at_half", rat(mid)}, {"negative", ok}};
          if (mid < 0) attempt_w["U_roots_in_0_1"] = roots;
          tries.push_back(attempt_w);
          if (ok) {
            w["attempts"] = tries;
            w["enclosure"] = iv_json(iv);
            w["U"] = poly(U);
            w["U_roots_in_0_1"] = roots;
            out.U = U;
            out.enclosure = iv;
            return true;
          }
          iv = exactalg::refine_root(f, iv, iv.width() / 16);
        }
        w["attempts"] = tries;
        w["error"] = BoundTooLoose("bound still not negative after " + std::to_string(retries) + " shrinks").what();
        return false;
      });
  return out;
}

Certifier::Certifier(Branch b, CertifyOptions opts) : branch_(b), opts_(std::move(opts)) {}

CertificateReport Certifier::run() {
  CertificateReport report;
  report.branch = branch_;
  polys_ = ProofPolynomials{};
  polys_.branch = branch_;

  report.steps.push_back(step_build(branch_, polys_));
  const bool built = report.steps.back().pass;
  report.steps.push_back(check_P_negative(branch_));
  if (branch_ == Branch::Decreasing) report.steps.push_back(replay_d13());

  const std::string r2_claim = "Res(P2,P3) = S R2";
  if (!built) {
    report.steps.push_back(missing("compute_R2", r2_claim, "build_proof_polys"));
    return report;
  }
  R2Result r2 = compute_R2(polys_, opts_);
  report.steps.push_back(r2.step);
  if (!r2.target) return report;
  polys_.set("R2", *r2.r2);
  if (branch_ == Branch::Increasing) polys_.set("M", *r2.target);

  DiscriminantResult disc = analyze_discriminant(branch_, *r2.target, opts_);
  report.steps.push_back(disc.step);
  if (disc.delta) polys_.set(branch_ == Branch::Decreasing ? "Delta_u" : "Delta_t", *disc.delta);
  if (disc.residual_block) polys_.set("W", *disc.residual_block);
  if (branch_ == Branch::Increasing) {
    polys_.set("K0", K0().compose(Var::D, -1 - kD));
    polys_.set("K1", K1().compose(Var::D, -1 - kD));
  }
  if (!disc.step.pass) {
    report.steps.push_back(missing("check_subintervals", "sub-interval samples", "analyze_discriminant"));
    return report;
  }

  report.steps.push_back(check_subintervals(branch_, *r2.target, disc.roots, opts_.samples));

  for (const auto& root : disc.roots) {
    IntervalQ start = root.enclosure;
    if (branch_ == Branch::Decreasing && root.name == "D2") start = reference_d2_interval();
    BoundingResult br = bounding_poly(root.name, *r2.target, start, root.factor, opts_.bound_retries);
    report.steps.push_back(br.step);
    if (br.U) polys_.set("U_" + root.name, *br.U);
  }
  return report;
}

CertificateReport certify_monotonicity(Branch b, const CertifyOptions& opts) {
  return Certifier(b, opts).run();
}

}  // namespace period_atlas::certify
