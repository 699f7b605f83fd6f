#pragma once

#include <string>
#include <utility>
#include <vector>

#include "period_atlas/exactalg/mpoly.hpp"

namespace period_atlas::certify {

using exactalg::MPoly;

enum class Branch { Decreasing, Increasing };

std::string branch_name(Branch b);
/// "decreasing" | "increasing"; throws std::invalid_argument otherwise.
Branch parse_branch(const std::string& name);

/// q(x;D) = 1 + 2Dx + D(1+2D)x^2 in the variable x.
MPoly quadratic_q(exactalg::Var x);
/// P(x;D) = -1 - 4Dx - 2D(2D-1)x^2 - 2D(1+D+2D^2)x^3 + D^2(1+2D)x^4.
MPoly quartic_P(exactalg::Var x);

/// u(1+Du)^3(1+Dw)^3 w F_2, cleared exactly.
MPoly build_P2();
/// (u-1)u^2(1+Du)^4(1+Dw)P(w;D) F_3 / w, cleared exactly (the /w division is checked).
MPoly build_P3();
/// -8 D^9 u^7 (u-1)^3 (1+2D) (D+1)^9 (Du+1)^21 (D(1+2D)u^2+2Du+1).
MPoly cofactor_S();

/// The D = -1/3 curves: Q1 is the numerator of F_1 after cubing, Q2 that of F_2.
MPoly d13_Q1();
MPoly d13_Q2();
/// The degree-12 polynomial R(u) with Res_w(Q1,Q2) = 32 (u-1)^3 u^6 R(u).
MPoly d13_R();
std::vector<long> d13_R_coefficients();

MPoly K0();
MPoly K1();
/// -16 (D+1)^4 D^4 (304D^4 + 608D^3 + 296D^2 - 8D + 27).
MPoly delta_w_expected();

/// x |-> -t/(1-t), cleared by (1-t)^deg: maps roots on (-inf, 0) to (0, 1).
/// The result lives in variable `to`.
MPoly negative_axis_to_unit(const MPoly& p, exactalg::Var from, exactalg::Var to);

/// Named polynomials produced by a certificate run, in insertion order.
struct ProofPolynomials {
  Branch branch = Branch::Decreasing;
  std::vector<std::pair<std::string, MPoly>> entries;

  void set(const std::string& name, MPoly p);
  bool has(const std::string& name) const;
  const MPoly& get(const std::string& name) const;
};

/// P, P2, P3 (and S, Q1, Q2, R on the decreasing branch), with the degree
/// assertions (7, 11, and the exact /w division) checked.
ProofPolynomials build_proof_polys(Branch b);

}  // namespace period_atlas::certify
