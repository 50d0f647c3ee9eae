// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "lap/decomposition.hpp"

namespace lap {

/// Data shared by every solve of one experiment.
struct Problem {
  TensorField A;
  TensorField T;
  ComplexField f;
  double omega = 0.0;
  XRule rule = XRule::fitted;
  SolveOptions solver;

  const GridSpec& grid() const { return f.grid(); }
};

struct AbsorptionSolution {
  double nu = 0.0;
  ComplexField u;
  InterfaceTrace g;  // conormal trace recovered on the p side
  SolveReport report;
};

/// Solves div((x A + i nu T) grad u) - omega^2 u = f with u = 0 at x = +-a. nu != 0.
AbsorptionSolution solve_absorption(const Problem& problem, double nu);

struct SweepRecord {
  double nu = 0.0;
  double l2 = 0.0;           // ||u||
  double xgrad = 0.0;        // ||x grad u||
  double sqrtnu_grad = 0.0;  // |nu|^(1/2) ||grad u||
  double g_hm12 = 0.0;       // ||g||_{H^-1/2}
  double g_h12 = 0.0;        // ||g||_{H^1/2}
  double jump_res = 0.0;     // relative jump residual of the absorbed split
  double cauchy = 0.0;       // ||u^{nu_k} - u^{nu_{k-1}}||, 0 for the first row
};

struct SweepResult {
  std::vector<SweepRecord> records;
  AbsorptionSolution last;      // solution at the smallest |nu|
  Decomposition last_split;     // its absorbed split
  JumpResidual last_jump;
};

/// nu_list must be strictly decreasing in |nu| with a common sign.
SweepResult lap_sweep(const Problem& problem, const std::vector<double>& nu_list);

enum class InterfaceMethod { automatic, probing, krylov };

struct LimitingOptions {
  int branch = 1;          // +1: limit from nu > 0
  double tol_jump = 1e-8;  // relative jump residual the solution must meet
  InterfaceMethod method = InterfaceMethod::automatic;
};

struct LimitingSolution {
  ComplexField u;  // undefined on x = 0 (stored as 0)
  InterfaceTrace g;
  Decomposition decomposition;
  JumpResidual jump;
  std::string method;
  int interface_evaluations = 0;
  double rcond = 0.0;  // of the probed interface matrix (probing only)
};

/// Limit problem: u = u_h log|x| + u_reg with [u_reg] = -i pi branch g / A11 on x = 0.
LimitingSolution solve_limiting(const Problem& problem, const LimitingOptions& opts = {});

/// integral f conj(v) over the domain, v = v_h log|x| + v_reg from a zero-absorption split.
Complex singular_inner(const ComplexField& f, const Decomposition& v);

struct GreenCheck {
  Complex lhs;  // (f_u, v) - (u, f_v)
  Complex rhs;  // -<g_u, conj[v]> + conj <g_v, conj[u]>
  double residual = 0.0;
};

GreenCheck green_check(const Decomposition& u, const ComplexField& f_u, const Decomposition& v,
                       const ComplexField& f_v);

}  // namespace lap
