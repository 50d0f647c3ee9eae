// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>

#include "lap/interface.hpp"
#include "lap/linsolve.hpp"

namespace lap {

/// zero_absorption: u = u_h log|x| + u_reg (u_reg undefined on x = 0, stored as 0 there).
/// absorbed:        u = u_h log(x + i branch |nu| r) + u_cont with r = T11/A11.
enum class SplitKind { zero_absorption, absorbed };

struct Decomposition {
  SplitKind kind = SplitKind::zero_absorption;
  ComplexField u_h;
  ComplexField u_reg;  // u_cont for the absorbed kind
  InterfaceTrace g;
  RVector a11;  // A11 along x = 0
  double nu = 0.0;
  int branch = 1;  // +1: limit from nu > 0, -1: from nu < 0
  // One-sided traces of the regular part when they are known exactly.
  std::optional<InterfaceTrace> trace_p;
  std::optional<InterfaceTrace> trace_n;
};

/// A-harmonic extension: div(A grad u_h) = 0 on each side, u_h = g / A11 on x = 0, u_h = 0 at x = +-a.
/// The factorization is reused across calls.
class HarmonicSolver {
 public:
  explicit HarmonicSolver(const TensorField& A);
  ComplexField solve(const InterfaceTrace& g) const;
  const RVector& a11() const { return a11_; }

 private:
  GridSpec grid_;
  RVector a11_;
  std::unique_ptr<Factorization> lu_;
};

ComplexField solve_harmonic(const InterfaceTrace& g, const TensorField& A);

/// Splits u given its conormal trace g. nu == 0 gives the zero_absorption kind,
/// nu != 0 the absorbed kind with log branch sign `branch`.
Decomposition split(const ComplexField& u, const InterfaceTrace& g, const TensorField& A, const TensorField& T,
                    double nu, int branch);

/// Principal log of x + i branch |nu| r (log|x| when nu == 0).
Complex log_factor(double x, double nu, double r, int branch);

/// One-sided trace of the log|x| regular part on x = 0.
/// Uses the stored trace if present, else quadratic extrapolation from the three nearest
/// node columns on that side. For the absorbed kind the n side adds i pi branch u_h.
InterfaceTrace trace_of_regular(const Decomposition& d, Side side);

struct JumpResidual {
  InterfaceTrace jump;  // trace_p - trace_n
  InterfaceTrace rho;   // jump + i pi branch g / A11
  double l2 = 0.0;
  double h12 = 0.0;
  double jump_l2 = 0.0;
  double relative = 0.0;  // l2 / jump_l2
};

JumpResidual jump_residual(const Decomposition& d);

}  // namespace lap
