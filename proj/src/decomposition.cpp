// SPDX-License-Identifier: Apache-2.0
#include "lap/decomposition.hpp"

#include <cmath>

#include "lap/errors.hpp"

namespace lap {

HarmonicSolver::HarmonicSolver(const TensorField& A) : grid_(A.grid()), a11_(a11_on_interface(A)) {
  const Assembler as(A, A, AssemblyOptions{0.0, 0.0, XRule::gauss, false});
  std::vector<int> rows = boundary_dofs(grid_);
  for (int d : interface_dofs(grid_)) rows.push_back(d);
  lu_ = std::make_unique<Factorization>(constrain(as.operator_matrix(all_cells(grid_)), rows));
}

ComplexField HarmonicSolver::solve(const InterfaceTrace& g) const {
  if (g.size() != grid_.ny) throw ConfigError("harmonic solve: trace length does not match grid");
  CVector rhs = CVector::Zero(grid_.num_dofs());
  for (int j = 0; j < grid_.ny; ++j) rhs[grid_.dof(grid_.interface_column(), j)] = g.values()[j] / a11_[j];
  return ComplexField(grid_, lu_->solve(rhs));
}

ComplexField solve_harmonic(const InterfaceTrace& g, const TensorField& A) { return HarmonicSolver(A).solve(g); }

Complex log_factor(double x, double nu, double r, int branch) {
  if (nu == 0.0) return std::log(std::abs(x));
  return std::log(Complex(x, branch * std::abs(nu) * r));
}

Decomposition split(const ComplexField& u, const InterfaceTrace& g, const TensorField& A, const TensorField& T,
                    double nu, int branch) {
  if (branch != 1 && branch != -1) throw ConfigError("split: branch must be +1 or -1");
  const GridSpec& grid = u.grid();
  require_same_grid(grid, A.grid(), "split");
  Decomposition d;
  d.kind = nu == 0.0 ? SplitKind::zero_absorption : SplitKind::absorbed;
  d.nu = nu;
  d.branch = branch;
  d.g = g;
  d.a11 = a11_on_interface(A);
  d.u_h = solve_harmonic(g, A);
  d.u_reg = ComplexField(grid);
  const RealField r = absorption_ratio(A, T);
  for (int i = 0; i < grid.nx_nodes(); ++i) {
    const double x = grid.x(i);
    if (d.kind == SplitKind::zero_absorption && x == 0.0) continue;
    for (int j = 0; j < grid.ny; ++j) d.u_reg(i, j) = u(i, j) - d.u_h(i, j) * log_factor(x, nu, r(i, j), branch);
  }
  return d;
}

InterfaceTrace trace_of_regular(const Decomposition& d, Side side) {
  if (side == Side::p && d.trace_p) return *d.trace_p;
  if (side == Side::n && d.trace_n) return *d.trace_n;
  const GridSpec& g = d.u_reg.grid();
  if (g.nx_half < 3) throw ConfigError("trace_of_regular: extrapolation needs nx_half >= 3");
  const int c = g.interface_column();
  const int s = side == Side::p ? 1 : -1;
  CVector v(g.ny);
  for (int j = 0; j < g.ny; ++j)
    v[j] = 3.0 * d.u_reg(c + s, j) - 3.0 * d.u_reg(c + 2 * s, j) + d.u_reg(c + 3 * s, j);
  if (d.kind == SplitKind::absorbed && side == Side::n)
    for (int j = 0; j < g.ny; ++j) v[j] += kI * kPi * static_cast<double>(d.branch) * d.u_h(c, j);
  return InterfaceTrace(g.ell, v);
}

JumpResidual jump_residual(const Decomposition& d) {
  JumpResidual out;
  out.jump = trace_of_regular(d, Side::p) - trace_of_regular(d, Side::n);
  CVector rho = out.jump.values();
  for (int j = 0; j < rho.size(); ++j)
    rho[j] += kI * kPi * static_cast<double>(d.branch) * d.g.values()[j] / d.a11[j];
  out.rho = InterfaceTrace(out.jump.ell(), rho);
  out.l2 = out.rho.l2_norm();
  out.h12 = sobolev_norm(out.rho, 0.5);
  out.jump_l2 = out.jump.l2_norm();
  out.relative = out.jump_l2 > 0.0 ? out.l2 / out.jump_l2 : out.l2;
  return out;
}

}  // namespace lap
