// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "lap/coefficients.hpp"

namespace lap {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// How x-derivatives are integrated on each cell.
///  gauss:  bilinear shape functions, 2x2 Gauss for every term.
///  fitted: for nu != 0 the x-shape functions are L-splines of c(x) = A11 x + i nu T11
///          (coefficients frozen at the cell centre); the xx term is then exact.
///          For nu == 0 this falls back to gauss.
enum class XRule { gauss, fitted };

struct AssemblyOptions {
  double nu = 0.0;
  double omega = 0.0;
  XRule rule = XRule::fitted;
  // true: M = x A + i nu T.  false: M = A (the A-harmonic operator), nu ignored.
  bool degenerate = true;
};

/// Constrained system: dofs in `constrained` carry identity rows.
struct SystemMatrix {
  SparseMatrix matrix;
  std::vector<int> constrained;
  double nu = 0.0;
  double omega = 0.0;
};

/// Element loops for one coefficient pair.
///
/// The discrete form pairs trial and test shape functions without conjugation.
/// For real bilinear shapes this is the usual sesquilinear Galerkin form.
class Assembler {
 public:
  Assembler(const TensorField& A, const TensorField& T, AssemblyOptions opts);

  const GridSpec& grid() const { return A_.grid(); }
  const AssemblyOptions& options() const { return opts_; }
  const TensorField& A() const { return A_; }
  const TensorField& T() const { return T_; }
  bool uses_fitted_shapes() const;

  /// Unconstrained operator matrix over the given cells, including + omega^2 mass.
  SparseMatrix operator_matrix(CellRange cells) const;
  /// -integral f phi_k over the given cells, f interpolated bilinearly.
  CVector load(const ComplexField& f, CellRange cells) const;
  SparseMatrix mass_matrix(CellRange cells) const;

  /// Parts of the Gauss-rule operator: S_A (x-weighted A), S_T and the mass matrix.
  struct Parts {
    SparseMatrix stiff_A;
    SparseMatrix stiff_T;
    SparseMatrix mass;
  };
  Parts gauss_parts(CellRange cells) const;

 private:
  TensorField A_;
  TensorField T_;
  AssemblyOptions opts_;
};

/// Copies raw but replaces rows listed in `rows` with identity rows.
SystemMatrix constrain(const SparseMatrix& raw, const std::vector<int>& rows, double nu = 0.0, double omega = 0.0);

/// Dofs on x = -a and x = a.
std::vector<int> boundary_dofs(const GridSpec& grid);
/// Dofs needing identity rows when only `cells` are active: outer boundary plus untouched columns.
std::vector<int> inactive_dofs(const GridSpec& grid, CellRange cells);

/// Full-domain system with homogeneous Dirichlet rows at x = +-a.
SystemMatrix assemble_system(const GridSpec& grid, const TensorField& A, const TensorField& T,
                             const AssemblyOptions& opts);

/// -M f with bilinear shapes; zero on Dirichlet rows.
CVector assemble_rhs(const GridSpec& grid, const ComplexField& f);
/// Same with the assembler's shape functions.
CVector assemble_rhs(const Assembler& assembler, const ComplexField& f);

/// Consistent periodic mass (h_y/6)[1, 4, 1] of the interface line applied to g.
CVector interface_mass_apply(const CVector& g, double hy);

/// One-sided subdomain problem. Rows outside the side are identity rows.
/// interface_load holds -M_Sigma g (p side) or +M_Sigma g (n side) on the interface rows.
struct SubdomainSystem {
  SystemMatrix system;
  CVector interface_load;
};
SubdomainSystem assemble_subdomain(const Assembler& assembler, Side side, const CVector* g = nullptr);

/// Interface-line load -/+ M_Sigma g scattered to a full-size vector (minus on the p side).
CVector interface_load(const GridSpec& grid, Side side, const CVector& g);

/// Discrete form a_side(u_h log|x|, phi_k) for every dof, with the x-weighted A operator.
/// u_h is a nodal field interpolated bilinearly; x log|x| keeps the integrand bounded.
CVector singular_flux_load(const TensorField& A, const ComplexField& u_h, CellRange cells);

}  // namespace lap
