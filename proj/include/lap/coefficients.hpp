// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "lap/fields.hpp"

namespace lap {

using Mat2 = Eigen::Matrix2cd;

/// Nodal 2x2 complex tensor field on a grid.
class TensorField {
 public:
  TensorField() = default;
  explicit TensorField(const GridSpec& grid) : grid_(grid), values_(grid.num_dofs(), Mat2::Zero()) {}
  TensorField(const GridSpec& grid, std::vector<Mat2> values);

  static TensorField constant(const GridSpec& grid, const Mat2& m);
  static TensorField identity(const GridSpec& grid) { return constant(grid, Mat2::Identity()); }
  /// Samples fn at the nodes. Throws if fn(x, ell) differs from fn(x, -ell).
  static TensorField from_function(const GridSpec& grid, const std::function<Mat2(double, double)>& fn);

  const GridSpec& grid() const { return grid_; }
  Mat2& operator()(int i, int j) { return values_[grid_.dof(i, j)]; }
  const Mat2& operator()(int i, int j) const { return values_[grid_.dof(i, j)]; }
  const std::vector<Mat2>& values() const { return values_; }

  /// Bilinear interpolation in cell (ci, cj) at local coordinates s, t in [0, 1].
  Mat2 interpolate(int ci, int cj, double s, double t) const;

 private:
  GridSpec grid_;
  std::vector<Mat2> values_;
};

struct Eig2 {
  double lo = 0.0;
  double hi = 0.0;
};

/// Eigenvalues of the Hermitian part of m in closed form.
Eig2 hermitian_eigenvalues(const Mat2& m);

bool is_hermitian(const Mat2& m, double rel_tol = 1e-12);

struct CoercivityReport {
  double c_A = 0.0;  // min eigenvalue of A over nodes
  double c_T = 0.0;  // min eigenvalue of T over nodes
  double max_A = 0.0;
  double max_T = 0.0;
};

/// Checks A and T are Hermitian positive definite at every node and share the grid.
CoercivityReport validate_coefficients(const TensorField& A, const TensorField& T);

struct ProbeReport {
  double min_im_ratio = 0.0;   // min Im(M p.conj(p)) / (nu |p|^2)
  double max_re_defect = 0.0;  // max |Re(M p.conj(p)) - x A p.conj(p)| / |p|^2
  int samples = 0;
};

/// Random probe of M = x A + i nu T at every node with `probes` vectors per node.
ProbeReport coercivity_probe(const TensorField& A, const TensorField& T, double nu, int probes = 8,
                             unsigned long long seed = 12345);

/// Re(A11) along the x = 0 column.
RVector a11_on_interface(const TensorField& A);

/// Nodal ratio T11 / A11.
RealField absorption_ratio(const TensorField& A, const TensorField& T);

}  // namespace lap
