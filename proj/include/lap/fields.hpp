// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "lap/grid.hpp"

namespace lap {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Nodal values on a GridSpec, stored in dof order.
template <typename Scalar>
class NodalField {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  NodalField() = default;
  explicit NodalField(const GridSpec& grid) : grid_(grid), values_(Vector::Zero(grid.num_dofs())) {}
  NodalField(const GridSpec& grid, Vector values);

  static NodalField from_function(const GridSpec& grid, const std::function<Scalar(double, double)>& fn) {
    NodalField out(grid);
    for (int i = 0; i < grid.nx_nodes(); ++i)
      for (int j = 0; j < grid.ny; ++j) out(i, j) = fn(grid.x(i), grid.y(j));
    return out;
  }

  const GridSpec& grid() const { return grid_; }
  Scalar& operator()(int i, int j) { return values_[grid_.dof(i, j)]; }
  const Scalar& operator()(int i, int j) const { return values_[grid_.dof(i, j)]; }
  Vector& values() { return values_; }
  const Vector& values() const { return values_; }

 private:
  GridSpec grid_;
  Vector values_;
};

using ComplexField = NodalField<Complex>;
using RealField = NodalField<double>;

enum class Region { all, p, n };

struct NormOptions {
  Region region = Region::all;
  // Leave out the x = 0 node line (for fields that are undefined there).
  bool skip_interface = false;
};

/// Discrete L2 norm with trapezoid weights in x and uniform periodic weights in y.
double l2_norm(const ComplexField& u, const NormOptions& opts = {});
double linf_norm(const ComplexField& u, const NormOptions& opts = {});
/// Discrete L2 inner product sum w u conj(v) with the same weights as l2_norm.
Complex l2_inner(const ComplexField& u, const ComplexField& v, const NormOptions& opts = {});

ComplexField conj(const ComplexField& u);
ComplexField to_complex(const RealField& u);
ComplexField operator-(const ComplexField& u, const ComplexField& v);
ComplexField operator+(const ComplexField& u, const ComplexField& v);

void require_same_grid(const GridSpec& g1, const GridSpec& g2, const char* what);

}  // namespace lap
