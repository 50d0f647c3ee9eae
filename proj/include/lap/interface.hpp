// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "lap/assembly.hpp"

namespace lap {

/// Periodic function on the interface line, sampled at y_j = -ell + j h_y.
///
/// Fourier modes are e_m(y) = exp(i pi m y / ell) / sqrt(2 ell), m = -ny/2 .. ny/2-1,
/// with coefficients v_m = h_y sum_j v_j conj(e_m(y_j)). Parseval is exact:
/// sum |v_m|^2 = h_y sum |v_j|^2.
class InterfaceTrace {
 public:
  InterfaceTrace() = default;
  InterfaceTrace(double ell, CVector values);

  static InterfaceTrace from_function(const GridSpec& grid, const std::function<Complex(double)>& fn);
  /// coeffs[k] is the coefficient of mode m = k - ny/2.
  static InterfaceTrace from_coefficients(double ell, const CVector& coeffs);

  double ell() const { return ell_; }
  int size() const { return static_cast<int>(values_.size()); }
  double hy() const { return 2.0 * ell_ / size(); }
  double y(int j) const { return -ell_ + j * hy(); }
  const CVector& values() const { return values_; }

  CVector coefficients() const;
  /// lambda_m = pi |m| / ell for position k (m = k - ny/2).
  double eigenvalue(int k) const;
  int mode(int k) const { return k - size() / 2; }

  double l2_norm() const;

 private:
  double ell_ = 1.0;
  CVector values_;
};

InterfaceTrace operator-(const InterfaceTrace& a, const InterfaceTrace& b);
InterfaceTrace operator+(const InterfaceTrace& a, const InterfaceTrace& b);
InterfaceTrace operator*(Complex s, const InterfaceTrace& a);

/// Values of u along node column `column` (default: x = 0).
InterfaceTrace dirichlet_trace(const ComplexField& u, int column = -1);

/// Conormal trace (x A + i nu T) grad u . e_x on x = 0, recovered from the residual of the
/// discrete equation on one side:  <g, phi> = -(a_p(u, phi) + (f, phi)) on the p side and
/// <g, phi> = a_n(u, phi) + (f, phi) on the n side.
InterfaceTrace conormal_trace(const Assembler& assembler, const ComplexField& u, const ComplexField& f, Side side);
InterfaceTrace conormal_trace(const ComplexField& u, const ComplexField& f, Side side, const TensorField& A,
                              const TensorField& T, double nu, double omega = 0.0, XRule rule = XRule::fitted);

/// Solves M_Sigma x = r for the periodic consistent interface mass.
CVector interface_mass_solve(const CVector& r, double hy);

/// (sum_m (1 + lambda_m^2)^s |v_m|^2)^(1/2).
double sobolev_norm(const InterfaceTrace& t, double s);

/// Low-pass: keep modes with lambda_m < w. High-pass: keep modes with lambda_m >= w.
InterfaceTrace lowpass(const InterfaceTrace& t, double w);
InterfaceTrace highpass(const InterfaceTrace& t, double w);

/// Mode-wise lifting of t into x > 0 that vanishes for x >= delta. Zero on x < 0.
ComplexField harmonic_lifting(const InterfaceTrace& t, double delta, const GridSpec& grid);

struct WeightOptions {
  Region region = Region::all;
  // Leave out the cells touching x = 0 (for fields undefined there).
  bool skip_interface_cells = false;
};

struct WeightedNorms {
  double gradient = 0.0;  // (integral |x|^delta |grad u|^2)^(1/2)
  double l2 = 0.0;        // (integral |u|^2)^(1/2)
  double combined = 0.0;  // (gradient^2 + l2^2)^(1/2)
};

/// Cell-wise integration of the bilinear interpolant of u. Cells touching x = 0 use exact
/// moments of |x|^delta; the rest use 4-point Gauss in x and 2-point Gauss in y.
WeightedNorms weighted_norm(const ComplexField& u, double delta, const WeightOptions& opts = {});
/// (integral |x|^delta |u|^2)^(1/2) with the same quadrature.
double weighted_l2(const ComplexField& u, double delta, const WeightOptions& opts = {});

/// Hardy probe ||x^(-1/2+eps) u||_{L2(p side)} / ||u||_{V_reg(p side)}.
double hardy_ratio(const ComplexField& u, double eps);

/// Row-wise Fourier multipliers in y.
ComplexField apply_y_symbol(const ComplexField& u, const std::function<Complex(int m, double lambda)>& symbol);
/// Bessel potential (1 + lambda_m^2)^(1/4) in y.
ComplexField bessel_potential(const ComplexField& u);
/// Spectral d/dy.
ComplexField spectral_dy(const ComplexField& u);

}  // namespace lap
