// SPDX-License-Identifier: Apache-2.0
#include "lap/coefficients.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "lap/errors.hpp"

namespace lap {

TensorField::TensorField(const GridSpec& grid, std::vector<Mat2> values) : grid_(grid), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid.num_dofs())
    throw ConfigError("tensor field size does not match grid");
}

TensorField TensorField::constant(const GridSpec& grid, const Mat2& m) {
  return TensorField(grid, std::vector<Mat2>(grid.num_dofs(), m));
}

TensorField TensorField::from_function(const GridSpec& grid, const std::function<Mat2(double, double)>& fn) {
  TensorField out(grid);
  for (int i = 0; i < grid.nx_nodes(); ++i) {
    const double x = grid.x(i);
    for (int j = 0; j < grid.ny; ++j) out(i, j) = fn(x, grid.y(j));
    const Mat2 top = fn(x, grid.ell);
    const Mat2 bottom = out(i, 0);
    if ((top - bottom).norm() > 1e-10 * std::max(1.0, bottom.norm())) {
      std::ostringstream msg;
      msg << "coefficient is not periodic in y: values at y=ell and y=-ell differ at x=" << x;
      throw ConfigError(msg.str());
    }
  }
  return out;
}

Mat2 TensorField::interpolate(int ci, int cj, double s, double t) const {
  return (1 - s) * (1 - t) * (*this)(ci, cj) + s * (1 - t) * (*this)(ci + 1, cj) + (1 - s) * t * (*this)(ci, cj + 1) +
         s * t * (*this)(ci + 1, cj + 1);
}

Eig2 hermitian_eigenvalues(const Mat2& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const Complex b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  const double mean = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  return {mean - rad, mean + rad};
}

bool is_hermitian(const Mat2& m, double rel_tol) {
  const double scale = std::max(1.0, m.norm());
  if (!m.allFinite()) return false;
  return std::abs(m(0, 1) - std::conj(m(1, 0))) <= rel_tol * scale && std::abs(m(0, 0).imag()) <= rel_tol * scale &&
         std::abs(m(1, 1).imag()) <= rel_tol * scale;
}

namespace {

void check_field(const TensorField& m, const char* name, double& cmin, double& cmax) {
  const GridSpec& g = m.grid();
  cmin = INFINITY;
  cmax = 0.0;
  for (int i = 0; i < g.nx_nodes(); ++i)
    for (int j = 0; j < g.ny; ++j) {
      const Mat2& v = m(i, j);
      if (!is_hermitian(v)) {
        std::ostringstream msg;
        msg << name << " is not Hermitian at node (" << i << ", " << j << ")";
        throw ConfigError(msg.str());
      }
      const Eig2 e = hermitian_eigenvalues(v);
      if (!(e.lo > 0.0)) {
        std::ostringstream msg;
        msg << name << " is not positive definite at node (" << i << ", " << j << "), min eigenvalue " << e.lo;
        throw ConfigError(msg.str());
      }
      cmin = std::min(cmin, e.lo);
      cmax = std::max(cmax, e.hi);
    }
}

}  // namespace

CoercivityReport validate_coefficients(const TensorField& A, const TensorField& T) {
  if (!(A.grid() == T.grid())) throw ConfigError("A and T are sampled on different grids (y-period mismatch)");
  CoercivityReport r;
  check_field(A, "A", r.c_A, r.max_A);
  check_field(T, "T", r.c_T, r.max_T);
  return r;
}

ProbeReport coercivity_probe(const TensorField& A, const TensorField& T, double nu, int probes,
                             unsigned long long seed) {
  if (nu == 0.0) throw ConfigError("coercivity_probe needs nu != 0");
  const GridSpec& g = A.grid();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ProbeReport r;
  r.min_im_ratio = INFINITY;
  for (int i = 0; i < g.nx_nodes(); ++i)
    for (int j = 0; j < g.ny; ++j) {
      const double x = g.x(i);
      const Mat2 M = x * A(i, j) + kI * nu * T(i, j);
      for (int k = 0; k < probes; ++k) {
        Eigen::Vector2cd p(Complex(normal(rng), normal(rng)), Complex(normal(rng), normal(rng)));
        const double pp = p.squaredNorm();
        const Complex q = p.dot(M * p);  // conj(p)^T M p
        const Complex qa = p.dot(A(i, j) * p);
        r.min_im_ratio = std::min(r.min_im_ratio, q.imag() / (nu * pp));
        r.max_re_defect = std::max(r.max_re_defect, std::abs(q.real() - x * qa.real()) / pp);
        ++r.samples;
      }
    }
  return r;
}

RVector a11_on_interface(const TensorField& A) {
  const GridSpec& g = A.grid();
  RVector out(g.ny);
  for (int j = 0; j < g.ny; ++j) out[j] = A(g.interface_column(), j)(0, 0).real();
  return out;
}

RealField absorption_ratio(const TensorField& A, const TensorField& T) {
  const GridSpec& g = A.grid();
  RealField r(g);
  for (int i = 0; i < g.nx_nodes(); ++i)
    for (int j = 0; j < g.ny; ++j) r(i, j) = T(i, j)(0, 0).real() / A(i, j)(0, 0).real();
  return r;
}

}  // namespace lap
