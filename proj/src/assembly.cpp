// SPDX-License-Identifier: Apache-2.0
#include "lap/assembly.hpp"

#include <array>
#include <cmath>

#include "lap/errors.hpp"
#include "quadrature.hpp"

namespace lap {

namespace {

using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;
using Triplets = std::vector<Eigen::Triplet<Complex>>;

// Local node k sits at x-end kXe[k] and y-end kYe[k] of the cell.
constexpr std::array<int, 4> kXe = {0, 1, 0, 1};
constexpr std::array<int, 4> kYe = {0, 0, 1, 1};

struct XShape {
  std::array<Complex, 2> v;
  std::array<Complex, 2> d;
};

// Left/right x shape functions on one cell.
class CellXBasis {
 public:
  CellXBasis(double x0, double x1) : x0_(x0), h_(x1 - x0) {}
  CellXBasis(double x0, double x1, double alpha, Complex shift)
      : x0_(x0), h_(x1 - x0), fitted_(true), alpha_(alpha), shift_(shift) {
    c0_ = alpha * x0 + shift;
    D_ = std::log((alpha * x1 + shift) / c0_) / alpha;
  }

  XShape at(double x) const {
    XShape s;
    if (!fitted_) {
      const double r = (x - x0_) / h_;
      s.v = {1.0 - r, r};
      s.d = {-1.0 / h_, 1.0 / h_};
      return s;
    }
    const Complex c = alpha_ * x + shift_;
    const Complex r = std::log(c / c0_) / (alpha_ * D_);
    const Complex dr = 1.0 / (D_ * c);
    s.v = {1.0 - r, r};
    s.d = {-dr, dr};
    return s;
  }

  // integral of c |psi'|^2 along x for the frozen c.
  Complex xx_stiffness() const { return 1.0 / D_; }

 private:
  double x0_, h_;
  bool fitted_ = false;
  double alpha_ = 1.0;
  Complex shift_ = 0.0;
  Complex c0_ = 0.0, D_ = 1.0;
};

struct CellSpec {
  int ci, cj;
  double x0, x1, y0, hy;
};

CellSpec cell_at(const GridSpec& g, int ci, int cj) { return {ci, cj, g.x(ci), g.x(ci + 1), g.y(cj), g.hy()}; }

int local_dof(const GridSpec& g, const CellSpec& c, int k) { return g.dof(c.ci + kXe[k], c.cj + kYe[k]); }

void scatter(const GridSpec& g, const CellSpec& c, const Mat4& m, Triplets& out) {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (m(a, b) != Complex(0.0)) out.emplace_back(local_dof(g, c, a), local_dof(g, c, b), m(a, b));
}

SparseMatrix to_matrix(const GridSpec& g, const Triplets& t) {
  SparseMatrix m(g.num_dofs(), g.num_dofs());
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

void check_range(const GridSpec& g, CellRange r) {
  if (r.begin < 0 || r.end > g.nx_cells() || r.begin > r.end) throw ConfigError("cell range out of bounds");
}

// Element matrix of  integral grad(phi_a)^T M grad(phi_b),  M = cA w(x) A + cT T.
// With skip_xx the M11 entry is left out (added exactly by the caller).
Mat4 element_operator(const CellSpec& c, const CellXBasis& xb, const TensorField& A, const TensorField& T, Complex cA,
                      Complex cT, bool degenerate, bool skip_xx) {
  const auto& q = detail::gauss_unit(2);
  const double hx = c.x1 - c.x0;
  Mat4 K = Mat4::Zero();
  for (const auto& [s, ws] : q) {
    const double x = c.x0 + s * hx;
    const XShape xs = xb.at(x);
    const double wx = degenerate ? x : 1.0;
    for (const auto& [t, wt] : q) {
      const double w = ws * wt * hx * c.hy;
      Mat2 M = Mat2::Zero();
      if (cA != Complex(0.0)) M += cA * wx * A.interpolate(c.ci, c.cj, s, t);
      if (cT != Complex(0.0)) M += cT * T.interpolate(c.ci, c.cj, s, t);
      if (skip_xx) M(0, 0) = 0.0;
      const std::array<double, 2> yv = {1.0 - t, t};
      const std::array<double, 2> yd = {-1.0 / c.hy, 1.0 / c.hy};
      std::array<Eigen::Vector2cd, 4> grad;
      for (int k = 0; k < 4; ++k)
        grad[k] = Eigen::Vector2cd(xs.d[kXe[k]] * yv[kYe[k]], xs.v[kXe[k]] * yd[kYe[k]]);
      for (int a = 0; a < 4; ++a) {
        const Eigen::RowVector2cd ga = grad[a].transpose() * M;
        for (int b = 0; b < 4; ++b) K(a, b) += w * (ga * grad[b])(0, 0);
      }
    }
  }
  return K;
}

Mat4 element_mass(const CellSpec& c, const CellXBasis& xb) {
  const auto& q = detail::gauss_unit(2);
  const double hx = c.x1 - c.x0;
  Mat4 m = Mat4::Zero();
  for (const auto& [s, ws] : q) {
    const XShape xs = xb.at(c.x0 + s * hx);
    for (const auto& [t, wt] : q) {
      const std::array<double, 2> yv = {1.0 - t, t};
      Vec4 phi;
      for (int k = 0; k < 4; ++k) phi[k] = xs.v[kXe[k]] * yv[kYe[k]];
      m += ws * wt * hx * c.hy * phi * phi.transpose();
    }
  }
  return m;
}

double corner_average_11(const TensorField& m, const CellSpec& c) {
  return 0.25 * (m(c.ci, c.cj)(0, 0).real() + m(c.ci + 1, c.cj)(0, 0).real() + m(c.ci, c.cj + 1)(0, 0).real() +
                 m(c.ci + 1, c.cj + 1)(0, 0).real());
}

}  // namespace

Assembler::Assembler(const TensorField& A, const TensorField& T, AssemblyOptions opts)
    : A_(A), T_(T), opts_(opts) {
  require_same_grid(A.grid(), T.grid(), "assembler coefficients");
  if (!std::isfinite(opts.nu) || !std::isfinite(opts.omega)) throw ConfigError("nu and omega must be finite");
}

bool Assembler::uses_fitted_shapes() const {
  return opts_.rule == XRule::fitted && opts_.degenerate && opts_.nu != 0.0;
}

namespace {

CellXBasis make_basis(const Assembler& as, const CellSpec& c) {
  if (!as.uses_fitted_shapes()) return CellXBasis(c.x0, c.x1);
  const double alpha = corner_average_11(as.A(), c);
  const double beta = corner_average_11(as.T(), c);
  return CellXBasis(c.x0, c.x1, alpha, kI * as.options().nu * beta);
}

}  // namespace

SparseMatrix Assembler::operator_matrix(CellRange cells) const {
  const GridSpec& g = grid();
  check_range(g, cells);
  const bool fitted = uses_fitted_shapes();
  const Complex cT = opts_.degenerate ? kI * opts_.nu : Complex(0.0);
  const double w2 = opts_.omega * opts_.omega;
  Triplets trip;
  trip.reserve(16 * g.ny * (cells.end - cells.begin));
  for (int ci = cells.begin; ci < cells.end; ++ci)
    for (int cj = 0; cj < g.ny; ++cj) {
      const CellSpec c = cell_at(g, ci, cj);
      const CellXBasis xb = make_basis(*this, c);
      Mat4 K = element_operator(c, xb, A_, T_, 1.0, cT, opts_.degenerate, fitted);
      if (fitted) {
        const Complex kxx = xb.xx_stiffness();
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            const double sx = (kXe[a] == kXe[b]) ? 1.0 : -1.0;
            const double my = (kYe[a] == kYe[b]) ? c.hy / 3.0 : c.hy / 6.0;
            K(a, b) += sx * kxx * my;
          }
      }
      if (w2 != 0.0) K += w2 * element_mass(c, xb);
      scatter(g, c, K, trip);
    }
  return to_matrix(g, trip);
}

SparseMatrix Assembler::mass_matrix(CellRange cells) const {
  const GridSpec& g = grid();
  check_range(g, cells);
  Triplets trip;
  for (int ci = cells.begin; ci < cells.end; ++ci)
    for (int cj = 0; cj < g.ny; ++cj) {
      const CellSpec c = cell_at(g, ci, cj);
      scatter(g, c, element_mass(c, make_basis(*this, c)), trip);
    }
  return to_matrix(g, trip);
}

Assembler::Parts Assembler::gauss_parts(CellRange cells) const {
  const GridSpec& g = grid();
  check_range(g, cells);
  Triplets ta, tt, tm;
  for (int ci = cells.begin; ci < cells.end; ++ci)
    for (int cj = 0; cj < g.ny; ++cj) {
      const CellSpec c = cell_at(g, ci, cj);
      const CellXBasis xb(c.x0, c.x1);
      scatter(g, c, element_operator(c, xb, A_, T_, 1.0, 0.0, opts_.degenerate, false), ta);
      scatter(g, c, element_operator(c, xb, A_, T_, 0.0, 1.0, opts_.degenerate, false), tt);
      scatter(g, c, element_mass(c, xb), tm);
    }
  return {to_matrix(g, ta), to_matrix(g, tt), to_matrix(g, tm)};
}

CVector Assembler::load(const ComplexField& f, CellRange cells) const {
  const GridSpec& g = grid();
  require_same_grid(g, f.grid(), "load");
  check_range(g, cells);
  const auto& q = detail::gauss_unit(2);
  CVector b = CVector::Zero(g.num_dofs());
  for (int ci = cells.begin; ci < cells.end; ++ci)
    for (int cj = 0; cj < g.ny; ++cj) {
      const CellSpec c = cell_at(g, ci, cj);
      const CellXBasis xb = make_basis(*this, c);
      const double hx = c.x1 - c.x0;
      const Complex f00 = f(ci, cj), f10 = f(ci + 1, cj), f01 = f(ci, cj + 1), f11 = f(ci + 1, cj + 1);
      for (const auto& [s, ws] : q) {
        const XShape xs = xb.at(c.x0 + s * hx);
        for (const auto& [t, wt] : q) {
          const Complex fv = (1 - s) * (1 - t) * f00 + s * (1 - t) * f10 + (1 - s) * t * f01 + s * t * f11;
          const std::array<double, 2> yv = {1.0 - t, t};
          const double w = ws * wt * hx * c.hy;
          for (int k = 0; k < 4; ++k) b[local_dof(g, c, k)] -= w * fv * xs.v[kXe[k]] * yv[kYe[k]];
        }
      }
    }
  return b;
}

SystemMatrix constrain(const SparseMatrix& raw, const std::vector<int>& rows, double nu, double omega) {
  std::vector<char> mask(raw.rows(), 0);
  for (int r : rows) mask[r] = 1;
  Triplets trip;
  trip.reserve(raw.nonZeros() + rows.size());
  for (int k = 0; k < raw.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(raw, k); it; ++it)
      if (!mask[it.row()]) trip.emplace_back(it.row(), it.col(), it.value());
  for (int r = 0; r < raw.rows(); ++r)
    if (mask[r]) trip.emplace_back(r, r, 1.0);
  SystemMatrix out;
  out.matrix.resize(raw.rows(), raw.cols());
  out.matrix.setFromTriplets(trip.begin(), trip.end());
  out.matrix.makeCompressed();
  out.constrained.clear();
  for (int r = 0; r < raw.rows(); ++r)
    if (mask[r]) out.constrained.push_back(r);
  out.nu = nu;
  out.omega = omega;
  return out;
}

std::vector<int> boundary_dofs(const GridSpec& g) {
  std::vector<int> out;
  for (int j = 0; j < g.ny; ++j) out.push_back(g.dof(0, j));
  for (int j = 0; j < g.ny; ++j) out.push_back(g.dof(g.nx_cells(), j));
  return out;
}

std::vector<int> inactive_dofs(const GridSpec& g, CellRange cells) {
  std::vector<int> out;
  for (int i = 0; i < g.nx_nodes(); ++i) {
    const bool touched = i >= cells.begin && i <= cells.end && cells.end > cells.begin;
    const bool outer = i == 0 || i == g.nx_cells();
    if (!touched || outer)
      for (int j = 0; j < g.ny; ++j) out.push_back(g.dof(i, j));
  }
  return out;
}

SystemMatrix assemble_system(const GridSpec& grid, const TensorField& A, const TensorField& T,
                             const AssemblyOptions& opts) {
  require_same_grid(grid, A.grid(), "assemble_system");
  const Assembler as(A, T, opts);
  return constrain(as.operator_matrix(all_cells(grid)), boundary_dofs(grid), opts.nu, opts.omega);
}

CVector assemble_rhs(const GridSpec& grid, const ComplexField& f) {
  const TensorField I = TensorField::identity(grid);
  return assemble_rhs(Assembler(I, I, AssemblyOptions{0.0, 0.0, XRule::gauss, true}), f);
}

CVector assemble_rhs(const Assembler& assembler, const ComplexField& f) {
  CVector b = assembler.load(f, all_cells(assembler.grid()));
  for (int d : boundary_dofs(assembler.grid())) b[d] = 0.0;
  return b;
}

CVector interface_mass_apply(const CVector& g, double hy) {
  const int n = static_cast<int>(g.size());
  CVector out(n);
  for (int j = 0; j < n; ++j) out[j] = hy / 6.0 * (g[(j + n - 1) % n] + 4.0 * g[j] + g[(j + 1) % n]);
  return out;
}

CVector interface_load(const GridSpec& grid, Side side, const CVector& g) {
  if (g.size() != grid.ny) throw ConfigError("interface data has wrong length");
  const CVector mg = interface_mass_apply(g, grid.hy());
  const double sign = side == Side::p ? -1.0 : 1.0;
  CVector out = CVector::Zero(grid.num_dofs());
  for (int j = 0; j < grid.ny; ++j) out[grid.dof(grid.interface_column(), j)] = sign * mg[j];
  return out;
}

SubdomainSystem assemble_subdomain(const Assembler& assembler, Side side, const CVector* g) {
  const GridSpec& grid = assembler.grid();
  const CellRange cells = side_cells(grid, side);
  SubdomainSystem out;
  out.system = constrain(assembler.operator_matrix(cells), inactive_dofs(grid, cells), assembler.options().nu,
                         assembler.options().omega);
  out.interface_load = g ? interface_load(grid, side, *g) : CVector::Zero(grid.num_dofs());
  return out;
}

CVector singular_flux_load(const TensorField& A, const ComplexField& u_h, CellRange cells) {
  const GridSpec& g = A.grid();
  require_same_grid(g, u_h.grid(), "singular_flux_load");
  check_range(g, cells);
  const auto& qx = detail::gauss_unit(6);
  const auto& qy = detail::gauss_unit(2);
  CVector out = CVector::Zero(g.num_dofs());
  for (int ci = cells.begin; ci < cells.end; ++ci)
    for (int cj = 0; cj < g.ny; ++cj) {
      const CellSpec c = cell_at(g, ci, cj);
      const double hx = c.x1 - c.x0;
      std::array<Complex, 4> uv;
      for (int k = 0; k < 4; ++k) uv[k] = u_h(ci + kXe[k], cj + kYe[k]);
      for (const auto& [s, ws] : qx) {
        const double x = c.x0 + s * hx;
        const double xlog = x * std::log(std::abs(x));
        for (const auto& [t, wt] : qy) {
          const std::array<double, 2> xv = {1.0 - s, s}, yv = {1.0 - t, t};
          const std::array<double, 2> xd = {-1.0 / hx, 1.0 / hx}, yd = {-1.0 / c.hy, 1.0 / c.hy};
          Complex u = 0.0, ux = 0.0, uy = 0.0;
          for (int k = 0; k < 4; ++k) {
            u += uv[k] * xv[kXe[k]] * yv[kYe[k]];
            ux += uv[k] * xd[kXe[k]] * yv[kYe[k]];
            uy += uv[k] * xv[kXe[k]] * yd[kYe[k]];
          }
          // x A grad(u log|x|) = A (u + x log|x| ux, x log|x| uy)
          const Eigen::Vector2cd flux = A.interpolate(ci, cj, s, t) * Eigen::Vector2cd(u + xlog * ux, xlog * uy);
          const double w = ws * wt * hx * c.hy;
          for (int k = 0; k < 4; ++k) {
            const double gx = xd[kXe[k]] * yv[kYe[k]];
            const double gy = xv[kXe[k]] * yd[kYe[k]];
            out[local_dof(g, c, k)] += w * (gx * flux[0] + gy * flux[1]);
          }
        }
      }
    }
  return out;
}

}  // namespace lap
