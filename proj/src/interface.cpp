// SPDX-License-Identifier: Apache-2.0
#include "lap/interface.hpp"

#include <array>
#include <cmath>
#include <unsupported/Eigen/FFT>
#include <vector>

#include "lap/errors.hpp"
#include "quadrature.hpp"

namespace lap {

namespace {

std::vector<Complex> to_std(const CVector& v) { return std::vector<Complex>(v.data(), v.data() + v.size()); }

CVector from_std(const std::vector<Complex>& v) {
  return Eigen::Map<const CVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Nodal values -> coefficients ordered by m = -n/2 .. n/2-1.
CVector analyze(const CVector& values, double ell) {
  const int n = static_cast<int>(values.size());
  Eigen::FFT<double> fft;
  std::vector<Complex> out;
  fft.fwd(out, to_std(values));
  const double scale = 2.0 * ell / n / std::sqrt(2.0 * ell);
  CVector c(n);
  for (int k = 0; k < n; ++k) {
    const int m = k - n / 2;
    const int idx = ((m % n) + n) % n;
    c[k] = scale * ((m % 2 == 0) ? 1.0 : -1.0) * out[idx];
  }
  return c;
}

CVector synthesize(const CVector& coeffs, double ell) {
  const int n = static_cast<int>(coeffs.size());
  std::vector<Complex> y(n);
  for (int k = 0; k < n; ++k) {
    const int m = k - n / 2;
    y[((m % n) + n) % n] = ((m % 2 == 0) ? 1.0 : -1.0) * coeffs[k];
  }
  Eigen::FFT<double> fft;
  std::vector<Complex> out;
  fft.inv(out, y);
  return from_std(out) * (n / std::sqrt(2.0 * ell));
}

void check_trace(const InterfaceTrace& t) {
  if (t.size() < 2 || t.size() % 2 != 0) throw ConfigError("interface trace must have an even number of samples");
}

}  // namespace

InterfaceTrace::InterfaceTrace(double ell, CVector values) : ell_(ell), values_(std::move(values)) {
  if (!(ell > 0.0)) throw ConfigError("interface trace: ell must be positive");
  check_trace(*this);
}

InterfaceTrace InterfaceTrace::from_function(const GridSpec& grid, const std::function<Complex(double)>& fn) {
  CVector v(grid.ny);
  for (int j = 0; j < grid.ny; ++j) v[j] = fn(grid.y(j));
  return InterfaceTrace(grid.ell, v);
}

InterfaceTrace InterfaceTrace::from_coefficients(double ell, const CVector& coeffs) {
  return InterfaceTrace(ell, synthesize(coeffs, ell));
}

CVector InterfaceTrace::coefficients() const { return analyze(values_, ell_); }

double InterfaceTrace::eigenvalue(int k) const { return kPi * std::abs(mode(k)) / ell_; }

double InterfaceTrace::l2_norm() const { return std::sqrt(hy() * values_.squaredNorm()); }

InterfaceTrace operator-(const InterfaceTrace& a, const InterfaceTrace& b) {
  return InterfaceTrace(a.ell(), a.values() - b.values());
}
InterfaceTrace operator+(const InterfaceTrace& a, const InterfaceTrace& b) {
  return InterfaceTrace(a.ell(), a.values() + b.values());
}
InterfaceTrace operator*(Complex s, const InterfaceTrace& a) { return InterfaceTrace(a.ell(), s * a.values()); }

InterfaceTrace dirichlet_trace(const ComplexField& u, int column) {
  const GridSpec& g = u.grid();
  if (column < 0) column = g.interface_column();
  if (column >= g.nx_nodes()) throw ConfigError("trace column out of range");
  CVector v(g.ny);
  for (int j = 0; j < g.ny; ++j) v[j] = u(column, j);
  return InterfaceTrace(g.ell, v);
}

CVector interface_mass_solve(const CVector& r, double hy) {
  const int n = static_cast<int>(r.size());
  Eigen::FFT<double> fft;
  std::vector<Complex> modes;
  fft.fwd(modes, to_std(r));
  for (int k = 0; k < n; ++k) modes[k] /= hy / 6.0 * (4.0 + 2.0 * std::cos(2.0 * kPi * k / n));
  std::vector<Complex> out;
  fft.inv(out, modes);
  return from_std(out);
}

InterfaceTrace conormal_trace(const Assembler& assembler, const ComplexField& u, const ComplexField& f, Side side) {
  const GridSpec& g = assembler.grid();
  require_same_grid(g, u.grid(), "conormal_trace");
  const CellRange cells = side_cells(g, side);
  const CVector r = assembler.operator_matrix(cells) * u.values() - assembler.load(f, cells);
  CVector rs(g.ny);
  for (int j = 0; j < g.ny; ++j) rs[j] = r[g.dof(g.interface_column(), j)];
  const double sign = side == Side::p ? -1.0 : 1.0;
  return InterfaceTrace(g.ell, sign * interface_mass_solve(rs, g.hy()));
}

InterfaceTrace conormal_trace(const ComplexField& u, const ComplexField& f, Side side, const TensorField& A,
                              const TensorField& T, double nu, double omega, XRule rule) {
  return conormal_trace(Assembler(A, T, AssemblyOptions{nu, omega, rule, true}), u, f, side);
}

double sobolev_norm(const InterfaceTrace& t, double s) {
  const CVector c = t.coefficients();
  double sum = 0.0;
  for (int k = 0; k < t.size(); ++k) {
    const double lam = t.eigenvalue(k);
    sum += std::pow(1.0 + lam * lam, s) * std::norm(c[k]);
  }
  return std::sqrt(sum);
}

namespace {

InterfaceTrace filter(const InterfaceTrace& t, double w, bool keep_low) {
  CVector c = t.coefficients();
  for (int k = 0; k < t.size(); ++k) {
    const bool low = t.eigenvalue(k) < w;
    if (low != keep_low) c[k] = 0.0;
  }
  return InterfaceTrace::from_coefficients(t.ell(), c);
}

}  // namespace

InterfaceTrace lowpass(const InterfaceTrace& t, double w) { return filter(t, w, true); }
InterfaceTrace highpass(const InterfaceTrace& t, double w) { return filter(t, w, false); }

ComplexField harmonic_lifting(const InterfaceTrace& t, double delta, const GridSpec& grid) {
  if (t.size() != grid.ny || std::abs(t.ell() - grid.ell) > 1e-14 * grid.ell)
    throw ConfigError("harmonic_lifting: trace does not match grid");
  if (!(delta > 0.0 && delta < grid.a)) throw ConfigError("harmonic_lifting: delta must lie in (0, a)");
  const CVector c = t.coefficients();
  ComplexField out(grid);
  for (int i = grid.interface_column(); i < grid.nx_nodes(); ++i) {
    const double x = grid.x(i);
    if (x >= delta) continue;
    CVector cx(t.size());
    for (int k = 0; k < t.size(); ++k) {
      const double lam = t.eigenvalue(k);
      double factor;
      if (lam == 0.0) {
        factor = 1.0 - x / delta;
      } else {
        // sinh(lam (delta - x)) / sinh(lam delta), written to avoid overflow
        factor = std::exp(-lam * x) * (-std::expm1(-2.0 * lam * (delta - x))) / (-std::expm1(-2.0 * lam * delta));
      }
      cx[k] = factor * c[k];
    }
    const CVector col = synthesize(cx, t.ell());
    for (int j = 0; j < grid.ny; ++j) out(i, j) = col[j];
  }
  return out;
}

namespace {

struct CellIntegrals {
  double grad = 0.0;
  double mass = 0.0;
};

// integral over the cell of |x|^delta |grad u|^2 and of |x|^mass_delta |u|^2.
CellIntegrals cell_integrals(const ComplexField& u, int ci, int cj, double delta, double mass_delta) {
  const GridSpec& g = u.grid();
  const double x0 = g.x(ci), x1 = g.x(ci + 1), hx = x1 - x0, hy = g.hy();
  const Complex u00 = u(ci, cj), u10 = u(ci + 1, cj), u01 = u(ci, cj + 1), u11 = u(ci + 1, cj + 1);
  // |grad u|^2 and |u|^2 at local (s, t)
  auto integrands = [&](double s, double t) {
    const Complex val = (1 - s) * (1 - t) * u00 + s * (1 - t) * u10 + (1 - s) * t * u01 + s * t * u11;
    const Complex ux = ((1 - t) * (u10 - u00) + t * (u11 - u01)) / hx;
    const Complex uy = ((1 - s) * (u01 - u00) + s * (u11 - u10)) / hy;
    return std::pair<double, double>(std::norm(ux) + std::norm(uy), std::norm(val));
  };
  const auto& qy = detail::gauss_unit(2);
  CellIntegrals out;
  const bool touches = (x0 == 0.0 || x1 == 0.0);
  if (touches) {
    // x = e * xi with xi in [0, 1] measured from the x = 0 end.
    const double e = (x0 == 0.0) ? x1 : x0;
    const double ae = std::abs(e);
    for (const auto& [t, wt] : qy) {
      std::array<double, 3> gv, mv;
      for (int k = 0; k < 3; ++k) {
        const double xi = 0.5 * k;
        const double s = (x0 == 0.0) ? xi : 1.0 - xi;
        const auto [gr, ms] = integrands(s, t);
        gv[k] = gr;
        mv[k] = ms;
      }
      auto moment = [](const std::array<double, 3>& v, double p) {
        // quadratic through xi = 0, 1/2, 1 integrated against xi^p
        const double c0 = v[0];
        const double c1 = -3.0 * v[0] + 4.0 * v[1] - v[2];
        const double c2 = 2.0 * v[0] - 4.0 * v[1] + 2.0 * v[2];
        return c0 / (p + 1.0) + c1 / (p + 2.0) + c2 / (p + 3.0);
      };
      out.grad += wt * hy * std::pow(ae, delta + 1.0) * moment(gv, delta);
      out.mass += wt * hy * std::pow(ae, mass_delta + 1.0) * moment(mv, mass_delta);
    }
    return out;
  }
  const auto& qx = detail::gauss_unit(4);
  for (const auto& [s, ws] : qx) {
    const double ax = std::abs(x0 + s * hx);
    const double wg = std::pow(ax, delta), wm = std::pow(ax, mass_delta);
    for (const auto& [t, wt] : qy) {
      const auto [gr, ms] = integrands(s, t);
      out.grad += ws * wt * hx * hy * wg * gr;
      out.mass += ws * wt * hx * hy * wm * ms;
    }
  }
  return out;
}

CellIntegrals integrate(const ComplexField& u, double delta, double mass_delta, const WeightOptions& opts) {
  const GridSpec& g = u.grid();
  CellIntegrals sum;
  for (int ci = 0; ci < g.nx_cells(); ++ci) {
    const double x0 = g.x(ci), x1 = g.x(ci + 1);
    if (opts.region == Region::p && x0 < 0.0) continue;
    if (opts.region == Region::n && x1 > 0.0) continue;
    const bool touches = (x0 == 0.0 || x1 == 0.0);
    if (touches && opts.skip_interface_cells) continue;
    if (touches && (delta <= -1.0 || mass_delta <= -1.0))
      throw ConfigError("weighted norm: weight not integrable at x = 0");
    for (int cj = 0; cj < g.ny; ++cj) {
      const CellIntegrals c = cell_integrals(u, ci, cj, delta, mass_delta);
      sum.grad += c.grad;
      sum.mass += c.mass;
    }
  }
  return sum;
}

}  // namespace

WeightedNorms weighted_norm(const ComplexField& u, double delta, const WeightOptions& opts) {
  const CellIntegrals c = integrate(u, delta, 0.0, opts);
  return {std::sqrt(c.grad), std::sqrt(c.mass), std::sqrt(c.grad + c.mass)};
}

double weighted_l2(const ComplexField& u, double delta, const WeightOptions& opts) {
  return std::sqrt(integrate(u, 0.0, delta, opts).mass);
}

double hardy_ratio(const ComplexField& u, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw ConfigError("hardy_ratio: eps must lie in (0, 1/2)");
  const WeightOptions p{Region::p, false};
  return weighted_l2(u, -1.0 + 2.0 * eps, p) / weighted_norm(u, 1.0, p).combined;
}

ComplexField apply_y_symbol(const ComplexField& u, const std::function<Complex(int, double)>& symbol) {
  const GridSpec& g = u.grid();
  ComplexField out(g);
  for (int i = 0; i < g.nx_nodes(); ++i) {
    const InterfaceTrace row = dirichlet_trace(u, i);
    CVector c = row.coefficients();
    for (int k = 0; k < g.ny; ++k) c[k] *= symbol(row.mode(k), row.eigenvalue(k));
    const CVector v = synthesize(c, g.ell);
    for (int j = 0; j < g.ny; ++j) out(i, j) = v[j];
  }
  return out;
}

ComplexField bessel_potential(const ComplexField& u) {
  return apply_y_symbol(u, [](int, double lam) { return Complex(std::pow(1.0 + lam * lam, 0.25)); });
}

ComplexField spectral_dy(const ComplexField& u) {
  const double ell = u.grid().ell;
  return apply_y_symbol(u, [ell](int m, double) { return kI * (kPi * m / ell); });
}

}  // namespace lap
