// SPDX-License-Identifier: Apache-2.0
#include "lap/limiting.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <unsupported/Eigen/IterativeSolvers>

#include "lap/errors.hpp"
#include "quadrature.hpp"

namespace lap::detail {

// Matrix-free wrapper so Eigen's GMRES can run on the interface map.
class InterfaceOperator;

}  // namespace lap::detail

namespace Eigen::internal {
template <>
struct traits<lap::detail::InterfaceOperator> : public traits<Eigen::SparseMatrix<std::complex<double>>> {};
}  // namespace Eigen::internal

namespace lap::detail {

class InterfaceOperator : public Eigen::EigenBase<InterfaceOperator> {
 public:
  using Scalar = std::complex<double>;
  using RealScalar = double;
  using StorageIndex = int;
  enum { ColsAtCompileTime = Eigen::Dynamic, MaxColsAtCompileTime = Eigen::Dynamic, IsRowMajor = false };

  InterfaceOperator(int n, std::function<CVector(const CVector&)> apply) : n_(n), apply_(std::move(apply)) {}
  Eigen::Index rows() const { return n_; }
  Eigen::Index cols() const { return n_; }
  CVector apply(const CVector& x) const { return apply_(x); }

  template <typename Rhs>
  Eigen::Product<InterfaceOperator, Rhs, Eigen::AliasFreeProduct> operator*(const Eigen::MatrixBase<Rhs>& x) const {
    return Eigen::Product<InterfaceOperator, Rhs, Eigen::AliasFreeProduct>(*this, x.derived());
  }

 private:
  int n_;
  std::function<CVector(const CVector&)> apply_;
};

}  // namespace lap::detail

namespace Eigen::internal {
template <typename Rhs>
struct generic_product_impl<lap::detail::InterfaceOperator, Rhs, SparseShape, DenseShape, GemvProduct>
    : generic_product_impl_base<lap::detail::InterfaceOperator, Rhs,
                                generic_product_impl<lap::detail::InterfaceOperator, Rhs>> {
  using Scalar = typename Product<lap::detail::InterfaceOperator, Rhs>::Scalar;
  template <typename Dest>
  static void scaleAndAddTo(Dest& dst, const lap::detail::InterfaceOperator& lhs, const Rhs& rhs,
                            const Scalar& alpha) {
    dst.noalias() += alpha * lhs.apply(rhs);
  }
};
}  // namespace Eigen::internal

namespace lap {

AbsorptionSolution solve_absorption(const Problem& problem, double nu) {
  if (nu == 0.0) throw ConfigError("solve_absorption needs nu != 0; use solve_limiting for the limit");
  const GridSpec& grid = problem.grid();
  require_same_grid(grid, problem.A.grid(), "solve_absorption");
  const Assembler as(problem.A, problem.T, AssemblyOptions{nu, problem.omega, problem.rule, true});
  const SystemMatrix sys = constrain(as.operator_matrix(all_cells(grid)), boundary_dofs(grid), nu, problem.omega);
  const SolveResult res = solve(sys, assemble_rhs(as, problem.f), problem.solver);
  AbsorptionSolution out;
  out.nu = nu;
  out.u = ComplexField(grid, res.x);
  out.report = res.report;
  out.g = conormal_trace(as, out.u, problem.f, Side::p);
  return out;
}

SweepResult lap_sweep(const Problem& problem, const std::vector<double>& nu_list) {
  if (nu_list.empty()) throw ConfigError("sweep: empty nu list");
  for (std::size_t k = 0; k < nu_list.size(); ++k) {
    if (nu_list[k] == 0.0 || !std::isfinite(nu_list[k])) throw ConfigError("sweep: nu values must be finite and nonzero");
    if (k > 0 && ((nu_list[k] > 0) != (nu_list[0] > 0)))
      throw ConfigError("sweep: nu values must share one sign");
    if (k > 0 && !(std::abs(nu_list[k]) < std::abs(nu_list[k - 1])))
      throw ConfigError("sweep: nu list must be strictly decreasing in magnitude");
  }
  const int branch = nu_list[0] > 0 ? 1 : -1;
  SweepResult out;
  ComplexField prev;
  for (std::size_t k = 0; k < nu_list.size(); ++k) {
    AbsorptionSolution sol = solve_absorption(problem, nu_list[k]);
    Decomposition dec = split(sol.u, sol.g, problem.A, problem.T, sol.nu, branch);
    JumpResidual jr = jump_residual(dec);
    SweepRecord r;
    r.nu = sol.nu;
    r.l2 = l2_norm(sol.u);
    r.xgrad = weighted_norm(sol.u, 2.0).gradient;
    r.sqrtnu_grad = std::sqrt(std::abs(sol.nu)) * weighted_norm(sol.u, 0.0).gradient;
    r.g_hm12 = sobolev_norm(sol.g, -0.5);
    r.g_h12 = sobolev_norm(sol.g, 0.5);
    r.jump_res = jr.relative;
    r.cauchy = k == 0 ? 0.0 : l2_norm(sol.u - prev);
    out.records.push_back(r);
    prev = sol.u;
    if (k + 1 == nu_list.size()) {
      out.last = std::move(sol);
      out.last_split = std::move(dec);
      out.last_jump = std::move(jr);
    }
  }
  return out;
}

namespace {

// Pieces of the limit problem for one interface datum g.
struct LimitPieces {
  ComplexField u_h;
  CVector reg_p;
  CVector reg_n;
  CVector J;
};

class LimitMap {
 public:
  LimitMap(const Problem& pb, int branch)
      : pb_(pb), grid_(pb.grid()), branch_(branch), harmonic_(pb.A),
        sub_(pb.A, pb.T, AssemblyOptions{0.0, pb.omega, XRule::gauss, true}) {
    for (Side s : {Side::p, Side::n}) {
      const CellRange cells = side_cells(grid_, s);
      const SystemMatrix sys = constrain(sub_.operator_matrix(cells), inactive_dofs(grid_, cells), 0.0, pb.omega);
      SideData d;
      d.cells = cells;
      d.constrained = sys.constrained;
      d.lu = std::make_unique<Factorization>(sys, pb.solver.tolerance);
      d.load = sub_.load(pb.f, cells);
      side_[s == Side::p ? 0 : 1] = std::move(d);
    }
  }

  LimitPieces evaluate(const CVector& g) {
    ++evaluations_;
    const InterfaceTrace gt(grid_.ell, g);
    LimitPieces out;
    out.u_h = harmonic_.solve(gt);
    for (Side s : {Side::p, Side::n}) {
      SideData& d = side_[s == Side::p ? 0 : 1];
      CVector rhs = d.load - singular_flux_load(pb_.A, out.u_h, d.cells) + interface_load(grid_, s, g);
      if (pb_.omega != 0.0) rhs -= pb_.omega * pb_.omega * singular_mass_load(out.u_h, d.cells);
      for (int r : d.constrained) rhs[r] = 0.0;
      (s == Side::p ? out.reg_p : out.reg_n) = d.lu->solve(rhs);
    }
    out.J.resize(grid_.ny);
    const RVector& a11 = harmonic_.a11();
    for (int j = 0; j < grid_.ny; ++j) {
      const int dof = grid_.dof(grid_.interface_column(), j);
      out.J[j] = out.reg_p[dof] - out.reg_n[dof] + kI * kPi * static_cast<double>(branch_) * g[j] / a11[j];
    }
    return out;
  }

  int evaluations() const { return evaluations_; }
  const RVector& a11() const { return harmonic_.a11(); }

 private:
  struct SideData {
    CellRange cells;
    std::vector<int> constrained;
    std::unique_ptr<Factorization> lu;
    CVector load;
  };

  // integral u_h log|x| phi_k, for the omega^2 term.
  CVector singular_mass_load(const ComplexField& u_h, CellRange cells) const {
    const auto& qx = detail::gauss_unit(6);
    const auto& qy = detail::gauss_unit(2);
    CVector out = CVector::Zero(grid_.num_dofs());
    for (int ci = cells.begin; ci < cells.end; ++ci)
      for (int cj = 0; cj < grid_.ny; ++cj) {
        const double x0 = grid_.x(ci), hx = grid_.x(ci + 1) - x0, hy = grid_.hy();
        for (const auto& [s, ws] : qx)
          for (const auto& [t, wt] : qy) {
            const std::array<double, 4> phi = {(1 - s) * (1 - t), s * (1 - t), (1 - s) * t, s * t};
            const std::array<int, 4> dofs = {grid_.dof(ci, cj), grid_.dof(ci + 1, cj), grid_.dof(ci, cj + 1),
                                             grid_.dof(ci + 1, cj + 1)};
            Complex u = 0.0;
            for (int k = 0; k < 4; ++k) u += phi[k] * u_h.values()[dofs[k]];
            const double w = ws * wt * hx * hy * std::log(std::abs(x0 + s * hx));
            for (int k = 0; k < 4; ++k) out[dofs[k]] += w * u * phi[k];
          }
      }
    return out;
  }

  const Problem& pb_;
  GridSpec grid_;
  int branch_;
  HarmonicSolver harmonic_;
  Assembler sub_;
  std::array<SideData, 2> side_;
  int evaluations_ = 0;
};

}  // namespace

LimitingSolution solve_limiting(const Problem& problem, const LimitingOptions& opts) {
  if (opts.branch != 1 && opts.branch != -1) throw ConfigError("limiting: branch must be +1 or -1");
  const GridSpec& grid = problem.grid();
  require_same_grid(grid, problem.A.grid(), "solve_limiting");
  LimitMap map(problem, opts.branch);
  const int n = grid.ny;
  const LimitPieces base = map.evaluate(CVector::Zero(n));
  LimitingSolution out;
  CVector g;
  const bool krylov = opts.method == InterfaceMethod::krylov || (opts.method == InterfaceMethod::automatic && n > 512);
  if (!krylov) {
    // Columns of the linear part in the Fourier basis.
    Eigen::MatrixXcd E(n, n), L(n, n);
    for (int k = 0; k < n; ++k) {
      CVector unit = CVector::Zero(n);
      unit[k] = 1.0;
      E.col(k) = InterfaceTrace::from_coefficients(grid.ell, unit).values();
      L.col(k) = map.evaluate(E.col(k)).J - base.J;
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(L);
    out.rcond = lu.rcond();
    if (!(out.rcond > 1e-13)) {
      std::ostringstream msg;
      msg << "limiting: interface matrix is singular (rcond " << out.rcond << "); the limit may not be unique";
      throw SolverError(msg.str());
    }
    g = E * lu.solve(-base.J);
    out.method = "probing";
  } else {
    detail::InterfaceOperator op(n, [&](const CVector& x) { return CVector(map.evaluate(x).J - base.J); });
    Eigen::GMRES<detail::InterfaceOperator, Eigen::IdentityPreconditioner> gmres;
    gmres.set_restart(std::min(n, 200));
    gmres.setMaxIterations(4 * n);
    gmres.setTolerance(1e-13);
    gmres.compute(op);
    g = base.J.norm() == 0.0 ? CVector(CVector::Zero(n)) : CVector(gmres.solve(-base.J));
    if (!g.allFinite()) throw SolverError("limiting: Krylov interface solve diverged");
    out.method = "krylov";
  }

  const LimitPieces fin = map.evaluate(g);
  out.interface_evaluations = map.evaluations();
  out.g = InterfaceTrace(grid.ell, g);
  Decomposition& d = out.decomposition;
  d.kind = SplitKind::zero_absorption;
  d.nu = 0.0;
  d.branch = opts.branch;
  d.g = out.g;
  d.a11 = map.a11();
  d.u_h = fin.u_h;
  d.u_reg = ComplexField(grid);
  out.u = ComplexField(grid);
  const int c = grid.interface_column();
  CVector tp(n), tn(n);
  for (int j = 0; j < n; ++j) {
    tp[j] = fin.reg_p[grid.dof(c, j)];
    tn[j] = fin.reg_n[grid.dof(c, j)];
  }
  d.trace_p = InterfaceTrace(grid.ell, tp);
  d.trace_n = InterfaceTrace(grid.ell, tn);
  for (int i = 0; i < grid.nx_nodes(); ++i) {
    if (i == c) continue;
    const double lx = std::log(std::abs(grid.x(i)));
    const CVector& reg = i > c ? fin.reg_p : fin.reg_n;
    for (int j = 0; j < n; ++j) {
      d.u_reg(i, j) = reg[grid.dof(i, j)];
      out.u(i, j) = d.u_h(i, j) * lx + d.u_reg(i, j);
    }
  }
  out.jump = jump_residual(d);
  const double rel = out.jump.relative;
  if (!(rel <= opts.tol_jump)) {
    std::ostringstream msg;
    msg << "limiting: jump residual " << rel << " exceeds tolerance " << opts.tol_jump;
    throw SolverError(msg.str());
  }
  return out;
}

namespace {

// integral over [0, 1] of q(xi) log(|e| xi) with q the quadratic through xi = 0, 1/2, 1.
double log_quadratic(const std::array<double, 3>& v, double e) {
  const double c0 = v[0];
  const double c1 = -3.0 * v[0] + 4.0 * v[1] - v[2];
  const double c2 = 2.0 * v[0] - 4.0 * v[1] + 2.0 * v[2];
  const double le = std::log(std::abs(e));
  double s = 0.0;
  const std::array<double, 3> c = {c0, c1, c2};
  for (int k = 0; k < 3; ++k) s += c[k] * (le / (k + 1.0) - 1.0 / ((k + 1.0) * (k + 1.0)));
  return s;
}

}  // namespace

Complex singular_inner(const ComplexField& f, const Decomposition& v) {
  if (v.kind != SplitKind::zero_absorption) throw ConfigError("singular_inner needs a zero-absorption split");
  const GridSpec& g = f.grid();
  require_same_grid(g, v.u_h.grid(), "singular_inner");
  const int c = g.interface_column();
  const InterfaceTrace tp = trace_of_regular(v, Side::p), tn = trace_of_regular(v, Side::n);
  const auto& q2 = detail::gauss_unit(2);
  const auto& q4 = detail::gauss_unit(4);
  Complex sum = 0.0;
  for (int ci = 0; ci < g.nx_cells(); ++ci) {
    const double x0 = g.x(ci), x1 = g.x(ci + 1), hx = x1 - x0, hy = g.hy();
    const bool touches = (ci == c || ci + 1 == c);
    for (int cj = 0; cj < g.ny; ++cj) {
      std::array<Complex, 4> fv, hv, rv;
      const std::array<int, 4> is = {ci, ci + 1, ci, ci + 1}, js = {cj, cj, cj + 1, cj + 1};
      for (int k = 0; k < 4; ++k) {
        fv[k] = f(is[k], js[k]);
        hv[k] = v.u_h(is[k], js[k]);
        if (is[k] == c) {
          rv[k] = (ci == c ? tp : tn).values()[js[k] % g.ny];
        } else {
          rv[k] = v.u_reg(is[k], js[k]);
        }
      }
      auto interp = [](const std::array<Complex, 4>& a, double s, double t) {
        return (1 - s) * (1 - t) * a[0] + s * (1 - t) * a[1] + (1 - s) * t * a[2] + s * t * a[3];
      };
      for (const auto& [t, wt] : q2) {
        for (const auto& [s, ws] : q2) sum += ws * wt * hx * hy * interp(fv, s, t) * std::conj(interp(rv, s, t));
        if (touches) {
          const double e = (x0 == 0.0) ? x1 : x0;
          std::array<double, 3> re, im;
          for (int k = 0; k < 3; ++k) {
            const double xi = 0.5 * k;
            const double s = (x0 == 0.0) ? xi : 1.0 - xi;
            const Complex p = interp(fv, s, t) * std::conj(interp(hv, s, t));
            re[k] = p.real();
            im[k] = p.imag();
          }
          sum += wt * hy * std::abs(e) * Complex(log_quadratic(re, e), log_quadratic(im, e));
        } else {
          for (const auto& [s, ws] : q4) {
            const double lx = std::log(std::abs(x0 + s * hx));
            sum += ws * wt * hx * hy * lx * interp(fv, s, t) * std::conj(interp(hv, s, t));
          }
        }
      }
    }
  }
  return sum;
}

GreenCheck green_check(const Decomposition& u, const ComplexField& f_u, const Decomposition& v,
                       const ComplexField& f_v) {
  GreenCheck out;
  out.lhs = singular_inner(f_u, v) - std::conj(singular_inner(f_v, u));
  const InterfaceTrace ju = trace_of_regular(u, Side::p) - trace_of_regular(u, Side::n);
  const InterfaceTrace jv = trace_of_regular(v, Side::p) - trace_of_regular(v, Side::n);
  // pairings of the piecewise-linear interpolants: consistent interface mass
  const double hy = ju.hy();
  const Complex guv = jv.values().dot(interface_mass_apply(u.g.values(), hy));  // int g_u conj(jv)
  const Complex gvu = ju.values().dot(interface_mass_apply(v.g.values(), hy));
  out.rhs = -guv + std::conj(gvu);
  const double scale = std::max(std::abs(out.lhs), std::abs(out.rhs));
  out.residual = scale > 0.0 ? std::abs(out.lhs - out.rhs) / scale : 0.0;
  return out;
}

}  // namespace lap
