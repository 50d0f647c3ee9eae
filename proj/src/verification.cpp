// SPDX-License-Identifier: Apache-2.0
#include "lap/verification.hpp"

#include <cmath>
#include <random>

#include "lap/errors.hpp"
#include "lap/oned.hpp"
#include "lap/presets.hpp"

namespace lap {

namespace {

CheckResult below(const std::string& name, double value, double threshold, std::string detail = {}) {
  return {name, value <= threshold, value, threshold, std::move(detail)};
}

CheckResult skipped(const std::string& name, const std::string& why) { return {name, true, 0.0, 0.0, "skipped: " + why}; }

bool is_real(const TensorField& m) {
  for (const Mat2& v : m.values())
    if (v.imag().norm() != 0.0) return false;
  return true;
}

CVector random_vector(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  CVector v(n);
  for (auto& x : v) x = Complex(d(rng), d(rng));
  return v;
}

}  // namespace

std::vector<CheckResult> run_property_suite(const ExperimentConfig& config) {
  std::vector<CheckResult> out;
  const GridSpec& grid = config.grid;
  const Problem pb = make_problem(config, config.nu);
  const CoercivityReport cr = validate_coefficients(pb.A, pb.T);
  out.push_back({"coefficients", true, cr.c_A, 0.0, "c_A and c_T positive"});

  {
    const InterfaceTrace t(grid.ell, random_vector(grid.ny, 7));
    const double lhs = t.coefficients().squaredNorm(), rhs = t.hy() * t.values().squaredNorm();
    out.push_back(below("parseval", std::abs(lhs - rhs) / rhs, 1e-10));
  }
  {
    const Assembler as(pb.A, pb.T, AssemblyOptions{config.nu, 0.0, XRule::gauss, true});
    const auto parts = as.gauss_parts(all_cells(grid));
    const TensorField I = TensorField::identity(grid);
    const auto lap_parts = Assembler(I, I, AssemblyOptions{0.0, 0.0, XRule::gauss, false}).gauss_parts(all_cells(grid));
    CVector v = random_vector(grid.num_dofs(), 11);
    for (int d : boundary_dofs(grid)) v[d] = 0.0;
    const SparseMatrix K = parts.stiff_A + kI * config.nu * parts.stiff_T;
    const double im = v.dot(K * v).imag();
    const double bound = std::abs(config.nu) * cr.c_T * v.dot(lap_parts.stiff_A * v).real();
    const double sgn = config.nu > 0 ? 1.0 : -1.0;
    out.push_back(below("garding", sgn * (bound - im) / std::abs(bound), 1e-12, "Im a(v,v) >= nu c_T |grad v|^2"));
  }
  const AbsorptionSolution sol = solve_absorption(pb, config.nu);
  {
    const bool real_data = is_real(pb.A) && is_real(pb.T) && pb.f.values().imag().norm() == 0.0;
    if (!real_data) {
      out.push_back(skipped("conjugation", "complex data"));
    } else {
      const AbsorptionSolution neg = solve_absorption(pb, -config.nu);
      out.push_back(below("conjugation", l2_norm(neg.u - conj(sol.u)) / std::max(l2_norm(sol.u), 1e-300), 1e-8));
    }
  }
  {
    const int branch = config.nu > 0 ? 1 : -1;
    const Decomposition d = split(sol.u, sol.g, pb.A, pb.T, sol.nu, branch);
    const RealField r = absorption_ratio(pb.A, pb.T);
    ComplexField rec(grid);
    for (int i = 0; i < grid.nx_nodes(); ++i)
      for (int j = 0; j < grid.ny; ++j)
        rec(i, j) = d.u_h(i, j) * log_factor(grid.x(i), sol.nu, r(i, j), branch) + d.u_reg(i, j);
    out.push_back(below("reconstruction", l2_norm(rec - sol.u) / std::max(l2_norm(sol.u), 1e-300), 1e-12));
  }
  {
    const ComplexField u = ComplexField::from_function(grid, [&](double x, double y) {
      return std::sin(kPi * (x + grid.a) / (2 * grid.a)) * std::cos(kPi * y / grid.ell) * Complex(1.0, 0.5);
    });
    const ComplexField j2 = bessel_potential(bessel_potential(u));
    const double lhs = std::pow(l2_norm(j2), 2);
    const double rhs = std::pow(l2_norm(u), 2) + std::pow(l2_norm(spectral_dy(u)), 2);
    out.push_back(below("bessel_identity", std::abs(lhs - rhs) / rhs, 1e-10));
  }
  {
    LimitingOptions lo{config.branch, config.tol_jump, config.limit_method};
    const LimitingSolution lim = solve_limiting(pb, lo);
    out.push_back(below("limiting_jump", lim.jump.relative, config.tol_jump));
    const GreenCheck gc = green_check(lim.decomposition, pb.f, lim.decomposition, pb.f);
    out.push_back(below("green_self", gc.residual, 1e-3));
  }
  if (config.coeff_preset == "identity" && config.coeff_file.empty() && config.rhs_file.empty() &&
      config.rhs_preset == "one" && config.omega == 0.0) {
    std::vector<double> xs;
    for (int i = 0; i < grid.nx_nodes(); ++i) xs.push_back(grid.x(i));
    const OneDSolution o = solve_1d([](double) { return 1.0; }, [](double) { return 1.0; }, config.nu, grid.a, xs);
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < grid.nx_nodes(); ++i) {
      scale = std::max(scale, std::abs(o.u[i]));
      for (int j = 0; j < grid.ny; ++j) err = std::max(err, std::abs(sol.u(i, j) - o.u[i]));
    }
    out.push_back(below("oned_oracle", err / scale, 1e-2));
  } else {
    out.push_back(skipped("oned_oracle", "needs identity coefficients and f = 1"));
  }
  return out;
}

}  // namespace lap
