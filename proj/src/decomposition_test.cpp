// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "lap/decomposition.hpp"
#include "lap/errors.hpp"
#include "lap/limiting.hpp"
#include "lap/presets.hpp"

using namespace lap;

namespace {

ComplexField random_field(const GridSpec& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  ComplexField u(g);
  for (auto& e : u.values()) e = Complex(nd(rng), nd(rng));
  return u;
}

}  // namespace

TEST_SUITE("decomposition") {
  TEST_CASE("harmonic extension: zero and constant data") {
    GridSpec g = build_grid(1.0, 1.0, 8, 8);
    TensorField I = TensorField::identity(g);
    CHECK(l2_norm(solve_harmonic(InterfaceTrace(1.0, CVector::Zero(8)), I)) == 0.0);
    const Complex c(0.5, -2.0);
    ComplexField uh = solve_harmonic(InterfaceTrace(1.0, CVector::Constant(8, c)), I);
    for (int i = 0; i < g.nx_nodes(); ++i)
      for (int j = 0; j < g.ny; ++j) CHECK(std::abs(uh(i, j) - c * (1.0 - std::abs(g.x(i)))) < 1e-12);
    // the trace is g / A11
    Mat2 a = Mat2::Identity();
    a(0, 0) = 2.0;
    ComplexField uh2 = solve_harmonic(InterfaceTrace(1.0, CVector::Constant(8, c)), TensorField::constant(g, a));
    CHECK((dirichlet_trace(uh2).values() - CVector::Constant(8, c / 2.0)).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("harmonic extension of one Fourier mode is the sinh profile") {
    // two-point problem u'' = pi^2 u, u(0) = 1, u(+-a) = 0 per mode
    double prev = 0.0;
    for (int n : {16, 32}) {
      GridSpec g = build_grid(1.0, 1.0, n, 2 * n);
      InterfaceTrace c = InterfaceTrace::from_function(g, [](double y) { return Complex(std::cos(kPi * y)); });
      ComplexField uh = solve_harmonic(c, TensorField::identity(g));
      double err = 0.0;
      for (int i = 0; i < g.nx_nodes(); ++i)
        for (int j = 0; j < g.ny; ++j) {
          const double ex = std::sinh(kPi * (1.0 - std::abs(g.x(i)))) / std::sinh(kPi) * std::cos(kPi * g.y(j));
          err = std::max(err, std::abs(uh(i, j) - ex));
        }
      CHECK(err < 1e-2);
      if (prev > 0.0) CHECK(prev / err > 3.5);
      prev = err;
    }
  }

  TEST_CASE("split with g = 0 is the identity") {
    GridSpec g = build_grid(1.0, 1.0, 6, 8);
    ComplexField u = random_field(g, 1);
    TensorField I = TensorField::identity(g);
    for (double nu : {0.0, 0.01}) {
      Decomposition d = split(u, InterfaceTrace(1.0, CVector::Zero(8)), I, I, nu, 1);
      CHECK(l2_norm(d.u_h) == 0.0);
      CHECK(l2_norm(d.u_reg - u, {Region::all, true}) == 0.0);
    }
  }

  TEST_CASE("reconstruction off the interface line") {
    GridSpec g = build_grid(1.0, 1.0, 6, 8);
    CoefficientPair c = coefficient_preset("smooth", g);
    ComplexField u = random_field(g, 2);
    InterfaceTrace gt(1.0, random_field(g, 3).values().head(8));
    RealField r = absorption_ratio(c.A, c.T);
    for (double nu : {0.0, 0.02, -0.02}) {
      const int branch = nu < 0 ? -1 : 1;
      Decomposition d = split(u, gt, c.A, c.T, nu, branch);
      CHECK(d.kind == (nu == 0.0 ? SplitKind::zero_absorption : SplitKind::absorbed));
      double worst = 0.0;
      for (int i = 0; i < g.nx_nodes(); ++i) {
        if (i == g.nx_half) continue;
        for (int j = 0; j < g.ny; ++j) {
          const Complex back = d.u_h(i, j) * log_factor(g.x(i), nu, r(i, j), branch) + d.u_reg(i, j);
          worst = std::max(worst, std::abs(back - u(i, j)));
        }
      }
      CHECK(worst < 1e-13);
    }
    CHECK_THROWS_AS(split(u, gt, c.A, c.T, 0.1, 0), ConfigError);
  }

  TEST_CASE("absorption ratio of identity tensors and log branches") {
    GridSpec g = build_grid(1.0, 1.0, 6, 8);
    RealField r = absorption_ratio(TensorField::identity(g), TensorField::identity(g));
    CHECK((r.values().array() == 1.0).all());
    for (int i = 0; i < g.nx_nodes(); ++i) {
      const double x = g.x(i);
      for (double nu : {0.1, 1e-3}) {
        const double ip = log_factor(x, nu, 1.0, 1).imag(), im = log_factor(x, nu, 1.0, -1).imag();
        CHECK(ip > 0.0);
        CHECK(ip < kPi);
        CHECK(im < 0.0);
        CHECK(im > -kPi);
        // the branch sign overrides the sign of nu
        CHECK(log_factor(x, -nu, 1.0, 1) == log_factor(x, nu, 1.0, 1));
      }
      if (x != 0.0) CHECK(log_factor(x, 0.0, 1.0, 1) == Complex(std::log(std::abs(x))));
    }
  }

  TEST_CASE("trace extrapolation") {
    GridSpec g = build_grid(1.0, 1.0, 8, 8);
    TensorField I = TensorField::identity(g);
    // quadratic regular parts with different one-sided values are recovered exactly
    ComplexField u = ComplexField::from_function(g, [](double x, double y) {
      return x > 0 ? Complex(1.0 + 2.0 * x - 3.0 * x * x, y) : Complex(-1.0 + x + x * x, 0.5);
    });
    Decomposition d = split(u, InterfaceTrace(1.0, CVector::Zero(8)), I, I, 0.0, 1);
    InterfaceTrace tp = trace_of_regular(d, Side::p), tn = trace_of_regular(d, Side::n);
    for (int j = 0; j < g.ny; ++j) {
      CHECK(std::abs(tp.values()[j] - Complex(1.0, g.y(j))) < 1e-12);
      CHECK(std::abs(tn.values()[j] - Complex(-1.0, 0.5)) < 1e-12);
    }
    // x log|x| contamination: error decreases under refinement
    double prev = 0.0;
    for (int n : {8, 16, 32, 64}) {
      GridSpec h = build_grid(1.0, 1.0, n, 4);
      TensorField Ih = TensorField::identity(h);
      ComplexField v = ComplexField::from_function(h, [](double x, double) {
        return x == 0.0 ? Complex(0.0) : Complex(2.0 + x * std::log(std::abs(x)));
      });
      Decomposition dv = split(v, InterfaceTrace(1.0, CVector::Zero(4)), Ih, Ih, 0.0, 1);
      const double err = std::abs(trace_of_regular(dv, Side::p).values()[0] - 2.0);
      if (prev > 0.0) CHECK(err < prev);
      prev = err;
    }
    CHECK(prev < 0.05);
    GridSpec coarse = build_grid(1.0, 1.0, 2, 4);
    TensorField Ic = TensorField::identity(coarse);
    Decomposition dc = split(ComplexField(coarse), InterfaceTrace(1.0, CVector::Zero(4)), Ic, Ic, 0.0, 1);
    CHECK_THROWS_AS(trace_of_regular(dc, Side::p), ConfigError);
  }

  TEST_CASE("jump residual of a continuous field with g = 0") {
    GridSpec g = build_grid(1.0, 1.0, 16, 8);
    TensorField I = TensorField::identity(g);
    ComplexField u = ComplexField::from_function(g, [](double x, double y) {
      return Complex((1.0 - x * x) * std::cos(kPi * y), x);
    });
    JumpResidual jr = jump_residual(split(u, InterfaceTrace(1.0, CVector::Zero(8)), I, I, 0.0, 1));
    CHECK(jr.l2 < 1e-12);
    CHECK(jr.h12 < 1e-12);
  }

  TEST_CASE("1D data: u_h tends to -2i/pi (1 - |x|)") {
    GridSpec g = build_grid(1.0, 1.0, 64, 8);
    Problem pb{TensorField::identity(g), TensorField::identity(g), rhs_preset("one", g)};
    AbsorptionSolution s = solve_absorption(pb, 1e-3);
    Decomposition d = split(s.u, s.g, pb.A, pb.T, 1e-3, 1);
    const Complex want = -2.0 * kI / kPi;
    for (int i = 0; i < g.nx_nodes(); i += 8)
      CHECK(std::abs(d.u_h(i, 3) - want * (1.0 - std::abs(g.x(i)))) < 0.01);
    JumpResidual jr = jump_residual(d);
    CHECK(std::abs(jr.jump.values()[0] - Complex(-2.0)) < 0.06);
    CHECK(jr.relative < 0.05);
    // mirrored run: jump and g conjugate
    AbsorptionSolution sm = solve_absorption(pb, -1e-3);
    JumpResidual jm = jump_residual(split(sm.u, sm.g, pb.A, pb.T, -1e-3, -1));
    CHECK((jm.jump.values() - jr.jump.values().conjugate()).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((sm.g.values() - s.g.values().conjugate()).cwiseAbs().maxCoeff() < 1e-8);
  }
}
