// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "lap/errors.hpp"
#include "lap/interface.hpp"
#include "lap/limiting.hpp"
#include "lap/presets.hpp"

using namespace lap;

namespace {

InterfaceTrace random_trace(int ny, double ell, unsigned seed, bool real = false) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  CVector v(ny);
  for (auto& e : v) e = real ? Complex(nd(rng), 0.0) : Complex(nd(rng), nd(rng));
  return InterfaceTrace(ell, v);
}

}  // namespace

TEST_SUITE("interface") {
  TEST_CASE("Dirichlet traces") {
    GridSpec g = build_grid(1.0, 1.0, 4, 8);
    ComplexField one = ComplexField::from_function(g, [](double, double) { return Complex(1.0); });
    CHECK((dirichlet_trace(one).values().array() == Complex(1.0)).all());
    ComplexField x = ComplexField::from_function(g, [](double x, double) { return Complex(x); });
    CHECK(dirichlet_trace(x).values().cwiseAbs().maxCoeff() == 0.0);
    auto q = [](double y) { return std::cos(kPi * y) + 2.0; };
    ComplexField sep = ComplexField::from_function(g, [&](double x, double y) { return Complex((1.0 + x) * q(y)); });
    InterfaceTrace t = dirichlet_trace(sep, 6);
    for (int j = 0; j < g.ny; ++j) CHECK(std::abs(t.values()[j] - (1.0 + g.x(6)) * q(g.y(j))) < 1e-15);
    CHECK_THROWS_AS(dirichlet_trace(sep, g.nx_nodes()), ConfigError);
  }

  TEST_CASE("Parseval and conjugate symmetry") {
    for (int ny : {4, 16, 64, 250}) {
      InterfaceTrace t = random_trace(ny, 1.7, ny);
      const double a = t.coefficients().squaredNorm(), b = t.l2_norm() * t.l2_norm();
      CHECK(std::abs(a - b) <= 1e-10 * b);
      CHECK(std::abs(sobolev_norm(t, 0.0) - t.l2_norm()) <= 1e-10 * t.l2_norm());
      InterfaceTrace r = random_trace(ny, 1.7, ny + 1, true);
      CVector c = r.coefficients();
      for (int k = 1; k < ny; ++k) {
        const int m = r.mode(k);
        if (m == 0) continue;
        const int kk = ny / 2 - m;  // position of -m
        CHECK(std::abs(c[k] - std::conj(c[kk])) < 1e-12 * c.norm());
      }
      // round trip through the coefficients
      InterfaceTrace back = InterfaceTrace::from_coefficients(1.7, t.coefficients());
      CHECK((back.values() - t.values()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("closed-form Sobolev norms") {
    GridSpec g = build_grid(1.0, kPi, 4, 16);
    InterfaceTrace one = InterfaceTrace::from_function(g, [](double) { return Complex(1.0); });
    CHECK(sobolev_norm(one, 0.5) == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-12));
    for (double ell : {1.0, 2.5}) {
      GridSpec h = build_grid(1.0, ell, 4, 32);
      InterfaceTrace c = InterfaceTrace::from_function(h, [&](double y) { return Complex(std::cos(kPi * y / ell)); });
      const double want = std::sqrt(1.0 + kPi * kPi / (ell * ell)) * ell;
      CHECK(std::pow(sobolev_norm(c, 0.5), 2) == doctest::Approx(want).epsilon(1e-12));
    }
  }

  TEST_CASE("Sobolev norm is monotone in s") {
    InterfaceTrace t = random_trace(32, 1.0, 77);
    double prev = 0.0;
    for (double s = -2.0; s <= 2.0; s += 0.25) {
      const double n = sobolev_norm(t, s);
      CHECK(n >= prev);
      prev = n;
    }
  }

  TEST_CASE("frequency filters") {
    InterfaceTrace t = random_trace(32, 1.0, 3);
    const double nyquist = kPi * 16 / 1.0;
    CHECK((lowpass(t, nyquist + 1.0).values() - t.values()).cwiseAbs().maxCoeff() < 1e-12);
    InterfaceTrace mean = lowpass(t, 1e-9);
    CVector c = mean.coefficients();
    for (int k = 0; k < 32; ++k)
      if (mean.mode(k) != 0) CHECK(std::abs(c[k]) < 1e-12);
    CHECK(std::abs(mean.values()[0] - t.values().mean()) < 1e-12);
    for (double w : {1.0, 5.0, 20.0}) {
      InterfaceTrace lo = lowpass(t, w), hi = highpass(t, w);
      CHECK(((lo + hi).values() - t.values()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((lowpass(lo, w).values() - lo.values()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("harmonic lifting") {
    GridSpec g = build_grid(1.0, 1.0, 40, 16);
    CHECK(l2_norm(harmonic_lifting(InterfaceTrace(1.0, CVector::Zero(16)), 0.5, g)) == 0.0);
    InterfaceTrace t = random_trace(16, 1.0, 4);
    for (double delta : {0.5, 0.2}) {
      ComplexField L = harmonic_lifting(t, delta, g);
      CHECK((dirichlet_trace(L).values() - t.values()).cwiseAbs().maxCoeff() < 1e-12);
      for (int i = 0; i < g.nx_nodes(); ++i) {
        if (g.x(i) >= delta - 1e-14 || g.x(i) < 0.0)
          for (int j = 0; j < g.ny; ++j) CHECK(std::abs(L(i, j)) < 1e-12);
      }
    }
    // single mode against the sinh profile
    InterfaceTrace c = InterfaceTrace::from_function(g, [](double y) { return Complex(std::cos(kPi * y)); });
    ComplexField L = harmonic_lifting(c, 0.5, g);
    for (int i = g.nx_half; i < g.nx_nodes(); ++i) {
      const double x = g.x(i);
      const double prof = x < 0.5 ? std::sinh(kPi * (0.5 - x)) / std::sinh(kPi * 0.5) : 0.0;
      for (int j = 0; j < g.ny; ++j) CHECK(std::abs(L(i, j) - prof * std::cos(kPi * g.y(j))) < 1e-12);
    }
    CHECK_THROWS_AS(harmonic_lifting(c, 0.0, g), ConfigError);
    CHECK_THROWS_AS(harmonic_lifting(c, 1.0, g), ConfigError);
  }

  TEST_CASE("weighted norms: constants and the unweighted case") {
    GridSpec g = build_grid(1.0, 1.0, 8, 8);
    ComplexField c = ComplexField::from_function(g, [](double, double) { return Complex(2.0, 1.0); });
    WeightedNorms w = weighted_norm(c, 1.0, {Region::p, false});
    CHECK(w.gradient == 0.0);
    CHECK(w.l2 * w.l2 == doctest::Approx(5.0 * 2.0).epsilon(1e-12));
    // delta = 0 against the Gauss stiffness and mass of the identity operator
    ComplexField u = ComplexField::from_function(g, [](double x, double y) {
      return Complex(std::sin(2.0 * x) + x * x, std::cos(kPi * y) * x);
    });
    TensorField I = TensorField::identity(g);
    auto parts = Assembler(I, I, AssemblyOptions{0.0, 0.0, XRule::gauss, true}).gauss_parts(all_cells(g));
    const double grad2 = u.values().dot(parts.stiff_T * u.values()).real();
    const double mass2 = u.values().dot(parts.mass * u.values()).real();
    WeightedNorms w0 = weighted_norm(u, 0.0);
    CHECK(w0.gradient * w0.gradient == doctest::Approx(grad2).epsilon(1e-12));
    CHECK(w0.l2 * w0.l2 == doctest::Approx(mass2).epsilon(1e-12));
    CHECK(w0.combined * w0.combined == doctest::Approx(grad2 + mass2).epsilon(1e-12));
  }

  TEST_CASE("weighted norms of log|x|") {
    // ||x grad log|x|||^2 = 2 (2 ell)(a - h) + O(h); ||x^(1/2) grad log|x|||^2 grows by 4 log 2 per halving
    double prev = 0.0;
    for (int n : {32, 64, 128}) {
      GridSpec g = build_grid(1.0, 1.0, n, 4);
      ComplexField u = ComplexField::from_function(g, [](double x, double) {
        return x == 0.0 ? Complex(0.0) : Complex(std::log(std::abs(x)));
      });
      WeightOptions o{Region::all, true};
      const double sing = std::pow(weighted_norm(u, 2.0, o).gradient, 2);
      CHECK(sing == doctest::Approx(4.0).epsilon(0.05));
      const double reg = std::pow(weighted_norm(u, 1.0, o).gradient, 2);
      if (prev > 0.0) CHECK(reg - prev == doctest::Approx(4.0 * std::log(2.0)).epsilon(0.05));
      prev = reg;
    }
  }

  TEST_CASE("non-integrable weight is rejected") {
    GridSpec g = build_grid(1.0, 1.0, 8, 8);
    ComplexField one = ComplexField::from_function(g, [](double, double) { return Complex(1.0); });
    CHECK_THROWS_AS(weighted_l2(one, -1.5), ConfigError);
    CHECK_NOTHROW(weighted_l2(one, -0.5));
  }

  TEST_CASE("Hardy probe is stable under refinement") {
    auto family = [](double x, double y) { return Complex((1.0 - x) * (1.0 + 0.5 * std::cos(kPi * y)), x * (1.0 - x)); };
    for (double eps : {0.1, 0.25}) {
      std::vector<double> r;
      for (int n : {32, 64, 128}) r.push_back(hardy_ratio(ComplexField::from_function(build_grid(1.0, 1.0, n, 16), family), eps));
      CHECK(std::abs(r[2] - r[1]) < 0.01 * r[2]);
      CHECK(std::abs(r[2] - r[1]) < std::abs(r[1] - r[0]) + 1e-12);
      CHECK(std::isfinite(r[2]));
    }
    CHECK_THROWS_AS(hardy_ratio(ComplexField(build_grid(1.0, 1.0, 8, 8)), 0.0), ConfigError);
  }

  TEST_CASE("Bessel potential") {
    GridSpec g = build_grid(1.0, 1.0, 8, 32);
    ComplexField flat = ComplexField::from_function(g, [](double x, double) { return Complex(x, 1.0); });
    CHECK(l2_norm(bessel_potential(flat) - flat) < 1e-13);
    std::mt19937 rng(8);
    std::normal_distribution<double> nd;
    ComplexField u(g), v(g);
    for (auto& e : u.values()) e = Complex(nd(rng), nd(rng));
    for (auto& e : v.values()) e = Complex(nd(rng), nd(rng));
    const double lhs = std::pow(l2_norm(bessel_potential(bessel_potential(u))), 2);
    const double rhs = std::pow(l2_norm(u), 2) + std::pow(l2_norm(spectral_dy(u)), 2);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
    const Complex a = l2_inner(bessel_potential(u), v), b = l2_inner(u, bessel_potential(v));
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
  }

  TEST_CASE("conormal trace of a homogeneous Neumann solution vanishes") {
    GridSpec g = build_grid(1.0, 1.0, 16, 16);
    TensorField I = TensorField::identity(g);
    Assembler as(I, I, AssemblyOptions{0.0, 0.0, XRule::gauss, true});
    ComplexField f = rhs_preset("bump", g);
    for (Side side : {Side::p, Side::n}) {
      SubdomainSystem sub = assemble_subdomain(as, side);
      CVector rhs = as.load(f, side_cells(g, side));
      for (int r : sub.system.constrained) rhs[r] = 0.0;
      ComplexField u(g, solve(sub.system, rhs).x);
      CHECK(conormal_trace(as, u, f, side).l2_norm() < 1e-9 * l2_norm(u));
    }
  }

  TEST_CASE("conormal trace of a manufactured field") {
    // u = (1 + x - x^2 - x^3) cos(pi y), flux (x + i nu) u_x at 0 is i nu cos(pi y)
    const double nu = 0.5;
    double prev = 0.0;
    for (int n : {16, 32, 64}) {
      GridSpec g = build_grid(1.0, 1.0, n, 2 * n);
      auto p = [](double x) { return 1.0 + x - x * x - x * x * x; };
      ComplexField f = ComplexField::from_function(g, [&](double x, double y) {
        const Complex d = 1.0 - 4.0 * x - 9.0 * x * x + kI * nu * (-2.0 - 6.0 * x);
        return (d - kPi * kPi * (x + kI * nu) * p(x)) * std::cos(kPi * y);
      });
      Problem pb{TensorField::identity(g), TensorField::identity(g), f};
      AbsorptionSolution s = solve_absorption(pb, nu);
      InterfaceTrace want = InterfaceTrace::from_function(g, [&](double y) { return kI * nu * std::cos(kPi * y); });
      InterfaceTrace gn = conormal_trace(s.u, f, Side::n, pb.A, pb.T, nu);
      const double ep = (s.g - want).l2_norm() / want.l2_norm(), en = (gn - want).l2_norm() / want.l2_norm();
      CHECK(ep < 0.05);
      CHECK(en < 0.05);
      if (prev > 0.0) CHECK(ep < prev);
      prev = ep;
    }
  }
}
