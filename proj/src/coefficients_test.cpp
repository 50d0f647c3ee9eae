// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "lap/coefficients.hpp"
#include "lap/errors.hpp"

using namespace lap;

namespace {

Mat2 random_hpd(std::mt19937& rng, double shift) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::Matrix2cd b;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) b(r, c) = Complex(u(rng), u(rng));
  return b * b.adjoint() + shift * Mat2::Identity();
}

}  // namespace

TEST_SUITE("coefficients") {
  TEST_CASE("identity and diagonal constants") {
    GridSpec g = build_grid(1.0, 1.0, 4, 8);
    auto rep = validate_coefficients(TensorField::identity(g), TensorField::identity(g));
    CHECK(rep.c_A == 1.0);
    CHECK(rep.c_T == 1.0);
    Mat2 d = Mat2::Zero();
    d(0, 0) = 2.0;
    d(1, 1) = 3.0;
    rep = validate_coefficients(TensorField::constant(g, d), TensorField::identity(g));
    CHECK(rep.c_A == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(rep.max_A == doctest::Approx(3.0).epsilon(1e-14));
  }

  TEST_CASE("closed-form eigenvalues match Eigen") {
    std::mt19937 rng(3);
    for (int k = 0; k < 200; ++k) {
      Mat2 m = random_hpd(rng, 0.01);
      Eigen::SelfAdjointEigenSolver<Mat2> es(m);
      Eig2 e = hermitian_eigenvalues(m);
      CHECK(e.lo == doctest::Approx(es.eigenvalues()[0]).epsilon(1e-12));
      CHECK(e.hi == doctest::Approx(es.eigenvalues()[1]).epsilon(1e-12));
    }
  }

  TEST_CASE("rejects a non-Hermitian node") {
    GridSpec g = build_grid(1.0, 1.0, 4, 8);
    TensorField A = TensorField::identity(g);
    A(3, 5)(0, 1) = Complex(0.1, 0.2);
    A(3, 5)(1, 0) = Complex(0.1, 0.2);  // should be the conjugate
    CHECK_THROWS_AS(validate_coefficients(A, TensorField::identity(g)), ConfigError);
  }

  TEST_CASE("rejects a nonpositive eigenvalue") {
    GridSpec g = build_grid(1.0, 1.0, 4, 8);
    TensorField T = TensorField::identity(g);
    T(0, 0)(1, 1) = -0.5;
    CHECK_THROWS_AS(validate_coefficients(TensorField::identity(g), T), ConfigError);
  }

  TEST_CASE("rejects mismatched grids and y-period mismatch") {
    GridSpec g = build_grid(1.0, 1.0, 4, 8);
    GridSpec h = build_grid(1.0, 1.0, 4, 10);
    CHECK_THROWS_AS(validate_coefficients(TensorField::identity(g), TensorField::identity(h)), ConfigError);
    auto not_periodic = [](double, double y) { return Mat2(Mat2::Identity() * (2.0 + y)); };
    CHECK_THROWS_AS(TensorField::from_function(g, not_periodic), ConfigError);
  }

  TEST_CASE("probe margins for identity tensors") {
    GridSpec g = build_grid(1.0, 1.0, 4, 8);
    auto rep = coercivity_probe(TensorField::identity(g), TensorField::identity(g), 0.1);
    CHECK(rep.min_im_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.max_re_defect < 1e-14);
    CHECK(rep.samples > 0);
    CHECK_THROWS_AS(coercivity_probe(TensorField::identity(g), TensorField::identity(g), 0.0), ConfigError);
  }

  TEST_CASE("probe margin on random Hermitian pairs is at least c_T") {
    std::mt19937 rng(11);
    GridSpec g = build_grid(1.0, 1.0, 3, 4);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Mat2> a, t;
      for (int k = 0; k < g.num_dofs(); ++k) {
        a.push_back(random_hpd(rng, 0.1));
        t.push_back(random_hpd(rng, 0.1));
      }
      TensorField A(g, a), T(g, t);
      auto rep = validate_coefficients(A, T);
      for (double nu : {0.3, -0.02}) {
        auto pr = coercivity_probe(A, T, nu, 8, 100 + trial);
        CHECK(pr.min_im_ratio >= rep.c_T - 1e-12);
        CHECK(pr.max_re_defect < 1e-12);
      }
    }
  }

  TEST_CASE("a11 on the interface and absorption ratio") {
    GridSpec g = build_grid(1.0, 1.0, 4, 8);
    Mat2 a;
    a << 2.0, Complex(0.5, 0.5), Complex(0.5, -0.5), 1.0;
    Mat2 t = 3.0 * Mat2::Identity();
    TensorField A = TensorField::constant(g, a), T = TensorField::constant(g, t);
    RVector a11 = a11_on_interface(A);
    CHECK(a11.size() == 8);
    CHECK(a11.minCoeff() == 2.0);
    CHECK(a11.minCoeff() >= validate_coefficients(A, T).c_A);
    RealField r = absorption_ratio(A, T);
    CHECK(r(2, 3) == doctest::Approx(1.5));
  }

  TEST_CASE("bilinear interpolation reproduces affine fields") {
    GridSpec g = build_grid(1.0, 1.0, 4, 8);
    auto fn = [](double x, double) { return Mat2(Mat2::Identity() * (2.0 + x)); };
    TensorField A = TensorField::from_function(g, fn);
    Mat2 m = A.interpolate(5, 2, 0.25, 0.7);
    const double x = g.x(5) + 0.25 * g.hx();
    CHECK(std::abs(m(0, 0) - (2.0 + x)) < 1e-14);
  }
}
