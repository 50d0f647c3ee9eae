// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "lap/errors.hpp"
#include "lap/linsolve.hpp"

using namespace lap;

namespace {

SystemMatrix random_system(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Eigen::Triplet<Complex>> t;
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, Complex(6.0 + u(rng), u(rng)));
    for (int k = 0; k < 4; ++k) t.emplace_back(i, static_cast<int>(rng() % n), Complex(u(rng), u(rng)));
  }
  SystemMatrix s;
  s.matrix.resize(n, n);
  s.matrix.setFromTriplets(t.begin(), t.end());
  return s;
}

CVector random_vector(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  CVector b(n);
  for (auto& e : b) e = Complex(nd(rng), nd(rng));
  return b;
}

}  // namespace

TEST_SUITE("linsolve") {
  TEST_CASE("identity") {
    SystemMatrix s;
    s.matrix.resize(10, 10);
    s.matrix.setIdentity();
    CVector b = random_vector(10, 1);
    SolveResult r = solve(s, b);
    CHECK((r.x - b).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(r.report.relative_residual <= 1e-10);
  }

  TEST_CASE("random well-conditioned systems, both paths") {
    for (unsigned seed : {1u, 2u, 3u}) {
      SystemMatrix s = random_system(400, seed);
      CVector b = random_vector(400, seed + 10);
      for (SolveMethod m : {SolveMethod::direct, SolveMethod::gmres}) {
        SolveOptions o;
        o.method = m;
        SolveResult r = solve(s, b, o);
        CHECK(r.report.relative_residual <= 1e-10);
        CHECK(relative_residual(s.matrix, r.x, b) <= 1e-10);
        CHECK(r.report.seconds >= 0.0);
      }
    }
  }

  TEST_CASE("zero right-hand side") {
    SystemMatrix s = random_system(50, 4);
    SolveResult r = solve(s, CVector::Zero(50));
    CHECK(r.x.cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("singular matrix and bad sizes are reported") {
    SystemMatrix s;
    s.matrix.resize(3, 3);
    s.matrix.insert(0, 0) = 1.0;
    s.matrix.insert(1, 1) = 1.0;
    CHECK_THROWS_AS(solve(s, CVector::Ones(3)), SolverError);
    SystemMatrix r = random_system(20, 5);
    Factorization lu(r);
    CHECK_THROWS_AS(lu.solve(CVector::Ones(7)), SolverError);
  }

  TEST_CASE("deterministic") {
    SystemMatrix s = random_system(300, 9);
    CVector b = random_vector(300, 8);
    CVector x1 = solve(s, b).x, x2 = solve(s, b).x;
    CHECK(x1 == x2);
    Factorization lu(s);
    CHECK(lu.solve(b) == lu.solve(b));
  }
}
