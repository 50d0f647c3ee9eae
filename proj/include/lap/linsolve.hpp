// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/SparseLU>
#include <memory>
#include <string>

#include "lap/assembly.hpp"

namespace lap {

enum class SolveMethod { direct, gmres };

struct SolveOptions {
  SolveMethod method = SolveMethod::direct;
  double tolerance = 1e-10;  // on the relative residual
  int restart = 60;
  int max_iterations = 2000;
};

struct SolveReport {
  std::string method;
  double relative_residual = 0.0;
  int iterations = 0;
  double seconds = 0.0;
};

/// Sparse LU factorization kept for repeated solves.
class Factorization {
 public:
  explicit Factorization(const SystemMatrix& system, double tolerance = 1e-10);
  CVector solve(const CVector& rhs, SolveReport* report = nullptr) const;
  int size() const { return static_cast<int>(matrix_.rows()); }

 private:
  SparseMatrix matrix_;
  std::unique_ptr<Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>> lu_;
  double tolerance_;
};

struct SolveResult {
  CVector x;
  SolveReport report;
};

/// Solves system * x = rhs. Throws SolverError if the residual check fails.
SolveResult solve(const SystemMatrix& system, const CVector& rhs, const SolveOptions& opts = {});

double relative_residual(const SparseMatrix& m, const CVector& x, const CVector& rhs);

}  // namespace lap
