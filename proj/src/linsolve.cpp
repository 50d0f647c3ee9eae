// SPDX-License-Identifier: Apache-2.0
#include "lap/linsolve.hpp"

#include <chrono>
#include <sstream>
#include <unsupported/Eigen/IterativeSolvers>

#include "lap/errors.hpp"

namespace lap {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_residual(double res, double tol, const char* method) {
  if (!(res <= tol)) {
    std::ostringstream msg;
    msg << method << " solve: relative residual " << res << " exceeds tolerance " << tol;
    throw SolverError(msg.str());
  }
}

}  // namespace

double relative_residual(const SparseMatrix& m, const CVector& x, const CVector& rhs) {
  const double nb = rhs.norm();
  const double nr = (m * x - rhs).norm();
  if (nb == 0.0) return nr;
  return nr / nb;
}

Factorization::Factorization(const SystemMatrix& system, double tolerance)
    : matrix_(system.matrix), lu_(std::make_unique<Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>>()),
      tolerance_(tolerance) {
  if (matrix_.rows() != matrix_.cols()) throw SolverError("system matrix is not square");
  lu_->analyzePattern(matrix_);
  lu_->factorize(matrix_);
  if (lu_->info() != Eigen::Success) throw SolverError("sparse LU factorization failed: " + lu_->lastErrorMessage());
}

CVector Factorization::solve(const CVector& rhs, SolveReport* report) const {
  const auto t0 = std::chrono::steady_clock::now();
  if (rhs.size() != matrix_.rows()) throw SolverError("right-hand side has wrong length");
  CVector x;
  if (rhs.squaredNorm() == 0.0) {
    x = CVector::Zero(rhs.size());
  } else {
    x = lu_->solve(rhs);
    if (lu_->info() != Eigen::Success || !x.allFinite()) throw SolverError("sparse LU solve failed");
  }
  const double res = relative_residual(matrix_, x, rhs);
  check_residual(res, tolerance_, "direct");
  if (report) *report = {"direct", res, 1, seconds_since(t0)};
  return x;
}

SolveResult solve(const SystemMatrix& system, const CVector& rhs, const SolveOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  if (opts.method == SolveMethod::direct) {
    Factorization f(system, opts.tolerance);
    SolveResult out;
    out.x = f.solve(rhs, &out.report);
    out.report.seconds = seconds_since(t0);
    return out;
  }
  if (rhs.squaredNorm() == 0.0) return {CVector::Zero(rhs.size()), {"gmres", 0.0, 0, seconds_since(t0)}};
  Eigen::GMRES<SparseMatrix, Eigen::IncompleteLUT<Complex>> gmres;
  gmres.preconditioner().setDroptol(1e-6);
  gmres.preconditioner().setFillfactor(20);
  gmres.set_restart(opts.restart);
  gmres.setMaxIterations(opts.max_iterations);
  gmres.setTolerance(0.1 * opts.tolerance);
  gmres.compute(system.matrix);
  if (gmres.info() != Eigen::Success) throw SolverError("GMRES preconditioner setup failed");
  CVector x = gmres.solve(rhs);
  const double res = relative_residual(system.matrix, x, rhs);
  check_residual(res, opts.tolerance, "gmres");
  return {x, {"gmres", res, static_cast<int>(gmres.iterations()), seconds_since(t0)}};
}

}  // namespace lap
