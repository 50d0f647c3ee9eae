// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "lap/fields.hpp"

namespace lap {

using RealFunction = std::function<double(double)>;

/// Solution of ((x + i nu) a(x) u')' = f on (-a, a) with u(-a) = u(a) = 0, by adaptive quadrature.
struct OneDSolution {
  double nu = 0.0;
  std::vector<double> x;
  std::vector<Complex> u;
  Complex c0;     // integration constant: (x + i nu) a u' = F + c0 with F(x) = int_{-a}^x f
  Complex g;      // conormal (x + i nu) a u' at x = 0
  Complex kappa;  // g / a(0), amplitude of the log singularity
  Complex d;      // u(0) - kappa log(i nu)
};

/// Values at the given abscissae (any order, inside [-a, a]).
OneDSolution solve_1d(const RealFunction& f, const RealFunction& a_coeff, double nu, double a,
                      const std::vector<double>& abscissae);

/// Limit nu -> 0+: u = R + kappa (log|x| + i pi 1_{x<0}) + const. u is NaN at x = 0.
struct OneDLimit {
  std::vector<double> x;
  std::vector<Complex> u;
  Complex c0;
  Complex g;
  Complex kappa;
  Complex trace_p;  // one-sided values of u - kappa log|x| at 0
  Complex trace_n;
  Complex jump;     // trace_p - trace_n = -i pi kappa
};

OneDLimit limit_1d(const RealFunction& f, const RealFunction& a_coeff, double a, const std::vector<double>& abscissae);

}  // namespace lap
