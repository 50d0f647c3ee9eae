// SPDX-License-Identifier: Apache-2.0
#include "lap/oned.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "lap/errors.hpp"

namespace lap {

namespace {

constexpr double kAbsTol = 1e-13;
constexpr int kDepth = 30;

using Quad = boost::math::quadrature::gauss_kronrod<double, 21>;

// Bisection driven by an absolute error target; one GK21 panel per interval.
// Panels are also accepted once the error estimate reaches roundoff of their L1 mass.
double adaptive(const std::function<double(double)>& fn, double lo, double hi, double tol, int depth) {
  double err = 0.0, l1 = 0.0;
  const double est = Quad::integrate(fn, lo, hi, 0, 0.0, &err, &l1);
  err *= 0.5 * (hi - lo);  // the panel estimate is reported on [-1, 1]
  if (err <= tol || err <= 1e-14 * l1 || depth == 0) return est;
  const double mid = 0.5 * (lo + hi);
  return adaptive(fn, lo, mid, 0.5 * tol, depth - 1) + adaptive(fn, mid, hi, 0.5 * tol, depth - 1);
}

double rquad(const std::function<double(double)>& fn, double lo, double hi) {
  if (lo == hi) return 0.0;
  return adaptive(fn, lo, hi, kAbsTol, kDepth);
}

Complex cquad(const std::function<Complex(double)>& fn, double lo, double hi) {
  if (lo == hi) return 0.0;
  const double re = rquad([&](double t) { return fn(t).real(); }, lo, hi);
  const double im = rquad([&](double t) { return fn(t).imag(); }, lo, hi);
  return {re, im};
}

void check_inputs(double a, const std::vector<double>& xs) {
  if (!(a > 0.0)) throw ConfigError("oracle: a must be positive");
  for (double x : xs)
    if (!(x >= -a && x <= a)) throw ConfigError("oracle: abscissa outside [-a, a]");
}

// Breakpoints: the abscissae plus -a, 0, a, sorted and unique.
std::vector<double> breakpoints(double a, const std::vector<double>& xs) {
  std::vector<double> b = xs;
  b.push_back(-a);
  b.push_back(0.0);
  b.push_back(a);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

// Cumulative integrals of fn from -a to every breakpoint.
std::vector<Complex> cumulative(const std::function<Complex(double)>& fn, const std::vector<double>& b) {
  std::vector<Complex> out(b.size(), 0.0);
  for (std::size_t k = 1; k < b.size(); ++k) out[k] = out[k - 1] + cquad(fn, b[k - 1], b[k]);
  return out;
}

std::size_t index_of(const std::vector<double>& b, double x) {
  return static_cast<std::size_t>(std::lower_bound(b.begin(), b.end(), x) - b.begin());
}

// G(t) = int_0^t f, so F(t) - F(0) is formed without cancellation.
struct Primitive {
  RealFunction f;
  double operator()(double t) const { return t >= 0.0 ? rquad(f, 0.0, t) : -rquad(f, t, 0.0); }
};

}  // namespace

OneDSolution solve_1d(const RealFunction& f, const RealFunction& a_coeff, double nu, double a,
                      const std::vector<double>& abscissae) {
  check_inputs(a, abscissae);
  if (nu == 0.0) throw ConfigError("solve_1d needs nu != 0; use limit_1d");
  const Primitive G{f};
  const double F0 = -G(-a);
  const double a0 = a_coeff(0.0);
  const Complex in(0.0, nu);
  // u = U_F + c0 U_1 with U_X = int (H_X(t) - H_X(0)) / (t + i nu) + H_X(0) (log(x + i nu) - log(-a + i nu))
  const auto b = breakpoints(a, abscissae);
  const auto UF = cumulative(
      [&](double t) { return Complex(G(t) / a_coeff(t) + F0 * (1.0 / a_coeff(t) - 1.0 / a0)) / (t + in); }, b);
  const auto U1 = cumulative([&](double t) { return Complex(1.0 / a_coeff(t) - 1.0 / a0) / (t + in); }, b);
  const Complex la = std::log(-a + in);
  auto full = [&](const std::vector<Complex>& U, double h0, std::size_t k) { return U[k] + h0 * (std::log(b[k] + in) - la); };
  const std::size_t ka = b.size() - 1;
  const Complex uFa = full(UF, F0 / a0, ka), u1a = full(U1, 1.0 / a0, ka);
  OneDSolution out;
  out.nu = nu;
  out.c0 = -uFa / u1a;
  out.g = F0 + out.c0;
  out.kappa = out.g / a0;
  out.x = abscissae;
  for (double x : abscissae) {
    const std::size_t k = index_of(b, x);
    out.u.push_back(full(UF, F0 / a0, k) + out.c0 * full(U1, 1.0 / a0, k));
  }
  const std::size_t k0 = index_of(b, 0.0);
  const Complex u0 = full(UF, F0 / a0, k0) + out.c0 * full(U1, 1.0 / a0, k0);
  out.d = u0 - out.kappa * std::log(in);
  return out;
}

OneDLimit limit_1d(const RealFunction& f, const RealFunction& a_coeff, double a, const std::vector<double>& abscissae) {
  check_inputs(a, abscissae);
  const Primitive G{f};
  const double F0 = -G(-a);
  const double a0 = a_coeff(0.0);
  const auto b = breakpoints(a, abscissae);
  const auto RF = cumulative(
      [&](double t) { return Complex((G(t) / a_coeff(t) + F0 * (1.0 / a_coeff(t) - 1.0 / a0)) / t); }, b);
  const auto R1 = cumulative([&](double t) { return Complex((1.0 / a_coeff(t) - 1.0 / a0) / t); }, b);
  const std::size_t ka = b.size() - 1, k0 = index_of(b, 0.0);
  const Complex ipi = kI * kPi;
  // u(a) = RF(a) + c0 R1(a) + (F0 + c0)/a0 (log a - log a - i pi) = 0
  OneDLimit out;
  out.c0 = (ipi * F0 / a0 - RF[ka]) / (R1[ka] - ipi / a0);
  out.g = F0 + out.c0;
  out.kappa = out.g / a0;
  const double la = std::log(a);
  const Complex R0 = RF[k0] + out.c0 * R1[k0];
  out.trace_p = R0 + out.kappa * (-la - ipi);
  out.trace_n = R0 - out.kappa * la;
  out.jump = out.trace_p - out.trace_n;
  out.x = abscissae;
  for (double x : abscissae) {
    if (x == 0.0) {
      out.u.push_back(Complex(std::numeric_limits<double>::quiet_NaN(), 0.0));
      continue;
    }
    const std::size_t k = index_of(b, x);
    const Complex lg = std::log(std::abs(x)) + (x < 0.0 ? ipi : Complex(0.0));
    out.u.push_back(RF[k] + out.c0 * R1[k] + out.kappa * (lg - la - ipi));
  }
  return out;
}

}  // namespace lap
