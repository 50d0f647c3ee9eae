// SPDX-License-Identifier: Apache-2.0
#include "lap/presets.hpp"

#include <cmath>

#include "lap/errors.hpp"

namespace lap {

CoefficientPair coefficient_preset(const std::string& name, const GridSpec& grid) {
  if (name == "identity") return {TensorField::identity(grid), TensorField::identity(grid)};
  if (name == "constant") {
    Mat2 a, t;
    a << 2.0, 0.5, 0.5, 1.0;
    t << 1.0, 0.2, 0.2, 1.5;
    return {TensorField::constant(grid, a), TensorField::constant(grid, t)};
  }
  if (name == "smooth") {
    const double ky = kPi / grid.ell, kx = kPi / grid.a;
    auto A = TensorField::from_function(grid, [=](double x, double y) {
      Mat2 m;
      const double off = 0.3 * std::cos(ky * y);
      m << 1.5 + 0.5 * std::sin(ky * y), off, off, 1.2 + 0.2 * std::sin(kx * x);
      return m;
    });
    auto T = TensorField::from_function(grid, [=](double, double y) {
      Mat2 m;
      m << 1.0 + 0.3 * std::cos(ky * y), 0.1, 0.1, 1.0;
      return m;
    });
    return {A, T};
  }
  throw ConfigError("unknown coefficient preset '" + name + "'");
}

RealField plasma_s_profile(const GridSpec& grid, double s_scale) {
  return RealField::from_function(grid, [&](double x, double y) {
    return -s_scale * (x / grid.a) * (1.0 + 0.2 * std::cos(kPi * y / grid.ell));
  });
}

ComplexField manufactured_solution(const GridSpec& grid) {
  const double k = kPi / (2.0 * grid.a), m = kPi / grid.ell;
  return ComplexField::from_function(grid, [=](double x, double y) {
    return std::sin(k * (x + grid.a)) * std::exp(kI * (m * y));
  });
}

ComplexField rhs_preset(const std::string& name, const GridSpec& grid, double nu, double omega) {
  const double ky = kPi / grid.ell;
  if (name == "zero") return ComplexField(grid);
  if (name == "one") return ComplexField::from_function(grid, [](double, double) { return Complex(1.0); });
  if (name == "x") return ComplexField::from_function(grid, [](double x, double) { return Complex(x); });
  if (name == "cos_y")
    return ComplexField::from_function(grid, [=](double, double y) { return Complex(std::cos(ky * y)); });
  if (name == "bump")
    return ComplexField::from_function(grid, [=](double x, double y) {
      return Complex(std::exp(-4.0 * x * x) * (1.0 + 0.5 * std::cos(ky * y)));
    });
  if (name == "manufactured") {
    const double k = kPi / (2.0 * grid.a);
    // d/dx((x + i nu) u_x) + (x + i nu) u_yy - omega^2 u
    return ComplexField::from_function(grid, [=](double x, double y) {
      const double s = std::sin(k * (x + grid.a)), c = std::cos(k * (x + grid.a));
      const Complex e = std::exp(kI * (ky * y));
      const Complex w = x + kI * nu;
      return e * (k * c - w * (k * k + ky * ky) * s - omega * omega * s);
    });
  }
  throw ConfigError("unknown rhs preset '" + name + "'");
}

}  // namespace lap
