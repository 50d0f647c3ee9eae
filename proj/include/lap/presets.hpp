// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "lap/coefficients.hpp"
#include "lap/plasma.hpp"

namespace lap {

struct CoefficientPair {
  TensorField A;
  TensorField T;
};

/// Named coefficient sets: "identity", "constant", "smooth".
CoefficientPair coefficient_preset(const std::string& name, const GridSpec& grid);

/// S profile -s_scale (x/a)(1 + 0.2 cos(pi y/ell)), used by the plasma preset.
RealField plasma_s_profile(const GridSpec& grid, double s_scale);

/// Named right-hand sides: "zero", "one", "x", "cos_y", "bump", "manufactured".
/// "manufactured" is the data of manufactured_solution for A = T = I at the given nu and omega.
ComplexField rhs_preset(const std::string& name, const GridSpec& grid, double nu = 0.0, double omega = 0.0);

/// sin(pi (x + a) / (2a)) exp(i pi y / ell).
ComplexField manufactured_solution(const GridSpec& grid);

}  // namespace lap
