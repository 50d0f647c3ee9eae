// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lap/coefficients.hpp"

namespace lap {

/// Cold magnetized plasma at wave frequency omega with cyclotron frequency omega_c.
struct PlasmaParams {
  double omega = 2.0;
  double omega_c = 1.0;
};

/// Open interval of admissible S values.
struct SRange {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double s) const { return s > lo && s < hi; }
};

double cyclotron_ratio(const PlasmaParams& p);  // omega_c / omega, must lie in (0, 1)
SRange admissible_s_range(const PlasmaParams& p);

/// Negative-definite principal tensor (1/(S^2-D^2)) [[1, i(S+D D_I)/D_I], [-i(...), 1]].
Mat2 plasma_principal(double s, const PlasmaParams& p);
/// Negative-definite absorption tensor (first-order term in nu of the collisional tensor).
Mat2 plasma_absorption(double s, const PlasmaParams& p);
/// Exact collisional dielectric tensor with collision frequency nu.
Mat2 collisional_tensor(double s, const PlasmaParams& p, double nu);

struct PlasmaTensors {
  RealField S;
  TensorField A;  // minus the principal tensor
  TensorField T;  // minus the absorption tensor
  double d_ratio = 0.0;
  SRange range;
};

/// Builds (A, T) from a nodal S profile. Throws if any S leaves the admissible range.
PlasmaTensors plasma_tensors(const PlasmaParams& p, const RealField& S);

/// max over nodes of |alpha^nu - alpha^0 - i nu t| (Frobenius).
double plasma_expansion_residual(const PlasmaParams& p, const RealField& S, double nu);

}  // namespace lap
