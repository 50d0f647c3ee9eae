// SPDX-License-Identifier: Apache-2.0
#include "lap/plasma.hpp"

#include <cmath>
#include <sstream>

#include "lap/errors.hpp"

namespace lap {

double cyclotron_ratio(const PlasmaParams& p) {
  if (!(p.omega > 0.0) || !(p.omega_c > 0.0)) throw ConfigError("plasma: omega and omega_c must be positive");
  const double d = p.omega_c / p.omega;
  if (!(d < 1.0)) throw ConfigError("plasma: omega_c/omega must lie in (0, 1)");
  return d;
}

SRange admissible_s_range(const PlasmaParams& p) {
  const double d = cyclotron_ratio(p);
  return {-d / (1.0 - d), d / (1.0 + d)};
}

namespace {

struct SD {
  double s, d, det;
};

SD checked(double s, const PlasmaParams& p) {
  const SRange r = admissible_s_range(p);
  if (!r.contains(s)) {
    std::ostringstream msg;
    msg << "plasma: S=" << s << " outside admissible range (" << r.lo << ", " << r.hi << ")";
    throw ConfigError(msg.str());
  }
  const double di = cyclotron_ratio(p);
  const double d = di * (1.0 - s);
  const double det = s * s - d * d;
  if (std::abs(det) < 1e-14) throw ConfigError("plasma: S = +-D encountered");
  return {s, d, det};
}

}  // namespace

Mat2 plasma_principal(double s, const PlasmaParams& p) {
  const SD v = checked(s, p);
  const double di = cyclotron_ratio(p);
  const double off = (v.s + v.d * di) / di;
  Mat2 m;
  m << 1.0, kI * off, -kI * off, 1.0;
  return m / v.det;
}

Mat2 plasma_absorption(double s, const PlasmaParams& p) {
  const SD v = checked(s, p);
  const double w = p.omega, wc = p.omega_c;
  const double ds = (w * w + wc * wc) / (w * (w * w - wc * wc)) * (1.0 - s);
  const double dd = -2.0 * wc / (w * w - wc * wc) * (1.0 - s);
  const double s2d2 = v.s * v.s + v.d * v.d;
  const double diag = 2.0 * v.d * v.s * dd - ds * s2d2;
  const double off = dd * s2d2 - 2.0 * v.s * v.d * ds;
  Mat2 m;
  m << diag, kI * off, -kI * off, diag;
  return m / (v.det * v.det);
}

Mat2 collisional_tensor(double s, const PlasmaParams& p, double nu) {
  checked(s, p);
  const double w = p.omega, wc = p.omega_c;
  const double wp2 = (1.0 - s) * (w * w - wc * wc);
  const Complex wn = w + kI * nu;
  const Complex den = w * (wn * wn - wc * wc);
  const Complex sn = 1.0 - wp2 * wn / den;
  const Complex dn = wc * wp2 / den;
  Mat2 m;
  m << sn, kI * dn, -kI * dn, sn;
  return m / (sn * sn - dn * dn);
}

PlasmaTensors plasma_tensors(const PlasmaParams& p, const RealField& S) {
  const GridSpec& g = S.grid();
  PlasmaTensors out{S, TensorField(g), TensorField(g), cyclotron_ratio(p), admissible_s_range(p)};
  for (int i = 0; i < g.nx_nodes(); ++i)
    for (int j = 0; j < g.ny; ++j) {
      out.A(i, j) = -plasma_principal(S(i, j), p);
      out.T(i, j) = -plasma_absorption(S(i, j), p);
    }
  return out;
}

double plasma_expansion_residual(const PlasmaParams& p, const RealField& S, double nu) {
  const GridSpec& g = S.grid();
  double worst = 0.0;
  for (int i = 0; i < g.nx_nodes(); ++i)
    for (int j = 0; j < g.ny; ++j) {
      const double s = S(i, j);
      const Mat2 r = collisional_tensor(s, p, nu) - collisional_tensor(s, p, 0.0) - kI * nu * plasma_absorption(s, p);
      worst = std::max(worst, r.norm());
    }
  return worst;
}

}  // namespace lap
