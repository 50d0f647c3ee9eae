// SPDX-License-Identifier: Apache-2.0
#include "lap/fields.hpp"

#include <cmath>
#include <string>

#include "lap/errors.hpp"

namespace lap {

template <typename Scalar>
NodalField<Scalar>::NodalField(const GridSpec& grid, Vector values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid.num_dofs())
    throw ConfigError("field size " + std::to_string(values_.size()) + " does not match grid with " +
                      std::to_string(grid.num_dofs()) + " nodes");
}

template class NodalField<Complex>;
template class NodalField<double>;

namespace {

// Trapezoid weight of column i restricted to a region; zero if excluded.
double column_weight(const GridSpec& g, int i, const NormOptions& opts) {
  const int c = g.interface_column();
  if (opts.skip_interface && i == c) return 0.0;
  if (opts.region == Region::p && i < c) return 0.0;
  if (opts.region == Region::n && i > c) return 0.0;
  double w = g.hx();
  if (i == 0 || i == g.nx_cells()) w *= 0.5;
  if (i == c && opts.region != Region::all) w *= 0.5;
  return w;
}

}  // namespace

Complex l2_inner(const ComplexField& u, const ComplexField& v, const NormOptions& opts) {
  require_same_grid(u.grid(), v.grid(), "l2_inner");
  const GridSpec& g = u.grid();
  Complex s = 0.0;
  for (int i = 0; i < g.nx_nodes(); ++i) {
    const double w = column_weight(g, i, opts);
    if (w == 0.0) continue;
    Complex col = 0.0;
    for (int j = 0; j < g.ny; ++j) col += u(i, j) * std::conj(v(i, j));
    s += w * g.hy() * col;
  }
  return s;
}

double l2_norm(const ComplexField& u, const NormOptions& opts) {
  return std::sqrt(std::max(0.0, l2_inner(u, u, opts).real()));
}

double linf_norm(const ComplexField& u, const NormOptions& opts) {
  const GridSpec& g = u.grid();
  double m = 0.0;
  for (int i = 0; i < g.nx_nodes(); ++i) {
    if (column_weight(g, i, opts) == 0.0) continue;
    for (int j = 0; j < g.ny; ++j) m = std::max(m, std::abs(u(i, j)));
  }
  return m;
}

ComplexField conj(const ComplexField& u) { return ComplexField(u.grid(), u.values().conjugate()); }

ComplexField to_complex(const RealField& u) { return ComplexField(u.grid(), u.values().cast<Complex>()); }

ComplexField operator-(const ComplexField& u, const ComplexField& v) {
  require_same_grid(u.grid(), v.grid(), "field difference");
  return ComplexField(u.grid(), u.values() - v.values());
}

ComplexField operator+(const ComplexField& u, const ComplexField& v) {
  require_same_grid(u.grid(), v.grid(), "field sum");
  return ComplexField(u.grid(), u.values() + v.values());
}

void require_same_grid(const GridSpec& g1, const GridSpec& g2, const char* what) {
  if (!(g1 == g2)) throw ConfigError(std::string(what) + ": grids do not match");
}

}  // namespace lap
