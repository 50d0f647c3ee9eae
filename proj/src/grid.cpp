// SPDX-License-Identifier: Apache-2.0
#include "lap/grid.hpp"

#include <cmath>
#include <string>

#include "lap/errors.hpp"

namespace lap {

double GridSpec::x(int i) const {
  if (i == 0) return -a;
  if (i == 2 * nx_half) return a;
  return (i - nx_half) * hx();
}

GridSpec build_grid(double a, double ell, int nx_half, int ny) {
  if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("grid: a must be positive, got " + std::to_string(a));
  if (!(ell > 0.0) || !std::isfinite(ell))
    throw ConfigError("grid: ell must be positive, got " + std::to_string(ell));
  if (nx_half < 2) throw ConfigError("grid: nx_half must be >= 2, got " + std::to_string(nx_half));
  if (ny < 4 || ny % 2 != 0) throw ConfigError("grid: ny must be even and >= 4, got " + std::to_string(ny));
  return GridSpec{a, ell, nx_half, ny};
}

std::vector<int> interface_dofs(const GridSpec& grid) {
  std::vector<int> out(grid.ny);
  for (int j = 0; j < grid.ny; ++j) out[j] = grid.dof(grid.interface_column(), j);
  return out;
}

CellRange all_cells(const GridSpec& grid) { return {0, grid.nx_cells()}; }

CellRange side_cells(const GridSpec& grid, Side side) {
  if (side == Side::p) return {grid.nx_half, grid.nx_cells()};
  return {0, grid.nx_half};
}

const char* side_name(Side side) { return side == Side::p ? "p" : "n"; }

}  // namespace lap
