// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace lap {

/// Uniform tensor grid on (-a, a) x (-ell, ell), periodic in y.
///
/// Node columns i = 0 .. 2*nx_half, with column nx_half lying exactly on x = 0.
/// Node rows j = 0 .. ny-1; the row y = ell is identified with y = -ell and not stored.
/// Degrees of freedom are numbered row-major with y fastest: dof = i*ny + j.
struct GridSpec {
  double a = 1.0;
  double ell = 1.0;
  int nx_half = 0;
  int ny = 0;

  double hx() const { return a / nx_half; }
  double hy() const { return 2.0 * ell / ny; }
  int nx_nodes() const { return 2 * nx_half + 1; }
  int nx_cells() const { return 2 * nx_half; }
  int num_dofs() const { return nx_nodes() * ny; }
  int interface_column() const { return nx_half; }

  double x(int i) const;
  double y(int j) const { return -ell + j * hy(); }

  // j is wrapped periodically.
  int dof(int i, int j) const {
    int jj = j % ny;
    if (jj < 0) jj += ny;
    return i * ny + jj;
  }

  bool operator==(const GridSpec&) const = default;
};

GridSpec build_grid(double a, double ell, int nx_half, int ny);

std::vector<int> interface_dofs(const GridSpec& grid);

enum class Side { p, n };

/// Half-open range of x-cells [begin, end). Cell i spans columns i and i+1.
struct CellRange {
  int begin = 0;
  int end = 0;
};

CellRange all_cells(const GridSpec& grid);
CellRange side_cells(const GridSpec& grid, Side side);

const char* side_name(Side side);

}  // namespace lap
