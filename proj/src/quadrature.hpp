// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

namespace lap::detail {

/// Gauss-Legendre points and weights on [0, 1]; n in {2, 3, 4, 6, 8}.
const std::vector<std::pair<double, double>>& gauss_unit(int n);

}  // namespace lap::detail
