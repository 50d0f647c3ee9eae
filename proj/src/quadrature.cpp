// SPDX-License-Identifier: Apache-2.0
#include "quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <stdexcept>

namespace lap::detail {

namespace {

template <int N>
std::vector<std::pair<double, double>> make_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& ab = G::abscissa();
  const auto& w = G::weights();
  std::vector<std::pair<double, double>> out;
  for (std::size_t k = 0; k < ab.size(); ++k) {
    if (ab[k] == 0.0) {
      out.emplace_back(0.5, 0.5 * w[k]);
      continue;
    }
    out.emplace_back(0.5 * (1.0 - ab[k]), 0.5 * w[k]);
    out.emplace_back(0.5 * (1.0 + ab[k]), 0.5 * w[k]);
  }
  return out;
}

}  // namespace

const std::vector<std::pair<double, double>>& gauss_unit(int n) {
  static const auto r2 = make_rule<2>();
  static const auto r3 = make_rule<3>();
  static const auto r4 = make_rule<4>();
  static const auto r6 = make_rule<6>();
  static const auto r8 = make_rule<8>();
  switch (n) {
    case 2: return r2;
    case 3: return r3;
    case 4: return r4;
    case 6: return r6;
    case 8: return r8;
    default: throw std::invalid_argument("unsupported Gauss order");
  }
}

}  // namespace lap::detail
