// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "lap/config.hpp"

namespace lap {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Property checks on the configured grid and data. Used by the `verify` command.
std::vector<CheckResult> run_property_suite(const ExperimentConfig& config);

}  // namespace lap
