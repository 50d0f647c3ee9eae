// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "lap/limiting.hpp"
#include "lap/presets.hpp"

namespace lap {

/// Experiment description. JSON keys:
///   grid.{a, ell, nx_half, ny}, coeff.{preset, file}, rhs.{preset, file},
///   sweep.nu_list, limit.{tol_jump, method}, plasma.{omega, omega_c, s_scale},
///   solver.{method, tolerance}, nu, omega, branch, rule.
struct ExperimentConfig {
  GridSpec grid = GridSpec{1.0, 1.0, 32, 64};
  std::string coeff_preset = "identity";
  std::string coeff_file;  // directory holding tensor_A and tensor_T dumps
  std::string rhs_preset = "one";
  std::string rhs_file;  // field dump base path
  std::vector<double> nu_list = {1e-1, 5e-2, 2.5e-2, 1e-2, 5e-3, 2.5e-3};
  double nu = 1e-2;
  double omega = 0.0;
  int branch = 1;
  double tol_jump = 1e-8;
  InterfaceMethod limit_method = InterfaceMethod::automatic;
  XRule rule = XRule::fitted;
  SolveOptions solver;
  PlasmaParams plasma;
  double plasma_s_scale = 0.25;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& c);

/// Coefficients per the config (preset, plasma or files), validated.
CoefficientPair make_coefficients(const ExperimentConfig& c);
/// Right-hand side per the config. nu feeds the manufactured preset.
ComplexField make_rhs(const ExperimentConfig& c, double nu);
Problem make_problem(const ExperimentConfig& c, double nu_for_rhs);

}  // namespace lap
