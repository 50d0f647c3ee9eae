// SPDX-License-Identifier: Apache-2.0
#include "lap/config.hpp"

#include <filesystem>
#include <set>

#include "lap/errors.hpp"
#include "lap/io.hpp"
#include "lap/presets.hpp"

namespace lap {

namespace {

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError("unknown key '" + (where.empty() ? k : where + "." + k) + "'");
}

template <typename T>
void take(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    check_keys(j, {"grid", "coeff", "rhs", "sweep", "limit", "plasma", "solver", "nu", "omega", "branch", "rule"}, "");
    double a = c.grid.a, ell = c.grid.ell;
    int nxh = c.grid.nx_half, ny = c.grid.ny;
    if (j.contains("grid")) {
      const auto& g = j["grid"];
      check_keys(g, {"a", "ell", "nx_half", "ny"}, "grid");
      take(g, "a", a);
      take(g, "ell", ell);
      take(g, "nx_half", nxh);
      take(g, "ny", ny);
    }
    c.grid = build_grid(a, ell, nxh, ny);
    if (j.contains("coeff")) {
      check_keys(j["coeff"], {"preset", "file"}, "coeff");
      take(j["coeff"], "preset", c.coeff_preset);
      take(j["coeff"], "file", c.coeff_file);
    }
    if (j.contains("rhs")) {
      check_keys(j["rhs"], {"preset", "file"}, "rhs");
      take(j["rhs"], "preset", c.rhs_preset);
      take(j["rhs"], "file", c.rhs_file);
    }
    if (j.contains("sweep")) {
      check_keys(j["sweep"], {"nu_list"}, "sweep");
      take(j["sweep"], "nu_list", c.nu_list);
    }
    if (j.contains("limit")) {
      check_keys(j["limit"], {"tol_jump", "method"}, "limit");
      take(j["limit"], "tol_jump", c.tol_jump);
      std::string m = "automatic";
      take(j["limit"], "method", m);
      if (m == "automatic") c.limit_method = InterfaceMethod::automatic;
      else if (m == "probing") c.limit_method = InterfaceMethod::probing;
      else if (m == "krylov") c.limit_method = InterfaceMethod::krylov;
      else throw ConfigError("limit.method must be automatic, probing or krylov");
    }
    if (j.contains("plasma")) {
      check_keys(j["plasma"], {"omega", "omega_c", "s_scale"}, "plasma");
      take(j["plasma"], "omega", c.plasma.omega);
      take(j["plasma"], "omega_c", c.plasma.omega_c);
      take(j["plasma"], "s_scale", c.plasma_s_scale);
    }
    if (j.contains("solver")) {
      check_keys(j["solver"], {"method", "tolerance"}, "solver");
      std::string m = "direct";
      take(j["solver"], "method", m);
      if (m == "direct") c.solver.method = SolveMethod::direct;
      else if (m == "gmres") c.solver.method = SolveMethod::gmres;
      else throw ConfigError("solver.method must be direct or gmres");
      take(j["solver"], "tolerance", c.solver.tolerance);
    }
    take(j, "nu", c.nu);
    take(j, "omega", c.omega);
    take(j, "branch", c.branch);
    if (j.contains("rule")) {
      const std::string r = j["rule"].get<std::string>();
      if (r == "fitted") c.rule = XRule::fitted;
      else if (r == "gauss") c.rule = XRule::gauss;
      else throw ConfigError("rule must be fitted or gauss");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.branch != 1 && c.branch != -1) throw ConfigError("branch must be +1 or -1");
  if (!(c.tol_jump > 0.0)) throw ConfigError("limit.tol_jump must be positive");
  if (!(c.solver.tolerance > 0.0)) throw ConfigError("solver.tolerance must be positive");
  return c;
}

ExperimentConfig load_config(const std::string& path) { return parse_config(read_json(path)); }

nlohmann::json to_json(const ExperimentConfig& c) {
  const char* methods[] = {"automatic", "probing", "krylov"};
  return {{"grid", grid_json(c.grid)},
          {"coeff", {{"preset", c.coeff_preset}, {"file", c.coeff_file}}},
          {"rhs", {{"preset", c.rhs_preset}, {"file", c.rhs_file}}},
          {"sweep", {{"nu_list", c.nu_list}}},
          {"limit", {{"tol_jump", c.tol_jump}, {"method", methods[static_cast<int>(c.limit_method)]}}},
          {"plasma", {{"omega", c.plasma.omega}, {"omega_c", c.plasma.omega_c}, {"s_scale", c.plasma_s_scale}}},
          {"solver",
           {{"method", c.solver.method == SolveMethod::direct ? "direct" : "gmres"}, {"tolerance", c.solver.tolerance}}},
          {"nu", c.nu},
          {"omega", c.omega},
          {"branch", c.branch},
          {"rule", c.rule == XRule::fitted ? "fitted" : "gauss"}};
}

CoefficientPair make_coefficients(const ExperimentConfig& c) {
  CoefficientPair out;
  if (!c.coeff_file.empty()) {
    const std::filesystem::path dir(c.coeff_file);
    out = {read_tensor((dir / "tensor_A").string()), read_tensor((dir / "tensor_T").string())};
    if (!(out.A.grid() == c.grid)) throw ConfigError("coefficient files were written for a different grid");
  } else if (c.coeff_preset == "plasma") {
    const PlasmaTensors p = plasma_tensors(c.plasma, plasma_s_profile(c.grid, c.plasma_s_scale));
    out = {p.A, p.T};
  } else {
    out = coefficient_preset(c.coeff_preset, c.grid);
  }
  validate_coefficients(out.A, out.T);
  return out;
}

ComplexField make_rhs(const ExperimentConfig& c, double nu) {
  if (!c.rhs_file.empty()) {
    ComplexField f = read_field(c.rhs_file);
    if (!(f.grid() == c.grid)) throw ConfigError("rhs file was written for a different grid");
    return f;
  }
  return rhs_preset(c.rhs_preset, c.grid, nu, c.omega);
}

Problem make_problem(const ExperimentConfig& c, double nu_for_rhs) {
  CoefficientPair k = make_coefficients(c);
  return Problem{std::move(k.A), std::move(k.T), make_rhs(c, nu_for_rhs), c.omega, c.rule, c.solver};
}

}  // namespace lap
