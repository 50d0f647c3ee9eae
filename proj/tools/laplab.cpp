// SPDX-License-Identifier: Apache-2.0
// laplab: experiment runner.
//
//   laplab <command> [--config file.json] [--out dir] [--nu value] [--quiet]
//
// Exit codes: 0 success, 2 configuration error, 3 solver failure, 4 verification failure.
#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "lap/config.hpp"
#include "lap/errors.hpp"
#include "lap/io.hpp"
#include "lap/oned.hpp"
#include "lap/verification.hpp"
#include "lap/version.hpp"

using namespace lap;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerify = 4;

struct Run {
  std::string command;
  ExperimentConfig config;
  fs::path out;
  bool quiet = false;
  std::vector<std::string> outputs;
  json results = json::object();

  void say(const std::string& s) const {
    if (!quiet) std::cout << s << std::endl;
  }
  std::string path(const std::string& name) {
    outputs.push_back(name);
    return (out / name).string();
  }
  void field(const std::string& name, const ComplexField& u) {
    write_field(path(name), u, name);
    outputs.back() += ".json";
  }
  void trace(const std::string& name, const InterfaceTrace& t) {
    write_trace(path(name), t, name);
    outputs.back() += ".json";
  }
};

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json report_json(const SolveReport& r) {
  return {{"method", r.method}, {"relative_residual", r.relative_residual}, {"iterations", r.iterations},
          {"seconds", r.seconds}};
}

json jump_json(const JumpResidual& j) {
  return {{"l2", j.l2}, {"h12", j.h12}, {"jump_l2", j.jump_l2}, {"relative", j.relative},
          {"jump_mean", complex_json(j.jump.values().mean())}};
}

int branch_of(double nu) { return nu < 0 ? -1 : 1; }

void cmd_solve(Run& r) {
  const double nu = r.config.nu;
  const Problem pb = make_problem(r.config, nu);
  const AbsorptionSolution s = solve_absorption(pb, nu);
  r.field("u", s.u);
  r.field("f", pb.f);
  r.trace("g", s.g);
  r.results = {{"nu", nu},
               {"solve", report_json(s.report)},
               {"l2", l2_norm(s.u)},
               {"f_l2", l2_norm(pb.f)},
               {"g_l2", s.g.l2_norm()},
               {"g_h12", sobolev_norm(s.g, 0.5)},
               {"g_hm12", sobolev_norm(s.g, -0.5)}};
  r.say("solve: nu=" + std::to_string(nu) + " |u|=" + std::to_string(l2_norm(s.u)) +
        " residual=" + std::to_string(s.report.relative_residual));
}

void cmd_sweep(Run& r) {
  const Problem pb = make_problem(r.config, r.config.nu_list.back());
  const SweepResult sw = lap_sweep(pb, r.config.nu_list);
  write_sweep_csv(r.path("sweep.csv"), sw.records);
  r.field("u_last", sw.last.u);
  r.trace("g_last", sw.last.g);
  r.trace("jump_last", sw.last_jump.jump);
  const double fn = l2_norm(pb.f);
  json rows = json::array();
  for (const auto& rec : sw.records)
    rows.push_back({{"nu", rec.nu}, {"l2_over_f", rec.l2 / fn}, {"xgrad_over_f", rec.xgrad / fn},
                    {"g_h12_over_f", rec.g_h12 / fn}, {"jump_res", rec.jump_res}, {"cauchy", rec.cauchy}});
  r.results = {{"records", rows}, {"last_jump", jump_json(sw.last_jump)}, {"f_l2", fn}};
  for (const auto& rec : sw.records)
    r.say("sweep: nu=" + std::to_string(rec.nu) + " |u|=" + std::to_string(rec.l2) +
          " jump_res=" + std::to_string(rec.jump_res) + " cauchy=" + std::to_string(rec.cauchy));
}

void cmd_decompose(Run& r) {
  const double nu = r.config.nu;
  const Problem pb = make_problem(r.config, nu);
  const AbsorptionSolution s = solve_absorption(pb, nu);
  const Decomposition d = split(s.u, s.g, pb.A, pb.T, nu, branch_of(nu));
  const JumpResidual jr = jump_residual(d);
  r.field("u", s.u);
  r.field("u_h", d.u_h);
  r.field("u_reg", d.u_reg);
  r.trace("g", d.g);
  r.trace("trace_p", trace_of_regular(d, Side::p));
  r.trace("trace_n", trace_of_regular(d, Side::n));
  r.trace("rho", jr.rho);
  r.results = {{"nu", nu}, {"branch", d.branch}, {"kind", "absorbed"}, {"jump", jump_json(jr)},
               {"g_l2", d.g.l2_norm()}};
  r.say("decompose: nu=" + std::to_string(nu) + " relative jump residual=" + std::to_string(jr.relative));
}

void cmd_limit(Run& r) {
  const Problem pb = make_problem(r.config, 0.0);
  const LimitingOptions lo{r.config.branch, r.config.tol_jump, r.config.limit_method};
  const LimitingSolution lim = solve_limiting(pb, lo);
  r.field("u", lim.u);
  r.field("u_h", lim.decomposition.u_h);
  r.field("u_reg", lim.decomposition.u_reg);
  r.trace("g", lim.g);
  r.trace("jump", lim.jump.jump);
  const GreenCheck gc = green_check(lim.decomposition, pb.f, lim.decomposition, pb.f);
  r.results = {{"branch", lo.branch},
               {"g_l2", lim.g.l2_norm()},
               {"g_h12", sobolev_norm(lim.g, 0.5)},
               {"g_mean", complex_json(lim.g.values().mean())},
               {"jump", jump_json(lim.jump)},
               {"method", lim.method},
               {"interface_evaluations", lim.interface_evaluations},
               {"rcond", lim.rcond},
               {"green_self", {{"lhs", complex_json(gc.lhs)}, {"rhs", complex_json(gc.rhs)}, {"residual", gc.residual}}}};
  r.say("limit: |g+|=" + std::to_string(lim.g.l2_norm()) + " relative jump residual=" +
        std::to_string(lim.jump.relative) + " (" + lim.method + ")");
}

RealFunction oned_rhs(const std::string& name) {
  if (name == "zero") return [](double) { return 0.0; };
  if (name == "one") return [](double) { return 1.0; };
  if (name == "x") return [](double x) { return x; };
  // y-average of the 2D bump
  if (name == "bump") return [](double x) { return std::exp(-4.0 * x * x); };
  throw ConfigError("oracle1d supports rhs presets zero, one, x and bump, not '" + name + "'");
}

void cmd_oracle1d(Run& r) {
  const ExperimentConfig& c = r.config;
  if (!c.coeff_file.empty() || c.coeff_preset == "plasma") throw ConfigError("oracle1d needs a coefficient preset");
  const CoefficientPair k = make_coefficients(c);
  const double a11 = k.A(0, 0)(0, 0).real();
  for (const Mat2& m : k.A.values())
    if (m(0, 0) != Complex(a11)) throw ConfigError("oracle1d needs A11 constant over the grid");
  const RealFunction f = oned_rhs(c.rhs_preset);
  const RealFunction acoef = [a11](double) { return a11; };
  std::vector<double> xs;
  for (int i = 0; i < c.grid.nx_nodes(); ++i) xs.push_back(c.grid.x(i));
  const OneDSolution s = solve_1d(f, acoef, c.nu, c.grid.a, xs);
  const OneDLimit l = limit_1d(f, acoef, c.grid.a, xs);
  std::ofstream os(r.path("oracle1d.csv"));
  os.precision(17);
  os << "x,re_u,im_u,re_u_limit,im_u_limit\n";
  for (size_t i = 0; i < xs.size(); ++i)
    os << xs[i] << ',' << s.u[i].real() << ',' << s.u[i].imag() << ',' << l.u[i].real() << ',' << l.u[i].imag() << '\n';
  r.results = {{"nu", c.nu},
               {"a11", a11},
               {"kappa", complex_json(s.kappa)},
               {"g", complex_json(s.g)},
               {"d", complex_json(s.d)},
               {"c0", complex_json(s.c0)},
               {"limit", {{"kappa", complex_json(l.kappa)},
                          {"g", complex_json(l.g)},
                          {"trace_p", complex_json(l.trace_p)},
                          {"trace_n", complex_json(l.trace_n)},
                          {"jump", complex_json(l.jump)}}}};
  r.say("oracle1d: kappa=" + std::to_string(s.kappa.real()) + "+" + std::to_string(s.kappa.imag()) +
        "i limit jump=" + std::to_string(l.jump.real()) + "+" + std::to_string(l.jump.imag()) + "i");
}

void cmd_plasma_gen(Run& r) {
  const ExperimentConfig& c = r.config;
  const RealField s = plasma_s_profile(c.grid, c.plasma_s_scale);
  const PlasmaTensors pt = plasma_tensors(c.plasma, s);
  const CoercivityReport rep = validate_coefficients(pt.A, pt.T);
  write_tensor(r.path("tensor_A"), pt.A, "A");
  r.outputs.back() += ".json";
  write_tensor(r.path("tensor_T"), pt.T, "T");
  r.outputs.back() += ".json";
  r.field("S", to_complex(s));
  const double nu = std::abs(c.nu);
  const double ratio = plasma_expansion_residual(c.plasma, s, nu) / plasma_expansion_residual(c.plasma, s, nu / 2);
  r.results = {{"omega", c.plasma.omega},
               {"omega_c", c.plasma.omega_c},
               {"d_ratio", pt.d_ratio},
               {"s_range", {pt.range.lo, pt.range.hi}},
               {"s_scale", c.plasma_s_scale},
               {"c_A", rep.c_A},
               {"c_T", rep.c_T},
               {"remainder_ratio", {{"nu", nu}, {"ratio", ratio}}}};
  r.say("plasma-gen: D_I=" + std::to_string(pt.d_ratio) + " c_A=" + std::to_string(rep.c_A) +
        " c_T=" + std::to_string(rep.c_T) + " remainder ratio=" + std::to_string(ratio));
}

bool cmd_verify(Run& r) {
  const auto checks = run_property_suite(r.config);
  bool ok = true;
  json arr = json::array();
  for (const auto& c : checks) {
    ok = ok && c.passed;
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"threshold", c.threshold},
                   {"detail", c.detail}});
    char line[256];
    std::snprintf(line, sizeof line, "[%s] %-16s value=%.3e threshold=%.1e %s", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.value, c.threshold, c.detail.c_str());
    r.say(line);
  }
  r.results = {{"checks", arr}, {"all_passed", ok}};
  return ok;
}

json versions() {
  return {{"laplab", kVersion},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"compiler", __VERSION__}};
}

void write_manifest(const Run& r, const std::string& status, int code, double seconds) {
  json m = {{"command", r.command},
            {"status", status},
            {"exit_code", code},
            {"seconds", seconds},
            {"config", to_json(r.config)},
            {"versions", versions()},
            {"tolerances",
             {{"solver_relative_residual", r.config.solver.tolerance}, {"limit_tol_jump", r.config.tol_jump}}},
            {"outputs", r.outputs},
            {"results", r.results}};
  write_json((r.out / "manifest.json").string(), m);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limiting-absorption laboratory for div((x A + i nu T) grad u) = f"};
  app.set_version_flag("--version", kVersion);
  std::string config_path, out_dir = "out";
  std::optional<double> nu;
  bool quiet = false;
  app.add_option("--config", config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--nu", nu, "absorption for solve, decompose, oracle1d and plasma-gen");
  app.add_flag("--quiet", quiet, "no progress output");
  app.require_subcommand(1, 1);
  app.fallthrough();

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"solve", "solve with absorption nu"},
      {"sweep", "limiting-absorption sweep over sweep.nu_list"},
      {"decompose", "solve at nu and split into singular and regular parts"},
      {"limit", "solve the limit problem directly"},
      {"oracle1d", "1D quadrature oracle for y-independent data"},
      {"plasma-gen", "cold-plasma coefficient tensors"},
      {"verify", "property suite on the configured problem"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  Run run;
  run.command = app.get_subcommands().front()->get_name();
  run.out = out_dir;
  run.quiet = quiet;
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  int code = 0;
  std::string status = "ok";
  try {
    run.config = config_path.empty() ? parse_config(json::object()) : load_config(config_path);
    if (nu) {
      if (!std::isfinite(*nu)) throw ConfigError("--nu must be finite");
      run.config.nu = *nu;
    }
    fs::create_directories(run.out);
    const std::string& c = run.command;
    if (c == "solve") cmd_solve(run);
    else if (c == "sweep") cmd_sweep(run);
    else if (c == "decompose") cmd_decompose(run);
    else if (c == "limit") cmd_limit(run);
    else if (c == "oracle1d") cmd_oracle1d(run);
    else if (c == "plasma-gen") cmd_plasma_gen(run);
    else if (c == "verify" && !cmd_verify(run)) {
      code = kExitVerify;
      status = "verification failed";
    }
  } catch (const ConfigError& e) {
    std::cerr << "laplab: configuration error: " << e.what() << std::endl;
    code = kExitConfig;
    status = std::string("configuration error: ") + e.what();
  } catch (const SolverError& e) {
    std::cerr << "laplab: solver failure: " << e.what() << std::endl;
    code = kExitSolver;
    status = std::string("solver failure: ") + e.what();
  } catch (const std::exception& e) {
    std::cerr << "laplab: " << e.what() << std::endl;
    code = 1;
    status = e.what();
  }
  try {
    if (fs::is_directory(run.out)) write_manifest(run, status, code, elapsed());
  } catch (const std::exception& e) {
    std::cerr << "laplab: cannot write manifest: " << e.what() << std::endl;
    if (code == 0) code = 1;
  }
  return code;
}
