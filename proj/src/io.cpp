// SPDX-License-Identifier: Apache-2.0
#include "lap/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "lap/errors.hpp"

namespace lap {

namespace fs = std::filesystem;

namespace {

void put_le(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  os.write(reinterpret_cast<const char*>(&bits), sizeof bits);
}

double get_le(std::istream& is) {
  std::uint64_t bits = 0;
  is.read(reinterpret_cast<char*>(&bits), sizeof bits);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

void ensure_parent(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

nlohmann::json sidecar(const std::string& base, const GridSpec& g, const std::string& name, const char* kind,
                       int components) {
  return {{"format", "lap-field"},
          {"version", 1},
          {"name", name},
          {"kind", kind},
          {"components", components},
          {"grid", grid_json(g)},
          {"nx_nodes", g.nx_nodes()},
          {"ny", g.ny},
          {"interface_column", g.interface_column()},
          {"ordering", "row-major, x slowest, y fastest"},
          {"dtype", "float64 pairs (re, im)"},
          {"endianness", "little"},
          {"payload", fs::path(base + ".bin").filename().string()}};
}

void write_values(const std::string& base, const nlohmann::json& meta, const std::vector<Complex>& values) {
  ensure_parent(base);
  write_json(base + ".json", meta);
  std::ofstream os(base + ".bin", std::ios::binary);
  if (!os) throw ConfigError("cannot write " + base + ".bin");
  for (const Complex& v : values) {
    put_le(os, v.real());
    put_le(os, v.imag());
  }
}

struct Loaded {
  GridSpec grid;
  int components;
  std::vector<Complex> values;
};

Loaded read_values(const std::string& base, const char* kind) {
  const nlohmann::json meta = read_json(base + ".json");
  try {
    if (meta.at("format") != "lap-field") throw ConfigError(base + ".json is not a field dump");
    if (meta.at("kind") != kind) throw ConfigError(base + ".json holds a " + meta.at("kind").get<std::string>());
    const auto& g = meta.at("grid");
    Loaded out{build_grid(g.at("a"), g.at("ell"), g.at("nx_half"), g.at("ny")), meta.at("components"), {}};
    const std::size_t n = static_cast<std::size_t>(out.grid.num_dofs()) * out.components;
    const fs::path bin = fs::path(base + ".json").parent_path() / meta.at("payload").get<std::string>();
    std::ifstream is(bin, std::ios::binary);
    if (!is) throw ConfigError("cannot read " + bin.string());
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double re = get_le(is);
      const double im = get_le(is);
      out.values[k] = {re, im};
    }
    if (!is) throw ConfigError(bin.string() + " is truncated");
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(base + ".json: " + e.what());
  }
}

}  // namespace

nlohmann::json grid_json(const GridSpec& g) {
  return {{"a", g.a}, {"ell", g.ell}, {"nx_half", g.nx_half}, {"ny", g.ny}};
}

void write_field(const std::string& base, const ComplexField& u, const std::string& name) {
  const auto& v = u.values();
  write_values(base, sidecar(base, u.grid(), name, "scalar", 1), std::vector<Complex>(v.data(), v.data() + v.size()));
}

ComplexField read_field(const std::string& base) {
  Loaded l = read_values(base, "scalar");
  return ComplexField(l.grid, Eigen::Map<CVector>(l.values.data(), static_cast<Eigen::Index>(l.values.size())));
}

void write_tensor(const std::string& base, const TensorField& m, const std::string& name) {
  std::vector<Complex> vals;
  vals.reserve(4 * m.values().size());
  for (const Mat2& t : m.values()) {
    vals.push_back(t(0, 0));
    vals.push_back(t(0, 1));
    vals.push_back(t(1, 0));
    vals.push_back(t(1, 1));
  }
  write_values(base, sidecar(base, m.grid(), name, "tensor2x2", 4), vals);
}

TensorField read_tensor(const std::string& base) {
  Loaded l = read_values(base, "tensor2x2");
  std::vector<Mat2> out(l.grid.num_dofs());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] << l.values[4 * k], l.values[4 * k + 1], l.values[4 * k + 2], l.values[4 * k + 3];
  return TensorField(l.grid, std::move(out));
}

void write_trace(const std::string& base, const InterfaceTrace& t, const std::string& name) {
  nlohmann::json meta = {{"format", "lap-trace"},
                         {"version", 1},
                         {"name", name},
                         {"ell", t.ell()},
                         {"ny", t.size()},
                         {"dtype", "float64 pairs (re, im)"},
                         {"endianness", "little"},
                         {"payload", fs::path(base + ".bin").filename().string()}};
  const auto& v = t.values();
  write_values(base, meta, std::vector<Complex>(v.data(), v.data() + v.size()));
}

void write_json(const std::string& path, const nlohmann::json& j) {
  ensure_parent(path);
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  os << j.dump(2) << "\n";
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path);
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRecord>& records) {
  ensure_parent(path);
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  os << kSweepCsvHeader << "\n" << std::setprecision(17);
  for (const SweepRecord& r : records)
    os << r.nu << ',' << r.l2 << ',' << r.xgrad << ',' << r.sqrtnu_grad << ',' << r.g_hm12 << ',' << r.g_h12 << ','
       << r.jump_res << ',' << r.cauchy << "\n";
}

std::vector<SweepRecord> read_sweep_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path);
  std::string line;
  std::getline(is, line);
  if (line != kSweepCsvHeader) throw ConfigError(path + ": unexpected header");
  std::vector<SweepRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    SweepRecord r;
    double* cols[] = {&r.nu, &r.l2, &r.xgrad, &r.sqrtnu_grad, &r.g_hm12, &r.g_h12, &r.jump_res, &r.cauchy};
    for (double* c : cols) {
      std::string cell;
      if (!std::getline(ls, cell, ',')) throw ConfigError(path + ": short row");
      *c = std::stod(cell);
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace lap
