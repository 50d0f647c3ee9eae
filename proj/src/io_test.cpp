// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "lap/errors.hpp"
#include "lap/io.hpp"
#include "lap/presets.hpp"

using namespace lap;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("lap_io_test_" + std::to_string(::getpid())) / name;
  fs::create_directories(p.parent_path());
  return p;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("field round trip is bit exact") {
    GridSpec g = build_grid(0.8, 1.3, 5, 6);
    std::mt19937 rng(1);
    std::normal_distribution<double> nd;
    ComplexField u(g);
    for (auto& e : u.values()) e = Complex(nd(rng), nd(rng));
    const std::string base = scratch("u").string();
    write_field(base, u, "u");
    ComplexField back = read_field(base);
    CHECK(back.grid() == g);
    CHECK(back.values() == u.values());
    CHECK(fs::file_size(base + ".bin") == static_cast<uintmax_t>(16 * g.num_dofs()));
    nlohmann::json meta = read_json(base + ".json");
    CHECK(meta["endianness"] == "little");
    CHECK(meta["kind"] == "scalar");
    CHECK(meta["payload"] == "u.bin");
    // first pair is node (0, 0)
    std::ifstream is(base + ".bin", std::ios::binary);
    double re;
    is.read(reinterpret_cast<char*>(&re), 8);
    CHECK(re == u(0, 0).real());
  }

  TEST_CASE("tensor round trip and kind check") {
    GridSpec g = build_grid(1.0, 1.0, 3, 4);
    CoefficientPair c = coefficient_preset("smooth", g);
    const std::string base = scratch("A").string();
    write_tensor(base, c.A, "A");
    TensorField back = read_tensor(base);
    for (size_t k = 0; k < back.values().size(); ++k) CHECK(back.values()[k] == c.A.values()[k]);
    CHECK_THROWS_AS(read_field(base), ConfigError);
    CHECK_THROWS_AS(read_field(scratch("missing").string()), ConfigError);
  }

  TEST_CASE("truncated payload is rejected") {
    GridSpec g = build_grid(1.0, 1.0, 3, 4);
    const std::string base = scratch("t").string();
    write_field(base, ComplexField(g), "t");
    fs::resize_file(base + ".bin", 40);
    CHECK_THROWS_AS(read_field(base), ConfigError);
  }

  TEST_CASE("sweep CSV round trip") {
    std::vector<SweepRecord> rs = {{0.1, 1.0 / 3.0, 2.0, 3.0, 4.0, 5.0, 6e-7, 0.0}, {0.05, 1e-300, 1, 2, 3, 4, 5, 6}};
    const std::string path = scratch("sweep.csv").string();
    write_sweep_csv(path, rs);
    std::ifstream is(path);
    std::string header;
    std::getline(is, header);
    CHECK(header == "nu,l2,xgrad,sqrtnu_grad,g_hm12,g_h12,jump_res,cauchy");
    auto back = read_sweep_csv(path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].l2 == rs[0].l2);
    CHECK(back[0].jump_res == rs[0].jump_res);
    CHECK(back[1].l2 == rs[1].l2);
  }
}
