// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "lap/coefficients.hpp"
#include "lap/limiting.hpp"

namespace lap {

/// Field dumps are a JSON sidecar `<base>.json` plus raw little-endian float64 (re, im)
/// pairs in `<base>.bin`, node order row-major with x slowest and y fastest.
/// Tensor dumps store four components per node in the order 11, 12, 21, 22.
void write_field(const std::string& base, const ComplexField& u, const std::string& name = "u");
ComplexField read_field(const std::string& base);
void write_tensor(const std::string& base, const TensorField& m, const std::string& name);
TensorField read_tensor(const std::string& base);
void write_trace(const std::string& base, const InterfaceTrace& t, const std::string& name);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

inline constexpr const char* kSweepCsvHeader = "nu,l2,xgrad,sqrtnu_grad,g_hm12,g_h12,jump_res,cauchy";
void write_sweep_csv(const std::string& path, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_sweep_csv(const std::string& path);

nlohmann::json grid_json(const GridSpec& g);

}  // namespace lap
