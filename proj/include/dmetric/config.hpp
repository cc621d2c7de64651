// Copyright 2026 The dmetric Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dmetric/activation.hpp"
#include "dmetric/measure.hpp"
#include "dmetric/network.hpp"

namespace dmetric {

inline constexpr int kSchemaVersion = 1;

struct NamedMeasure {
  std::string name;
  InputMeasure measure;
};

struct NamedNetwork {
  std::string name;
  std::vector<double> params;  // canonical flat layout
};

// Two-parameter slice through parameter space, evaluated against a reference.
struct SweepConfig {
  std::string reference;
  std::string measure;  // empty: first configured measure
  std::vector<double> fixed_params;
  std::array<std::size_t, 2> free_indices{};
  std::array<std::array<double, 2>, 2> ranges{};
  std::array<std::size_t, 2> resolution{};
};

// A published value to print next to ours. quantity is "euclidean" or "d_mu".
struct ReferenceValue {
  std::string quantity;
  std::string measure;
  std::array<std::string, 2> pair;
  double value = 0.0;
  std::string label;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::vector<NamedMeasure> measures;
  std::vector<std::size_t> layer_dims;
  Activation activation;
  std::vector<NamedNetwork> networks;
  std::size_t n_samples = 1'000'000;
  std::uint64_t seed = 0;
  double tie_tol = 0.0;
  std::size_t oracle_grid = 2048;
  std::optional<SweepConfig> sweep;
  std::vector<ReferenceValue> reference_values;

  // Throw ArgumentError on unknown names. An empty measure name selects the
  // first measure.
  NetworkParams network(const std::string& name) const;
  const NamedMeasure& measure(const std::string& name) const;
  std::vector<NetworkParams> all_networks() const;
};

// Strict parse: unknown fields, wrong types and inconsistent shapes raise
// ConfigError naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& doc);
// Reads and parses a file; JSON syntax errors carry line and column.
ExperimentConfig load_config(const std::filesystem::path& path);
// Fully resolved config (defaults filled in).
nlohmann::json to_json(const ExperimentConfig& config);

}  // namespace dmetric
