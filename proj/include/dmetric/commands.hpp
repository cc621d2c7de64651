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

// Experiment drivers behind the dmetric CLI. Each command returns its
// output as data so that tests can run it without a process boundary.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "dmetric/config.hpp"

namespace dmetric {

struct TablesReport {
  nlohmann::json json;
  std::string csv;
  std::string summary;  // human-readable, for stdout
};

// Euclidean and d_mu distance matrices between all configured networks, one
// shared sample set per measure, oracle values where the architecture is a
// single-layer two-class planar network, and reference values side by side.
// Throws ArgumentError with fewer than two networks.
TablesReport cmd_tables(const ExperimentConfig& config);
// Writes tables.json and tables.csv into `dir` (created if missing).
void write_tables(const TablesReport& report, const std::filesystem::path& dir);

// CSV "p1,p2,d_mu,ci95", one row per grid node with p1 as the outer loop.
// Throws ArgumentError without a sweep section.
std::string cmd_sweep(const ExperimentConfig& config);

struct KappaRow {
  std::string measure;
  double kappa = 0.0;
  double max_density = 0.0;      // over the probe grid
  std::size_t probe_points = 0;
  std::size_t violations = 0;    // probe points with density > kappa
  double quadrature_kappa = 0.0; // kappa with a quadrature normalizer (2-D only)
};

std::vector<KappaRow> cmd_kappa(const ExperimentConfig& config, std::size_t probe_res = 512);
std::string format_kappa(const std::vector<KappaRow>& rows);

// Continuity probe around a named network. Throws ArgumentError on an unknown
// name, radius <= 0 or zero neighbours.
nlohmann::json cmd_probe(const ExperimentConfig& config, const std::string& center,
                         double radius, std::size_t n_neighbors,
                         const std::string& measure = "");

// "%.17g" formatting used for every float in CSV output.
std::string format_real(double v);

}  // namespace dmetric
