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

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dmetric/commands.hpp"
#include "dmetric/config.hpp"
#include "dmetric/error.hpp"
#include "dmetric/kernels.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dmetric: probabilistic distance between classifier networks"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "OpenMP thread count (0 keeps the runtime default)")
      ->check(CLI::NonNegativeNumber);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--seed", seed, "override the config seed");
  };

  std::string out_path;
  auto* tables = app.add_subcommand("tables", "distance tables with oracle and reference columns");
  add_common(tables);
  tables->add_option("--out", out_path, "output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "d_mu over a 2-parameter grid");
  add_common(sweep);
  sweep->add_option("--out", out_path, "output CSV")->required();

  auto* kappa = app.add_subcommand("kappa", "density bound of each configured measure");
  add_common(kappa);

  std::string center;
  std::string measure_name;
  double radius = 0.0;
  std::size_t neighbors = 0;
  auto* probe = app.add_subcommand("probe", "quotient continuity probe around a network");
  add_common(probe);
  probe->add_option("--center", center, "network name")->required();
  probe->add_option("--radius", radius, "parameter-space radius")->required();
  probe->add_option("--neighbors", neighbors, "number of random neighbors")->required();
  probe->add_option("--measure", measure_name, "measure name (default: first)");
  probe->add_option("--out", out_path, "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (threads > 0) dmetric::set_threads(threads);
    dmetric::ExperimentConfig cfg = dmetric::load_config(config_path);
    if (seed) cfg.seed = *seed;

    if (*tables) {
      const auto report = dmetric::cmd_tables(cfg);
      dmetric::write_tables(report, out_path);
      std::cout << report.summary;
    } else if (*sweep) {
      write_file(out_path, dmetric::cmd_sweep(cfg));
    } else if (*kappa) {
      std::cout << dmetric::format_kappa(dmetric::cmd_kappa(cfg));
    } else if (*probe) {
      const auto doc = dmetric::cmd_probe(cfg, center, radius, neighbors, measure_name);
      if (out_path.empty()) {
        std::cout << doc.dump(2) << '\n';
      } else {
        write_file(out_path, doc.dump(2) + "\n");
      }
    }
  } catch (const dmetric::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const dmetric::ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
