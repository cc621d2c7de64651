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

#include "dmetric/commands.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <optional>

#include <fmt/core.h>

#include "dmetric/error.hpp"
#include "dmetric/kernels.hpp"
#include "dmetric/metric.hpp"
#include "dmetric/oracle.hpp"
#include "dmetric/quotient.hpp"

namespace dmetric {

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

namespace {

bool planar_halfplane_arch(const ExperimentConfig& cfg) {
  return cfg.layer_dims.size() == 2 && cfg.layer_dims[0] == 2 && cfg.layer_dims[1] == 2;
}

struct OracleEntry {
  double value;
  std::string method;
};

OracleEntry oracle_for(const NetworkParams& a, const NetworkParams& b, const InputMeasure& measure,
                       std::size_t grid) {
  const HalfPlane ha = halfplane_of(a);
  const HalfPlane hb = halfplane_of(b);
  if (ha.degenerate() || hb.degenerate()) {
    return {quad_disagreement(a, b, measure, grid), "quadrature"};
  }
  const auto v = exact_disagreement(ha, hb, measure, grid);
  return {v.value, std::string(oracle_method_name(v.method))};
}

std::optional<ReferenceValue> find_reference(const ExperimentConfig& cfg,
                                             const std::string& quantity,
                                             const std::string& measure, const std::string& a,
                                             const std::string& b) {
  for (const auto& r : cfg.reference_values) {
    if (r.quantity != quantity || r.measure != measure) continue;
    if ((r.pair[0] == a && r.pair[1] == b) || (r.pair[0] == b && r.pair[1] == a)) return r;
  }
  return std::nullopt;
}

std::string csv_opt(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

}  // namespace

TablesReport cmd_tables(const ExperimentConfig& config) {
  const std::size_t n = config.networks.size();
  if (n < 2) throw ArgumentError("tables needs at least two named networks");
  const auto nets = config.all_networks();

  TablesReport report;
  std::string& csv = report.csv;
  std::string& text = report.summary;
  csv = "quantity,measure,a,b,value,ci95,oracle,oracle_method,reference,reference_label\n";

  nlohmann::json names = nlohmann::json::array();
  for (const auto& nn : config.networks) names.push_back(nn.name);

  std::vector<std::vector<double>> eucl(n, std::vector<double>(n, 0.0));
  nlohmann::json comparisons = nlohmann::json::array();
  text += "Euclidean distances\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      eucl[i][j] = euclidean_distance(config.networks[i].params, config.networks[j].params);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& a = config.networks[i].name;
      const auto& b = config.networks[j].name;
      const auto ref = find_reference(config, "euclidean", "", a, b);
      csv += fmt::format("euclidean,,{},{},{},,,,{},{}\n", a, b, format_real(eucl[i][j]),
                         ref ? format_real(ref->value) : "", ref ? ref->label : "");
      text += fmt::format("  {:>8} {:>8}  {:.6f}", a, b, eucl[i][j]);
      if (ref) {
        text += fmt::format("   reference {:.6g}  |diff| {:.3g}", ref->value,
                            std::abs(ref->value - eucl[i][j]));
        comparisons.push_back({{"quantity", "euclidean"},
                               {"pair", {a, b}},
                               {"ours", eucl[i][j]},
                               {"reference", ref->value},
                               {"abs_diff", std::abs(ref->value - eucl[i][j])},
                               {"label", ref->label}});
      }
      text += "\n";
    }
  }

  nlohmann::json measures = nlohmann::json::array();
  const bool oracle_ok = planar_halfplane_arch(config);
  for (const auto& nm : config.measures) {
    const SampleSet samples = kernels::sample(nm.measure, config.n_samples, config.seed);
    std::vector<std::vector<std::int32_t>> regions;
    std::vector<std::vector<std::uint64_t>> masks;
    const bool masks_ok = config.layer_dims.back() <= 64;
    for (const auto& net : nets) {
      regions.push_back(kernels::region_indices(net, samples, config.tie_tol));
      if (masks_ok) masks.push_back(kernels::label_masks(net, samples, config.tie_tol));
    }

    nlohmann::json d_matrix = nlohmann::json::array();
    nlohmann::json lab_matrix = nlohmann::json::array();
    nlohmann::json oracle_matrix = nlohmann::json::array();
    text += fmt::format("d_mu on measure '{}' (N = {}, seed = {})\n", nm.name, samples.size(),
                        config.seed);
    for (std::size_t i = 0; i < n; ++i) {
      nlohmann::json d_row = nlohmann::json::array();
      nlohmann::json lab_row = nlohmann::json::array();
      nlohmann::json o_row = nlohmann::json::array();
      for (std::size_t j = 0; j < n; ++j) {
        const auto est = disagreement_from_regions(regions[i], regions[j]);
        d_row.push_back(to_json(est));
        if (masks_ok) {
          const auto lab = kernels::count_mismatches<std::uint64_t>(masks[i], masks[j]);
          const auto reg = kernels::count_mismatches<std::int32_t>(regions[i], regions[j]);
          lab_row.push_back(static_cast<double>(lab - reg) /
                            static_cast<double>(samples.size()));
        }
        std::optional<OracleEntry> oracle;
        if (oracle_ok && i < j) {
          oracle = oracle_for(nets[i], nets[j], nm.measure, config.oracle_grid);
        }
        o_row.push_back(oracle ? nlohmann::json{{"value", oracle->value},
                                                {"method", oracle->method}}
                               : nlohmann::json());
        if (i >= j) continue;

        const auto& a = config.networks[i].name;
        const auto& b = config.networks[j].name;
        const auto ref = find_reference(config, "d_mu", nm.name, a, b);
        csv += fmt::format("d_mu,{},{},{},{},{},{},{},{},{}\n", nm.name, a, b,
                           format_real(est.value), format_real(est.ci_half_width),
                           csv_opt(oracle ? std::optional<double>(oracle->value) : std::nullopt),
                           oracle ? oracle->method : "", ref ? format_real(ref->value) : "",
                           ref ? ref->label : "");
        text += fmt::format("  {:>8} {:>8}  {:.4f} +- {:.4f}", a, b, est.value,
                            est.ci_half_width);
        if (oracle) text += fmt::format("   oracle {:.4f} ({})", oracle->value, oracle->method);
        if (ref) {
          text += fmt::format("   reference {:.4f}  |diff| {:.4f}", ref->value,
                              std::abs(ref->value - est.value));
          nlohmann::json c = {{"quantity", "d_mu"},
                              {"measure", nm.name},
                              {"pair", {a, b}},
                              {"ours", est.value},
                              {"ci95", est.ci_half_width},
                              {"reference", ref->value},
                              {"abs_diff", std::abs(ref->value - est.value)},
                              {"within_3ci", std::abs(ref->value - est.value) <=
                                                 3 * est.ci_half_width},
                              {"label", ref->label}};
          if (oracle) c["oracle"] = oracle->value;
          comparisons.push_back(std::move(c));
        }
        text += "\n";
      }
      d_matrix.push_back(std::move(d_row));
      lab_matrix.push_back(std::move(lab_row));
      oracle_matrix.push_back(std::move(o_row));
    }
    nlohmann::json mj = {{"name", nm.name},
                         {"measure", to_json(nm.measure)},
                         {"kappa", kappa(nm.measure)},
                         {"n_samples", samples.size()},
                         {"d_mu", std::move(d_matrix)},
                         {"oracle", std::move(oracle_matrix)}};
    if (masks_ok) mj["label_set_discrepancy"] = std::move(lab_matrix);
    measures.push_back(std::move(mj));
  }

  nlohmann::json notes = nlohmann::json::array();
  if (!config.reference_values.empty()) {
    notes.push_back(
        "reference values are quoted for comparison; their sample count and exact "
        "experimental setup are unconfirmed");
  }
  if (!oracle_ok) notes.push_back("oracle columns need a single-layer 2-input 2-class network");
  report.json = {{"command", "tables"},
                 {"config", to_json(config)},
                 {"networks", std::move(names)},
                 {"euclidean", eucl},
                 {"measures", std::move(measures)},
                 {"comparisons", std::move(comparisons)},
                 {"notes", std::move(notes)}};
  return report;
}

void write_tables(const TablesReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream json(dir / "tables.json");
  json << report.json.dump(2) << '\n';
  std::ofstream csv(dir / "tables.csv");
  csv << report.csv;
  if (!json || !csv) throw std::runtime_error("failed writing reports to " + dir.string());
}

std::string cmd_sweep(const ExperimentConfig& config) {
  if (!config.sweep) throw ArgumentError("config has no sweep section");
  const SweepConfig& s = *config.sweep;
  const auto& measure = config.measure(s.measure).measure;
  const SampleSet samples = kernels::sample(measure, config.n_samples, config.seed);
  const NetworkParams reference = config.network(s.reference);
  const auto ref_regions = kernels::region_indices(reference, samples, config.tie_tol);

  auto node_value = [&](std::size_t axis, std::size_t i) {
    const auto [lo, hi] = s.ranges[axis];
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(s.resolution[axis] - 1);
  };
  const std::size_t n1 = s.resolution[0];
  const std::size_t n2 = s.resolution[1];
  std::vector<DistanceEstimate> results(n1 * n2);
  kernels::for_each_index(n1 * n2, [&](std::size_t node) {
    std::vector<double> flat = s.fixed_params;
    flat[s.free_indices[0]] = node_value(0, node / n2);
    flat[s.free_indices[1]] = node_value(1, node % n2);
    const auto net = unflatten(config.layer_dims, config.activation, flat);
    const auto hits = serial::count_region_mismatches(net, ref_regions, samples, config.tie_tol);
    results[node] = DistanceEstimate::from_count(hits, samples.size(), Estimator::disagreement);
  });

  std::string csv = "p1,p2,d_mu,ci95\n";
  for (std::size_t node = 0; node < n1 * n2; ++node) {
    csv += fmt::format("{},{},{},{}\n", format_real(node_value(0, node / n2)),
                       format_real(node_value(1, node % n2)), format_real(results[node].value),
                       format_real(results[node].ci_half_width));
  }
  return csv;
}

std::vector<KappaRow> cmd_kappa(const ExperimentConfig& config, std::size_t probe_res) {
  std::vector<KappaRow> rows;
  for (const auto& nm : config.measures) {
    KappaRow row;
    row.measure = nm.name;
    row.kappa = kappa(nm.measure);
    const Box box = nm.measure.domain().bounding_box();
    if (nm.measure.dim() == 2) {
      // Probe grid includes the box edges so boundary points are covered.
      for (std::size_t i = 0; i < probe_res; ++i) {
        for (std::size_t j = 0; j < probe_res; ++j) {
          const double t = static_cast<double>(i) / static_cast<double>(probe_res - 1);
          const double u = static_cast<double>(j) / static_cast<double>(probe_res - 1);
          const std::array<double, 2> x{box.lower[0] + t * (box.upper[0] - box.lower[0]),
                                        box.lower[1] + u * (box.upper[1] - box.lower[1])};
          const double d = density(nm.measure, x);
          row.max_density = std::max(row.max_density, d);
          row.violations += d > row.kappa;
          ++row.probe_points;
        }
      }
      // The density integrates to one only if the normalizer is right, so
      // kappa / mass is kappa recomputed from a quadrature normalizer.
      const double mass = quad_measure(nm.measure, config.oracle_grid,
                                       [](std::span<const double>) { return true; });
      row.quadrature_kappa = row.kappa / mass;
    } else {
      const SampleSet probe = kernels::sample(nm.measure, probe_res * probe_res, config.seed);
      for (std::size_t i = 0; i < probe.size(); ++i) {
        const double d = density(nm.measure, probe.point(i));
        row.max_density = std::max(row.max_density, d);
        row.violations += d > row.kappa;
        ++row.probe_points;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_kappa(const std::vector<KappaRow>& rows) {
  std::string out;
  for (const auto& r : rows) {
    out += fmt::format(
        "{}: kappa = {}  max density on {} probe points = {}  margin = {}  violations = {}",
        r.measure, format_real(r.kappa), r.probe_points, format_real(r.max_density),
        format_real(r.kappa - r.max_density), r.violations);
    if (r.quadrature_kappa > 0.0) {
      out += fmt::format("  quadrature kappa = {}", format_real(r.quadrature_kappa));
    }
    out += "\n";
  }
  return out;
}

nlohmann::json cmd_probe(const ExperimentConfig& config, const std::string& center,
                         double radius, std::size_t n_neighbors, const std::string& measure) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ArgumentError("--radius must be a finite number > 0");
  }
  if (n_neighbors == 0) throw ArgumentError("--neighbors must be >= 1");
  const NetworkParams net = config.network(center);
  const auto& nm = config.measure(measure);
  const SampleSet samples = kernels::sample(nm.measure, config.n_samples, config.seed);
  const auto result =
      continuity_probe(net, radius, n_neighbors, samples, config.seed, config.tie_tol);
  return {{"command", "probe"},
          {"config", to_json(config)},
          {"center_name", center},
          {"measure", nm.name},
          {"result", to_json(result)}};
}

}  // namespace dmetric
