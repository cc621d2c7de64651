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

#include "dmetric/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/core.h>

#include "dmetric/error.hpp"
#include "json_util.hpp"

namespace dmetric {

using namespace detail;

NetworkParams ExperimentConfig::network(const std::string& name) const {
  for (const auto& n : networks) {
    if (n.name == name) return unflatten(layer_dims, activation, n.params);
  }
  throw ArgumentError("unknown network '" + name + "'");
}

const NamedMeasure& ExperimentConfig::measure(const std::string& name) const {
  if (measures.empty()) throw ArgumentError("no measures configured");
  if (name.empty()) return measures.front();
  for (const auto& m : measures) {
    if (m.name == name) return m;
  }
  throw ArgumentError("unknown measure '" + name + "'");
}

std::vector<NetworkParams> ExperimentConfig::all_networks() const {
  std::vector<NetworkParams> out;
  for (const auto& n : networks) out.push_back(unflatten(layer_dims, activation, n.params));
  return out;
}

namespace {

std::size_t positive_size(const nlohmann::json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ConfigError(path + ": expected a positive integer");
  }
  return v.get<std::size_t>();
}

std::array<double, 2> range_of(const nlohmann::json& v, const std::string& path) {
  auto r = as_numbers(v, path);
  if (r.size() != 2 || !std::isfinite(r[0]) || !std::isfinite(r[1]) || !(r[0] < r[1])) {
    throw ConfigError(path + ": expected finite [lower, upper] with lower < upper");
  }
  return {r[0], r[1]};
}

SweepConfig parse_sweep(const nlohmann::json& doc, const ExperimentConfig& cfg) {
  const std::string path = "sweep";
  reject_unknown(doc, path,
                 {"reference", "measure", "fixed_params", "free_indices", "ranges", "resolution"});
  SweepConfig s;
  s.reference = as<std::string>(field(doc, path, "reference"), path + ".reference");
  bool found = false;
  for (const auto& n : cfg.networks) found = found || n.name == s.reference;
  if (!found) throw ConfigError(path + ".reference: unknown network '" + s.reference + "'");
  if (doc.contains("measure")) {
    s.measure = as<std::string>(doc.at("measure"), path + ".measure");
    bool known = false;
    for (const auto& m : cfg.measures) known = known || m.name == s.measure;
    if (!known) throw ConfigError(path + ".measure: unknown measure '" + s.measure + "'");
  }
  const std::size_t m = param_count(cfg.layer_dims);
  s.fixed_params = as_numbers(field(doc, path, "fixed_params"), path + ".fixed_params");
  if (s.fixed_params.size() != m) {
    throw ConfigError(fmt::format("{}.fixed_params: length {}, architecture has {} parameters",
                                  path, s.fixed_params.size(), m));
  }
  const auto& idx = field(doc, path, "free_indices");
  if (!idx.is_array() || idx.size() != 2) {
    throw ConfigError(path + ".free_indices: expected exactly 2 parameter indices");
  }
  for (std::size_t i = 0; i < 2; ++i) {
    const std::string p = fmt::format("{}.free_indices[{}]", path, i);
    if (!idx[i].is_number_integer() || idx[i].get<long long>() < 0 ||
        idx[i].get<std::size_t>() >= m) {
      throw ConfigError(fmt::format("{}: expected an index in [0, {})", p, m));
    }
    s.free_indices[i] = idx[i].get<std::size_t>();
  }
  if (s.free_indices[0] == s.free_indices[1]) {
    throw ConfigError(path + ".free_indices: indices must differ");
  }
  const auto& ranges = field(doc, path, "ranges");
  if (!ranges.is_array() || ranges.size() != 2) {
    throw ConfigError(path + ".ranges: expected two [lower, upper] pairs");
  }
  for (std::size_t i = 0; i < 2; ++i) {
    s.ranges[i] = range_of(ranges[i], fmt::format("{}.ranges[{}]", path, i));
  }
  const auto& res = field(doc, path, "resolution");
  if (res.is_array()) {
    if (res.size() != 2) throw ConfigError(path + ".resolution: expected n or [n1, n2]");
    for (std::size_t i = 0; i < 2; ++i) {
      s.resolution[i] = positive_size(res[i], fmt::format("{}.resolution[{}]", path, i));
    }
  } else {
    const std::size_t r = positive_size(res, path + ".resolution");
    s.resolution = {r, r};
  }
  if (s.resolution[0] < 2 || s.resolution[1] < 2) {
    throw ConfigError(path + ".resolution: must be >= 2");
  }
  return s;
}

ReferenceValue parse_reference(const nlohmann::json& doc, const std::string& path,
                               const ExperimentConfig& cfg) {
  reject_unknown(doc, path, {"quantity", "measure", "pair", "value", "label"});
  ReferenceValue r;
  r.quantity = as<std::string>(field(doc, path, "quantity"), path + ".quantity");
  if (r.quantity != "euclidean" && r.quantity != "d_mu") {
    throw ConfigError(path + ".quantity: expected \"euclidean\" or \"d_mu\"");
  }
  if (r.quantity == "d_mu") {
    r.measure = as<std::string>(field(doc, path, "measure"), path + ".measure");
    bool known = false;
    for (const auto& m : cfg.measures) known = known || m.name == r.measure;
    if (!known) throw ConfigError(path + ".measure: unknown measure '" + r.measure + "'");
  } else if (doc.contains("measure")) {
    throw ConfigError(path + ".measure: not used for euclidean values");
  }
  const auto pair = as<std::vector<std::string>>(field(doc, path, "pair"), path + ".pair");
  if (pair.size() != 2) throw ConfigError(path + ".pair: expected two network names");
  for (const auto& name : pair) {
    bool known = false;
    for (const auto& n : cfg.networks) known = known || n.name == name;
    if (!known) throw ConfigError(path + ".pair: unknown network '" + name + "'");
  }
  r.pair = {pair[0], pair[1]};
  r.value = as_number(field(doc, path, "value"), path + ".value");
  if (doc.contains("label")) r.label = as<std::string>(doc.at("label"), path + ".label");
  return r;
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& doc) {
  const std::string root = "config";
  reject_unknown(doc, root,
                 {"schema_version", "measure", "measures", "architecture", "networks",
                  "n_samples", "seed", "tie_tol", "oracle_grid", "sweep", "reference_values"});
  ExperimentConfig cfg;

  cfg.schema_version = as<int>(field(doc, root, "schema_version"), "schema_version");
  if (cfg.schema_version != kSchemaVersion) {
    throw ConfigError(fmt::format("schema_version: unsupported version {} (expected {})",
                                  cfg.schema_version, kSchemaVersion));
  }

  if (doc.contains("measure") == doc.contains("measures")) {
    throw ConfigError("config: give exactly one of 'measure' or 'measures'");
  }
  if (doc.contains("measure")) {
    auto measure = measure_from_json(doc.at("measure"), "measure");
    std::string name = "default";
    if (doc.at("measure").contains("name")) {
      name = as<std::string>(doc.at("measure").at("name"), "measure.name");
    }
    cfg.measures.push_back({std::move(name), std::move(measure)});
  } else {
    const auto& ms = doc.at("measures");
    if (!ms.is_array() || ms.empty()) throw ConfigError("measures: expected a nonempty array");
    std::set<std::string> names;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string p = fmt::format("measures[{}]", i);
      auto measure = measure_from_json(ms[i], p);
      const auto name = as<std::string>(field(ms[i], p, "name"), p + ".name");
      if (!names.insert(name).second) throw ConfigError(p + ".name: duplicate '" + name + "'");
      cfg.measures.push_back({name, std::move(measure)});
    }
  }

  const auto& arch = field(doc, root, "architecture");
  reject_unknown(arch, "architecture", {"layer_dims", "activation"});
  const auto& dims = field(arch, "architecture", "layer_dims");
  if (!dims.is_array() || dims.size() < 2) {
    throw ConfigError("architecture.layer_dims: expected at least two positive integers");
  }
  for (std::size_t i = 0; i < dims.size(); ++i) {
    cfg.layer_dims.push_back(positive_size(dims[i], fmt::format("architecture.layer_dims[{}]", i)));
  }
  try {
    cfg.activation = activation_from_json(field(arch, "architecture", "activation"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("architecture.activation: ") + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("architecture.activation: ") + e.what());
  }
  for (const auto& m : cfg.measures) {
    if (m.measure.dim() != cfg.layer_dims.front()) {
      throw ConfigError(fmt::format("measure '{}' has dimension {}, networks take {} inputs",
                                    m.name, m.measure.dim(), cfg.layer_dims.front()));
    }
  }

  const auto& nets = field(doc, root, "networks");
  if (!nets.is_array() || nets.empty()) throw ConfigError("networks: expected a nonempty array");
  const std::size_t m = param_count(cfg.layer_dims);
  std::set<std::string> names;
  for (std::size_t i = 0; i < nets.size(); ++i) {
    const std::string p = fmt::format("networks[{}]", i);
    reject_unknown(nets[i], p, {"name", "params"});
    NamedNetwork n;
    n.name = as<std::string>(field(nets[i], p, "name"), p + ".name");
    if (!names.insert(n.name).second) throw ConfigError(p + ".name: duplicate '" + n.name + "'");
    n.params = as_numbers(field(nets[i], p, "params"), p + ".params");
    if (n.params.size() != m) {
      throw ConfigError(fmt::format("{}.params: length {}, architecture has {} parameters", p,
                                    n.params.size(), m));
    }
    for (double v : n.params) {
      if (!std::isfinite(v)) throw ConfigError(p + ".params: values must be finite");
    }
    cfg.networks.push_back(std::move(n));
  }

  if (doc.contains("n_samples")) cfg.n_samples = positive_size(doc.at("n_samples"), "n_samples");
  if (doc.contains("seed")) {
    const auto& s = doc.at("seed");
    if (!s.is_number_unsigned()) throw ConfigError("seed: expected a nonnegative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("tie_tol")) {
    cfg.tie_tol = as_number(doc.at("tie_tol"), "tie_tol");
    if (!(cfg.tie_tol >= 0.0)) throw ConfigError("tie_tol: must be >= 0");
  }
  if (doc.contains("oracle_grid")) {
    cfg.oracle_grid = positive_size(doc.at("oracle_grid"), "oracle_grid");
    if (cfg.oracle_grid < 64) throw ConfigError("oracle_grid: must be >= 64");
  }
  if (doc.contains("sweep")) cfg.sweep = parse_sweep(doc.at("sweep"), cfg);
  if (doc.contains("reference_values")) {
    const auto& refs = doc.at("reference_values");
    if (!refs.is_array()) throw ConfigError("reference_values: expected an array");
    for (std::size_t i = 0; i < refs.size(); ++i) {
      cfg.reference_values.push_back(
          parse_reference(refs[i], fmt::format("reference_values[{}]", i), cfg));
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

nlohmann::json to_json(const ExperimentConfig& config) {
  nlohmann::json measures = nlohmann::json::array();
  for (const auto& m : config.measures) {
    auto j = to_json(m.measure);
    j["name"] = m.name;
    measures.push_back(std::move(j));
  }
  nlohmann::json networks = nlohmann::json::array();
  for (const auto& n : config.networks) {
    networks.push_back({{"name", n.name}, {"params", n.params}});
  }
  nlohmann::json doc = {
      {"schema_version", config.schema_version},
      {"measures", std::move(measures)},
      {"architecture",
       {{"layer_dims", config.layer_dims}, {"activation", to_json(config.activation)}}},
      {"networks", std::move(networks)},
      {"n_samples", config.n_samples},
      {"seed", config.seed},
      {"tie_tol", config.tie_tol},
      {"oracle_grid", config.oracle_grid},
  };
  if (config.sweep) {
    const SweepConfig& s = *config.sweep;
    doc["sweep"] = {{"reference", s.reference},
                    {"fixed_params", s.fixed_params},
                    {"free_indices", s.free_indices},
                    {"ranges", s.ranges},
                    {"resolution", s.resolution}};
    if (!s.measure.empty()) doc["sweep"]["measure"] = s.measure;
  }
  if (!config.reference_values.empty()) {
    nlohmann::json refs = nlohmann::json::array();
    for (const auto& r : config.reference_values) {
      nlohmann::json j = {{"quantity", r.quantity}, {"pair", r.pair}, {"value", r.value}};
      if (!r.measure.empty()) j["measure"] = r.measure;
      if (!r.label.empty()) j["label"] = r.label;
      refs.push_back(std::move(j));
    }
    doc["reference_values"] = std::move(refs);
  }
  return doc;
}

}  // namespace dmetric
