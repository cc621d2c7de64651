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

#include "dmetric/quotient.hpp"

#include <cmath>
#include <random>

#include "dmetric/error.hpp"
#include "dmetric/kernels.hpp"
#include "dmetric/rng.hpp"

namespace dmetric {

bool same_class(const NetworkParams& w, const NetworkParams& w_prime, const SampleSet& samples,
                double threshold, double tie_tol) {
  if (!(threshold >= 0.0)) throw ArgumentError("threshold must be >= 0");
  return d_mu_disagreement(w, w_prime, samples, tie_tol).value <= threshold;
}

ClassPartition cluster_classes(const std::vector<NetworkParams>& networks,
                               const SampleSet& samples, double threshold, double tie_tol) {
  if (networks.empty()) throw ArgumentError("no networks to cluster");
  if (samples.empty()) throw ArgumentError("sample set is empty");
  if (!(threshold >= 0.0)) throw ArgumentError("threshold must be >= 0");

  ClassPartition out;
  out.threshold = threshold;
  std::vector<std::vector<std::int32_t>> leader_regions;
  for (std::size_t i = 0; i < networks.size(); ++i) {
    auto regions = kernels::region_indices(networks[i], samples, tie_tol);
    std::size_t joined = leader_regions.size();
    for (std::size_t c = 0; c < leader_regions.size(); ++c) {
      if (disagreement_from_regions(leader_regions[c], regions).value <= threshold) {
        joined = c;
        break;
      }
    }
    if (joined == leader_regions.size()) {
      leader_regions.push_back(std::move(regions));
      out.representatives.push_back(flatten(networks[i]));
      out.representative_inputs.push_back(i);
    }
    out.assignment.push_back(joined);
  }
  return out;
}

AxiomReport metric_axiom_suite(const std::vector<NetworkParams>& networks,
                               const SampleSet& samples, double tie_tol) {
  const std::size_t n = networks.size();
  if (n < 3) throw ArgumentError("axiom suite needs at least 3 networks");
  if (samples.empty()) throw ArgumentError("sample set is empty");

  std::vector<std::vector<std::int32_t>> regions(n);
  for (std::size_t i = 0; i < n; ++i) {
    regions[i] = kernels::region_indices(networks[i], samples, tie_tol);
  }

  AxiomReport r;
  r.n_networks = n;
  r.n_samples = samples.size();
  r.counts.assign(n, std::vector<std::size_t>(n, 0));
  r.distances.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      r.counts[i][j] = kernels::count_mismatches<std::int32_t>(regions[i], regions[j]);
      r.distances[i][j] =
          DistanceEstimate::from_count(r.counts[i][j], samples.size(), Estimator::disagreement)
              .value;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (r.distances[i][i] != 0.0) ++r.identity_violations;
    for (std::size_t j = 0; j < n; ++j) {
      ++r.pairs_checked;
      if (!(r.distances[i][j] >= 0.0)) ++r.nonnegativity_violations;
      if (r.distances[i][j] != r.distances[j][i]) ++r.symmetry_violations;
      for (std::size_t k = 0; k < n; ++k) {
        ++r.ordered_triples_checked;
        if (r.counts[i][j] > r.counts[i][k] + r.counts[k][j]) ++r.triangle_violations;
      }
    }
  }
  r.distinct_triples = n * (n - 1) * (n - 2) / 6;
  return r;
}

ContinuityProbeResult continuity_probe(const NetworkParams& center, double radius,
                                       std::size_t n_neighbors, const SampleSet& samples,
                                       std::uint64_t seed, double tie_tol) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ArgumentError("probe radius must be finite and > 0");
  }
  if (n_neighbors == 0) throw ArgumentError("probe needs at least one neighbour");
  if (samples.empty()) throw ArgumentError("sample set is empty");

  ContinuityProbeResult out;
  out.center = flatten(center);
  out.radius = radius;
  out.n_neighbors = n_neighbors;

  const auto center_regions = kernels::region_indices(center, samples, tie_tol);
  const auto omega0 = omega0_mass(center, samples, tie_tol);
  out.omega0_mass_center = omega0.value;
  out.omega0_ci_half_width = omega0.ci_half_width;
  out.lower_bound = 0.5 * omega0.value;

  const std::size_t m = out.center.size();
  std::vector<NetworkParams> neighbors;
  neighbors.reserve(n_neighbors);
  for (std::size_t j = 0; j < n_neighbors; ++j) {
    auto gen = stream(seed, StreamTag::probe_neighbors, j);
    std::normal_distribution<double> normal;
    std::vector<double> dir(m);
    double norm2 = 0.0;
    while (norm2 == 0.0) {
      for (double& v : dir) {
        v = normal(gen);
        norm2 += v * v;
      }
    }
    const double r =
        radius * std::pow(uniform01(gen), 1.0 / static_cast<double>(m)) / std::sqrt(norm2);
    std::vector<double> flat = out.center;
    for (std::size_t i = 0; i < m; ++i) flat[i] += r * dir[i];
    neighbors.push_back(unflatten(center.layer_dims(), center.activation(), flat));
  }

  out.neighbor_distances.resize(n_neighbors);
  std::vector<double> ci(n_neighbors);
  kernels::for_each_index(n_neighbors, [&](std::size_t j) {
    const auto mismatches =
        serial::count_region_mismatches(neighbors[j], center_regions, samples, tie_tol);
    const auto est =
        DistanceEstimate::from_count(mismatches, samples.size(), Estimator::disagreement);
    out.neighbor_distances[j] = est.value;
    ci[j] = est.ci_half_width;
  });

  std::size_t best = 0;
  for (std::size_t j = 1; j < n_neighbors; ++j) {
    if (out.neighbor_distances[j] > out.neighbor_distances[best]) best = j;
  }
  out.max_quotient_distance = out.neighbor_distances[best];
  out.max_ci_half_width = ci[best];
  out.argmax_neighbor = flatten(neighbors[best]);
  // Sampling slack: 1.5 ci of the tie-mass estimate, i.e. 3 ci of the bound.
  out.lower_bound_holds =
      out.omega0_mass_center == 0.0 ||
      out.max_quotient_distance >= out.lower_bound - 1.5 * out.omega0_ci_half_width;
  out.neighbor_classes = cluster_classes(neighbors, samples, 0.0, tie_tol).num_classes();
  return out;
}

nlohmann::json to_json(const ClassPartition& partition) {
  return {{"representatives", partition.representatives},
          {"representative_inputs", partition.representative_inputs},
          {"assignment", partition.assignment},
          {"threshold", partition.threshold},
          {"num_classes", partition.num_classes()}};
}

nlohmann::json to_json(const AxiomReport& report) {
  return {{"n_networks", report.n_networks},
          {"n_samples", report.n_samples},
          {"distances", report.distances},
          {"pairs_checked", report.pairs_checked},
          {"ordered_triples_checked", report.ordered_triples_checked},
          {"distinct_triples", report.distinct_triples},
          {"violations",
           {{"nonnegativity", report.nonnegativity_violations},
            {"identity", report.identity_violations},
            {"symmetry", report.symmetry_violations},
            {"triangle", report.triangle_violations}}}};
}

nlohmann::json to_json(const ContinuityProbeResult& result) {
  return {{"center", result.center},
          {"radius", result.radius},
          {"n_neighbors", result.n_neighbors},
          {"max_quotient_distance", result.max_quotient_distance},
          {"max_ci95", result.max_ci_half_width},
          {"argmax_neighbor", result.argmax_neighbor},
          {"omega0_mass_center", result.omega0_mass_center},
          {"omega0_ci95", result.omega0_ci_half_width},
          {"lower_bound", result.lower_bound},
          {"lower_bound_holds", result.lower_bound_holds},
          {"neighbor_classes", result.neighbor_classes},
          {"neighbor_distances", result.neighbor_distances}};
}

}  // namespace dmetric
