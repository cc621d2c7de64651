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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "json.hpp"

#include "dmetric/measure.hpp"
#include "dmetric/metric.hpp"
#include "dmetric/network.hpp"

namespace dmetric {

// Networks grouped into empirical equivalence classes: members within
// `threshold` estimated distance of their class representative.
struct ClassPartition {
  std::vector<std::vector<double>> representatives;  // flat vectors
  std::vector<std::size_t> representative_inputs;    // input index of each representative
  std::vector<std::size_t> assignment;               // input index -> class index
  double threshold = 0.0;

  std::size_t num_classes() const { return representatives.size(); }
};

// d_mu_disagreement(w, w') <= threshold. With threshold 0 and N samples this
// certifies d_mu < 3/N at 95% confidence.
bool same_class(const NetworkParams& w, const NetworkParams& w_prime, const SampleSet& samples,
                double threshold = 0.0, double tie_tol = 0.0);

// Greedy leader clustering in input order: each network joins the first
// representative within threshold, else starts a new class.
ClassPartition cluster_classes(const std::vector<NetworkParams>& networks,
                               const SampleSet& samples, double threshold = 0.0,
                               double tie_tol = 0.0);

struct AxiomReport {
  std::size_t n_networks = 0;
  std::size_t n_samples = 0;
  // Disagreement counts; distance(i, j) = counts(i, j) / n_samples.
  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::vector<double>> distances;
  std::size_t pairs_checked = 0;
  std::size_t ordered_triples_checked = 0;
  std::size_t distinct_triples = 0;  // n choose 3
  std::size_t nonnegativity_violations = 0;
  std::size_t identity_violations = 0;
  std::size_t symmetry_violations = 0;
  std::size_t triangle_violations = 0;

  std::size_t total_violations() const {
    return nonnegativity_violations + identity_violations + symmetry_violations +
           triangle_violations;
  }
};

// Checks the metric axioms on one shared sample set. Every ordered pair is
// estimated independently (so symmetry is tested, not assumed) and the
// triangle inequality is checked over all ordered triples on the exact
// counting measure. Needs >= 3 networks.
AxiomReport metric_axiom_suite(const std::vector<NetworkParams>& networks,
                               const SampleSet& samples, double tie_tol = 0.0);

struct ContinuityProbeResult {
  std::vector<double> center;
  double radius = 0.0;
  std::size_t n_neighbors = 0;
  double max_quotient_distance = 0.0;
  double max_ci_half_width = 0.0;
  std::vector<double> argmax_neighbor;
  double omega0_mass_center = 0.0;
  double omega0_ci_half_width = 0.0;
  // Tie-set mass / 2: the distance floor to any tie-free neighbour.
  double lower_bound = 0.0;
  bool lower_bound_holds = true;
  // Distinct empirical classes among the neighbours (threshold 0).
  std::size_t neighbor_classes = 0;
  std::vector<double> neighbor_distances;
};

// Draws n_neighbors points uniformly from the Euclidean ball of `radius`
// around the center's flat vector and measures the distance to each.
// Neighbour j uses stream(seed, probe_neighbors, j).
ContinuityProbeResult continuity_probe(const NetworkParams& center, double radius,
                                       std::size_t n_neighbors, const SampleSet& samples,
                                       std::uint64_t seed, double tie_tol = 0.0);

nlohmann::json to_json(const ClassPartition& partition);
nlohmann::json to_json(const AxiomReport& report);
nlohmann::json to_json(const ContinuityProbeResult& result);

}  // namespace dmetric
