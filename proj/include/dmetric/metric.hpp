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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dmetric/measure.hpp"
#include "dmetric/network.hpp"

namespace dmetric {

// Index of the output-space region containing f_w(x): k in 1..K when class k
// strictly wins, 0 on the tie set (boundaries between the class regions).
struct RegionIndex {
  std::int32_t k = 0;

  bool is_tie() const { return k == 0; }
  friend auto operator<=>(const RegionIndex&, const RegionIndex&) = default;
};

enum class Estimator { disagreement, symmetric_difference, exact, quadrature, label_set };

std::string_view estimator_name(Estimator e);

// A probability estimate from N Bernoulli outcomes. ci_half_width is the 95%
// normal-approximation half-width 1.96 * sqrt(p(1-p)/N).
struct DistanceEstimate {
  double value = 0.0;
  std::size_t n_samples = 0;
  double ci_half_width = 0.0;
  Estimator estimator = Estimator::disagreement;

  static DistanceEstimate from_count(std::size_t hits, std::size_t n, Estimator estimator);
};

nlohmann::json to_json(const DistanceEstimate& estimate);

RegionIndex region_index(const NetworkParams& params, std::span<const double> x,
                         double tie_tol = 0.0);

// d_mu as the probability that the region indices of w and w' differ,
// estimated on `samples`. Symmetric by construction.
DistanceEstimate d_mu_disagreement(const NetworkParams& w, const NetworkParams& w_prime,
                                   const SampleSet& samples, double tie_tol = 0.0);

// d_mu as half the sum over k = 0..K of the empirical measure of
// Omega_k(w) symmetric-difference Omega_k(w'). Equals d_mu_disagreement
// exactly on the same samples.
DistanceEstimate d_mu_symdiff(const NetworkParams& w, const NetworkParams& w_prime,
                              const SampleSet& samples, double tie_tol = 0.0);

// Diagnostic: disagreement of the raw argmax label sets. Differs from the
// region-index estimators only where both networks tie on different class sets
// (possible for K >= 3).
DistanceEstimate d_mu_labelset(const NetworkParams& w, const NetworkParams& w_prime,
                               const SampleSet& samples, double tie_tol = 0.0);

// Same estimators from precomputed per-sample region indices.
DistanceEstimate disagreement_from_regions(std::span<const std::int32_t> a,
                                           std::span<const std::int32_t> b);
DistanceEstimate symdiff_from_regions(std::span<const std::int32_t> a,
                                      std::span<const std::int32_t> b, std::size_t num_classes);

// Ground-truth labelling: point -> class in 1..K.
using Labeling = std::function<int(std::span<const double>)>;

// Fraction of samples whose predicted label set is not exactly {truth(x)}.
DistanceEstimate generalization_error(const NetworkParams& w, const Labeling& truth,
                                      const SampleSet& samples, double tie_tol = 0.0);

// Empirical mass of the tie set Omega_0(w).
DistanceEstimate omega0_mass(const NetworkParams& w, const SampleSet& samples,
                             double tie_tol = 0.0);

}  // namespace dmetric
