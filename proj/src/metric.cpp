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

#include "dmetric/metric.hpp"

#include <algorithm>
#include <cmath>

#include "dmetric/error.hpp"
#include "dmetric/kernels.hpp"

namespace dmetric {

std::string_view estimator_name(Estimator e) {
  switch (e) {
    case Estimator::disagreement:
      return "disagreement";
    case Estimator::symmetric_difference:
      return "symmetric_difference";
    case Estimator::exact:
      return "exact";
    case Estimator::quadrature:
      return "quadrature";
    case Estimator::label_set:
      return "label_set";
  }
  return "disagreement";
}

DistanceEstimate DistanceEstimate::from_count(std::size_t hits, std::size_t n,
                                              Estimator estimator) {
  if (n == 0) throw ArgumentError("estimate needs at least one sample");
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  const double half = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return {p, n, half, estimator};
}

nlohmann::json to_json(const DistanceEstimate& estimate) {
  return {{"value", estimate.value},
          {"n", estimate.n_samples},
          {"ci95", estimate.ci_half_width},
          {"estimator", std::string(estimator_name(estimate.estimator))}};
}

namespace {

void require_samples(const SampleSet& samples) {
  if (samples.empty()) throw ArgumentError("sample set is empty");
}

void require_same_arch(const NetworkParams& w, const NetworkParams& w_prime) {
  if (w.input_dim() != w_prime.input_dim() || w.num_classes() != w_prime.num_classes()) {
    throw ShapeError("networks differ in input dimension or number of classes");
  }
}

}  // namespace

RegionIndex region_index(const NetworkParams& params, std::span<const double> x, double tie_tol) {
  if (!(tie_tol >= 0.0)) throw ArgumentError("tie_tol must be >= 0");
  return {region_of_scores(forward(params, x), tie_tol)};
}

DistanceEstimate disagreement_from_regions(std::span<const std::int32_t> a,
                                           std::span<const std::int32_t> b) {
  if (a.empty()) throw ArgumentError("sample set is empty");
  return DistanceEstimate::from_count(kernels::count_mismatches(a, b), a.size(),
                                      Estimator::disagreement);
}

DistanceEstimate symdiff_from_regions(std::span<const std::int32_t> a,
                                      std::span<const std::int32_t> b, std::size_t num_classes) {
  if (a.empty()) throw ArgumentError("sample set is empty");
  if (a.size() != b.size()) throw ShapeError("region vectors differ in length");
  // Counting measure of each Omega_k(w) xor Omega_k(w'), summed over k as
  // integers; the common 1/N factor is applied once at the end.
  std::vector<std::size_t> per_class(num_classes + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k <= num_classes; ++k) {
      const auto kk = static_cast<std::int32_t>(k);
      per_class[k] += (a[i] == kk) != (b[i] == kk);
    }
  }
  std::size_t total = 0;
  for (std::size_t c : per_class) total += c;
  // Each differing sample lies in exactly two symmetric differences.
  const double n = static_cast<double>(a.size());
  const double value = 0.5 * static_cast<double>(total) / n;
  const double half = 1.96 * std::sqrt(value * (1.0 - value) / n);
  return {value, a.size(), half, Estimator::symmetric_difference};
}

DistanceEstimate d_mu_disagreement(const NetworkParams& w, const NetworkParams& w_prime,
                                   const SampleSet& samples, double tie_tol) {
  require_samples(samples);
  require_same_arch(w, w_prime);
  const auto a = kernels::region_indices(w, samples, tie_tol);
  return DistanceEstimate::from_count(
      kernels::count_region_mismatches(w_prime, a, samples, tie_tol), samples.size(),
      Estimator::disagreement);
}

DistanceEstimate d_mu_symdiff(const NetworkParams& w, const NetworkParams& w_prime,
                              const SampleSet& samples, double tie_tol) {
  require_samples(samples);
  require_same_arch(w, w_prime);
  const auto a = kernels::region_indices(w, samples, tie_tol);
  const auto b = kernels::region_indices(w_prime, samples, tie_tol);
  return symdiff_from_regions(a, b, w.num_classes());
}

DistanceEstimate d_mu_labelset(const NetworkParams& w, const NetworkParams& w_prime,
                               const SampleSet& samples, double tie_tol) {
  require_samples(samples);
  require_same_arch(w, w_prime);
  const auto a = kernels::label_masks(w, samples, tie_tol);
  const auto b = kernels::label_masks(w_prime, samples, tie_tol);
  return DistanceEstimate::from_count(kernels::count_mismatches<std::uint64_t>(a, b),
                                      samples.size(), Estimator::label_set);
}

DistanceEstimate generalization_error(const NetworkParams& w, const Labeling& truth,
                                      const SampleSet& samples, double tie_tol) {
  require_samples(samples);
  const auto masks = kernels::label_masks(w, samples, tie_tol);
  const auto k_max = static_cast<int>(w.num_classes());
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const int label = truth(samples.point(i));
    if (label < 1 || label > k_max) {
      throw DomainError("ground-truth label outside 1..K");
    }
    wrong += masks[i] != (std::uint64_t{1} << (label - 1));
  }
  return DistanceEstimate::from_count(wrong, samples.size(), Estimator::disagreement);
}

DistanceEstimate omega0_mass(const NetworkParams& w, const SampleSet& samples, double tie_tol) {
  require_samples(samples);
  const auto r = kernels::region_indices(w, samples, tie_tol);
  const auto ties = static_cast<std::size_t>(std::count(r.begin(), r.end(), 0));
  return DistanceEstimate::from_count(ties, samples.size(), Estimator::disagreement);
}

}  // namespace dmetric
