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

// Fixtures shared by the unit tests.

#include <cstdint>
#include <random>
#include <vector>

#include "dmetric/measure.hpp"
#include "dmetric/network.hpp"
#include "dmetric/rng.hpp"

namespace dmetric::testing {

inline const std::vector<std::size_t> kToyDims{2, 2};

inline NetworkParams toy(const std::vector<double>& flat,
                         Activation act = Activation::identity()) {
  return unflatten(kToyDims, act, flat);
}

inline NetworkParams w1(Activation act = Activation::identity()) {
  return toy({0.8, 1, 1, 1, 0.9, 1}, act);
}
inline NetworkParams w2(Activation act = Activation::identity()) {
  return toy({1, 1, 1, 1, 1.1, 1}, act);
}
inline NetworkParams w3(Activation act = Activation::identity()) {
  return toy({-2, 1, 1, 1, -1.9, 1}, act);
}
inline NetworkParams all_ones(Activation act = Activation::identity()) {
  return toy({1, 1, 1, 1, 1, 1}, act);
}

inline InputMeasure uniform_square(double half = 3.0) {
  return InputMeasure::uniform(InputDomain::box({-half, -half}, {half, half}));
}

inline InputMeasure gaussian_square(double half = 3.0) {
  return InputMeasure::truncated_gaussian(InputDomain::box({-half, -half}, {half, half}),
                                          {0.0, 0.0});
}

// Gaussian parameters, one stream per network.
inline NetworkParams random_network(const std::vector<std::size_t>& dims, Activation act,
                                    std::uint64_t seed, std::uint64_t index,
                                    double scale = 1.0) {
  auto gen = stream(seed, StreamTag::random_networks, index);
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> flat(param_count(dims));
  for (double& v : flat) v = normal(gen);
  return unflatten(dims, act, flat);
}

}  // namespace dmetric::testing
