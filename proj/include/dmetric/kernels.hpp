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

// Data-parallel inner loops. Every routine exists twice: an OpenMP version in
// dmetric::kernels and a plain loop in dmetric::serial kept as the reference
// for tests and benchmarks. Both produce bit-identical results at any thread
// count: per-item work depends only on the item index, integer counts are
// order-free, and floating-point partial sums are combined in index order.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dmetric/measure.hpp"
#include "dmetric/network.hpp"

namespace dmetric {

// 1..K when the argmax of `scores` is unique under tie_tol, 0 otherwise.
std::int32_t region_of_scores(std::span<const double> scores, double tie_tol);

// Sum over the cells of one grid row, given the row's y coordinate and the
// x coordinates of the cell midpoints.
using RowIntegrand = std::function<double(double y, std::span<const double> xs)>;

namespace kernels {

SampleSet sample(const InputMeasure& measure, std::size_t n, std::uint64_t seed);

std::vector<std::int32_t> region_indices(const NetworkParams& params, const SampleSet& samples,
                                         double tie_tol);

// Argmax-set bitmasks per sample (K <= 64).
std::vector<std::uint64_t> label_masks(const NetworkParams& params, const SampleSet& samples,
                                       double tie_tol);

template <class T>
std::size_t count_mismatches(std::span<const T> a, std::span<const T> b);

// Samples where params' region index differs from `reference`, without
// materialising the region vector.
std::size_t count_region_mismatches(const NetworkParams& params,
                                    std::span<const std::int32_t> reference,
                                    const SampleSet& samples, double tie_tol);

// Midpoint rule on a res x res grid over a 2-D box: cell area times the sum
// of row sums, rows combined in increasing order.
double midpoint_grid_2d(const Box& box, std::size_t res, const RowIntegrand& row);

// fn(i) for i in [0, n). fn must only write state owned by index i.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace kernels

namespace serial {

SampleSet sample(const InputMeasure& measure, std::size_t n, std::uint64_t seed);
std::vector<std::int32_t> region_indices(const NetworkParams& params, const SampleSet& samples,
                                         double tie_tol);
std::vector<std::uint64_t> label_masks(const NetworkParams& params, const SampleSet& samples,
                                       double tie_tol);
template <class T>
std::size_t count_mismatches(std::span<const T> a, std::span<const T> b);
std::size_t count_region_mismatches(const NetworkParams& params,
                                    std::span<const std::int32_t> reference,
                                    const SampleSet& samples, double tie_tol);
double midpoint_grid_2d(const Box& box, std::size_t res, const RowIntegrand& row);
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace serial

// Thread count used by the kernels (wraps omp_get_max_threads/omp_set_num_threads).
int max_threads();
void set_threads(int n);

}  // namespace dmetric
