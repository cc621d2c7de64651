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

#include "dmetric/kernels.hpp"

#include <algorithm>

#include <fmt/core.h>
#include <omp.h>

#include "dmetric/error.hpp"

namespace dmetric {

std::int32_t region_of_scores(std::span<const double> scores, double tie_tol) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < scores.size(); ++j) {
    if (scores[j] > scores[best]) best = j;
  }
  const double cut = scores[best] - tie_tol;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (j != best && scores[j] >= cut) return 0;
  }
  return static_cast<std::int32_t>(best) + 1;
}

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) {
  if (n < 1) throw ArgumentError("thread count must be >= 1");
  omp_set_num_threads(n);
}

namespace {

void check_dims(const NetworkParams& params, const SampleSet& samples) {
  if (!samples.empty() && samples.dim() != params.input_dim()) {
    throw ShapeError(fmt::format("samples have dimension {}, network expects {}",
                                 samples.dim(), params.input_dim()));
  }
}

void check_tol(double tie_tol) {
  if (!(tie_tol >= 0.0)) throw ArgumentError("tie_tol must be >= 0");
}

void check_grid(const Box& box, std::size_t res) {
  if (box.lower.size() != 2) throw UnsupportedError("grid quadrature needs a 2-D box");
  if (res == 0) throw ArgumentError("grid resolution must be positive");
}

std::vector<double> midpoints(double lo, double hi, std::size_t res) {
  const double h = (hi - lo) / static_cast<double>(res);
  std::vector<double> xs(res);
  for (std::size_t j = 0; j < res; ++j) xs[j] = lo + (static_cast<double>(j) + 0.5) * h;
  return xs;
}

double cell_area(const Box& box, std::size_t res) {
  const double r = static_cast<double>(res);
  return (box.upper[0] - box.lower[0]) / r * (box.upper[1] - box.lower[1]) / r;
}

}  // namespace

namespace kernels {

SampleSet sample(const InputMeasure& measure, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ArgumentError("sample count must be >= 1");
  const std::size_t dim = measure.dim();
  std::vector<double> coords(n * dim);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    auto gen = stream(seed, StreamTag::input_samples, static_cast<std::uint64_t>(i));
    draw(measure, gen, std::span<double>(coords.data() + static_cast<std::size_t>(i) * dim, dim));
  }
  return SampleSet(dim, std::move(coords));
}

std::vector<std::int32_t> region_indices(const NetworkParams& params, const SampleSet& samples,
                                         double tie_tol) {
  check_dims(params, samples);
  check_tol(tie_tol);
  std::vector<std::int32_t> out(samples.size());
  const auto count = static_cast<std::int64_t>(samples.size());
#pragma omp parallel
  {
    Evaluator eval(params);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      const auto k = static_cast<std::size_t>(i);
      out[k] = region_of_scores(eval.scores(samples.point(k)), tie_tol);
    }
  }
  return out;
}

std::vector<std::uint64_t> label_masks(const NetworkParams& params, const SampleSet& samples,
                                       double tie_tol) {
  check_dims(params, samples);
  check_tol(tie_tol);
  if (params.num_classes() > 64) throw UnsupportedError("label masks need K <= 64");
  std::vector<std::uint64_t> out(samples.size());
  const auto count = static_cast<std::int64_t>(samples.size());
#pragma omp parallel
  {
    Evaluator eval(params);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      const auto k = static_cast<std::size_t>(i);
      out[k] = argmax_mask(eval.scores(samples.point(k)), tie_tol);
    }
  }
  return out;
}

template <class T>
std::size_t count_mismatches(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw ShapeError("mismatch count over spans of different length");
  const auto count = static_cast<std::int64_t>(a.size());
  std::int64_t total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (std::int64_t i = 0; i < count; ++i) {
    total += a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)];
  }
  return static_cast<std::size_t>(total);
}

template std::size_t count_mismatches<std::int32_t>(std::span<const std::int32_t>,
                                                    std::span<const std::int32_t>);
template std::size_t count_mismatches<std::uint64_t>(std::span<const std::uint64_t>,
                                                     std::span<const std::uint64_t>);

std::size_t count_region_mismatches(const NetworkParams& params,
                                    std::span<const std::int32_t> reference,
                                    const SampleSet& samples, double tie_tol) {
  check_dims(params, samples);
  check_tol(tie_tol);
  if (reference.size() != samples.size()) throw ShapeError("reference length != sample count");
  const auto count = static_cast<std::int64_t>(samples.size());
  std::int64_t total = 0;
#pragma omp parallel reduction(+ : total)
  {
    Evaluator eval(params);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      const auto k = static_cast<std::size_t>(i);
      total += region_of_scores(eval.scores(samples.point(k)), tie_tol) != reference[k];
    }
  }
  return static_cast<std::size_t>(total);
}

double midpoint_grid_2d(const Box& box, std::size_t res, const RowIntegrand& row) {
  check_grid(box, res);
  const auto xs = midpoints(box.lower[0], box.upper[0], res);
  const auto ys = midpoints(box.lower[1], box.upper[1], res);
  std::vector<double> row_sums(res);
  const auto count = static_cast<std::int64_t>(res);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < count; ++i) {
    row_sums[static_cast<std::size_t>(i)] = row(ys[static_cast<std::size_t>(i)], xs);
  }
  double total = 0.0;
  for (double s : row_sums) total += s;
  return total * cell_area(box, res);
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
}

}  // namespace kernels

namespace serial {

SampleSet sample(const InputMeasure& measure, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ArgumentError("sample count must be >= 1");
  const std::size_t dim = measure.dim();
  std::vector<double> coords(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    auto gen = stream(seed, StreamTag::input_samples, i);
    draw(measure, gen, std::span<double>(coords.data() + i * dim, dim));
  }
  return SampleSet(dim, std::move(coords));
}

std::vector<std::int32_t> region_indices(const NetworkParams& params, const SampleSet& samples,
                                         double tie_tol) {
  check_dims(params, samples);
  check_tol(tie_tol);
  std::vector<std::int32_t> out(samples.size());
  Evaluator eval(params);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out[i] = region_of_scores(eval.scores(samples.point(i)), tie_tol);
  }
  return out;
}

std::vector<std::uint64_t> label_masks(const NetworkParams& params, const SampleSet& samples,
                                       double tie_tol) {
  check_dims(params, samples);
  check_tol(tie_tol);
  if (params.num_classes() > 64) throw UnsupportedError("label masks need K <= 64");
  std::vector<std::uint64_t> out(samples.size());
  Evaluator eval(params);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out[i] = argmax_mask(eval.scores(samples.point(i)), tie_tol);
  }
  return out;
}

template <class T>
std::size_t count_mismatches(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw ShapeError("mismatch count over spans of different length");
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += a[i] != b[i];
  return total;
}

template std::size_t count_mismatches<std::int32_t>(std::span<const std::int32_t>,
                                                    std::span<const std::int32_t>);
template std::size_t count_mismatches<std::uint64_t>(std::span<const std::uint64_t>,
                                                     std::span<const std::uint64_t>);

std::size_t count_region_mismatches(const NetworkParams& params,
                                    std::span<const std::int32_t> reference,
                                    const SampleSet& samples, double tie_tol) {
  check_dims(params, samples);
  check_tol(tie_tol);
  if (reference.size() != samples.size()) throw ShapeError("reference length != sample count");
  Evaluator eval(params);
  std::size_t total = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    total += region_of_scores(eval.scores(samples.point(i)), tie_tol) != reference[i];
  }
  return total;
}

double midpoint_grid_2d(const Box& box, std::size_t res, const RowIntegrand& row) {
  check_grid(box, res);
  const auto xs = midpoints(box.lower[0], box.upper[0], res);
  const auto ys = midpoints(box.lower[1], box.upper[1], res);
  double total = 0.0;
  for (std::size_t i = 0; i < res; ++i) total += row(ys[i], xs);
  return total * cell_area(box, res);
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace serial

}  // namespace dmetric

namespace dmetric {

SampleSet sample(const InputMeasure& measure, std::size_t n, std::uint64_t seed) {
  return kernels::sample(measure, n, seed);
}

}  // namespace dmetric
