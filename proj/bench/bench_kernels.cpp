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

// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dmetric/kernels.hpp"
#include "dmetric/measure.hpp"
#include "dmetric/network.hpp"
#include "dmetric/oracle.hpp"

namespace {

using namespace dmetric;

InputMeasure square() { return InputMeasure::uniform(InputDomain::box({-3, -3}, {3, 3})); }

NetworkParams net(const std::vector<std::size_t>& dims) {
  auto gen = stream(1, StreamTag::random_networks, 0);
  std::normal_distribution<double> normal;
  std::vector<double> flat(param_count(dims));
  for (double& v : flat) v = normal(gen);
  return unflatten(dims, Activation::tanh(), flat);
}

template <bool Parallel>
void BM_sample(benchmark::State& state) {
  const auto m = InputMeasure::truncated_gaussian(InputDomain::box({-3, -3}, {3, 3}), {0, 0});
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto s = Parallel ? kernels::sample(m, n, 1) : serial::sample(m, n, 1);
    benchmark::DoNotOptimize(s.coords().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_region_indices(benchmark::State& state) {
  const auto samples = kernels::sample(square(), static_cast<std::size_t>(state.range(0)), 2);
  const auto w = net({2, 16, 16, 4});
  for (auto _ : state) {
    auto r = Parallel ? kernels::region_indices(w, samples, 0.0)
                      : serial::region_indices(w, samples, 0.0);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_region_mismatches(benchmark::State& state) {
  const auto samples = kernels::sample(square(), static_cast<std::size_t>(state.range(0)), 3);
  const auto w = net({2, 2});
  const auto v = net({2, 2});
  const auto ref = kernels::region_indices(w, samples, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::count_region_mismatches(v, ref, samples, 0.0)
                                      : serial::count_region_mismatches(v, ref, samples, 0.0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_midpoint_grid(benchmark::State& state) {
  const Box box{{-3, -3}, {3, 3}};
  const auto res = static_cast<std::size_t>(state.range(0));
  const RowIntegrand row = [](double y, std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x * y > 0.3 ? 1.0 : 0.0;
    return s;
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::midpoint_grid_2d(box, res, row)
                                      : serial::midpoint_grid_2d(box, res, row));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

}  // namespace

BENCHMARK(BM_sample<false>)->Name("sample/serial")->Arg(1 << 18);
BENCHMARK(BM_sample<true>)->Name("sample/openmp")->Arg(1 << 18)->UseRealTime();
BENCHMARK(BM_region_indices<false>)->Name("region_indices/serial")->Arg(1 << 18);
BENCHMARK(BM_region_indices<true>)->Name("region_indices/openmp")->Arg(1 << 18)->UseRealTime();
BENCHMARK(BM_region_mismatches<false>)->Name("region_mismatches/serial")->Arg(1 << 20);
BENCHMARK(BM_region_mismatches<true>)
    ->Name("region_mismatches/openmp")
    ->Arg(1 << 20)
    ->UseRealTime();
BENCHMARK(BM_midpoint_grid<false>)->Name("midpoint_grid/serial")->Arg(1024);
BENCHMARK(BM_midpoint_grid<true>)->Name("midpoint_grid/openmp")->Arg(1024)->UseRealTime();

BENCHMARK_MAIN();
