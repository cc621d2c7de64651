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
#include <span>
#include <vector>

#include "json.hpp"

#include "dmetric/activation.hpp"

namespace dmetric {

// Dense row-major matrix. Only what the network evaluator needs.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Number of scalar parameters, sum over layers of n_l * (n_{l-1} + 1).
std::size_t param_count(std::span<const std::size_t> layer_dims);

// Feedforward classifier: layer l maps y to act(W_l y + b_l), the activation
// is applied at every layer including the output one. layer_dims holds
// (n_0, n_1, ..., n_{L+1}); the last entry is the number of classes K.
class NetworkParams {
 public:
  // Validates shapes; throws ShapeError on mismatch.
  NetworkParams(std::vector<std::size_t> layer_dims, std::vector<Matrix> weights,
                std::vector<std::vector<double>> biases, Activation activation);

  // All-zero network of the given architecture.
  static NetworkParams zeros(std::vector<std::size_t> layer_dims, Activation activation);

  const std::vector<std::size_t>& layer_dims() const { return dims_; }
  const std::vector<Matrix>& weights() const { return weights_; }
  const std::vector<std::vector<double>>& biases() const { return biases_; }
  const Activation& activation() const { return activation_; }

  std::size_t input_dim() const { return dims_.front(); }
  std::size_t num_classes() const { return dims_.back(); }
  // L + 1, the number of affine maps.
  std::size_t num_layers() const { return weights_.size(); }
  std::size_t param_count() const { return dmetric::param_count(dims_); }
  std::size_t max_width() const;

  friend bool operator==(const NetworkParams&, const NetworkParams&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<Matrix> weights_;
  std::vector<std::vector<double>> biases_;
  Activation activation_;
};

// Reusable buffers for allocation-free evaluation in hot loops. One per thread.
class Evaluator {
 public:
  explicit Evaluator(const NetworkParams& params);

  // Output scores f_w(x). No finiteness or shape checks; the returned span is
  // valid until the next call.
  std::span<const double> scores(std::span<const double> x);

  const NetworkParams& params() const { return *params_; }

 private:
  const NetworkParams* params_;
  std::vector<double> a_;
  std::vector<double> b_;
};

struct LabelPrediction {
  // 1-based class indices in increasing order; never empty.
  std::vector<int> labels;
  bool is_tie = false;
};

// f_w(x). Throws ShapeError on dimension mismatch, DomainError on non-finite x.
std::vector<double> forward(const NetworkParams& params, std::span<const double> x);

// Argmax set {j : f_j >= max_i f_i - tie_tol}. The random guess among tied
// labels is left to the caller.
LabelPrediction predict(const NetworkParams& params, std::span<const double> x,
                        double tie_tol = 0.0);

// Argmax set of a raw score vector, as a bitmask over 0-based classes
// (bit j set iff class j+1 is in the set). Requires scores.size() <= 64.
std::uint64_t argmax_mask(std::span<const double> scores, double tie_tol);
LabelPrediction labels_of_scores(std::span<const double> scores, double tie_tol);

// Per layer: vec(W_l) in column-major order followed by b_l; layers in order.
std::vector<double> flatten(const NetworkParams& params);
NetworkParams unflatten(std::span<const std::size_t> layer_dims, Activation activation,
                        std::span<const double> flat);

double euclidean_distance(std::span<const double> a, std::span<const double> b);

// JSON document {"layer_dims", "activation":{"kind",...}, "weights" (row-major
// nested arrays), "biases"}.
nlohmann::json to_json(const NetworkParams& params);
NetworkParams network_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Activation& activation);
Activation activation_from_json(const nlohmann::json& doc);

}  // namespace dmetric
