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

#include "dmetric/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/core.h>

#include "dmetric/error.hpp"

namespace dmetric {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) {
    throw ShapeError(fmt::format("matrix data has {} entries, expected {}x{}", data_.size(),
                                 rows, cols));
  }
}

std::size_t param_count(std::span<const std::size_t> layer_dims) {
  std::size_t m = 0;
  for (std::size_t l = 1; l < layer_dims.size(); ++l) {
    m += layer_dims[l] * (layer_dims[l - 1] + 1);
  }
  return m;
}

namespace {

void validate_dims(std::span<const std::size_t> dims) {
  if (dims.size() < 2) {
    throw ShapeError("layer_dims needs at least an input and an output size");
  }
  for (std::size_t d : dims) {
    if (d == 0) throw ShapeError("layer_dims entries must be positive");
  }
}

}  // namespace

NetworkParams::NetworkParams(std::vector<std::size_t> layer_dims, std::vector<Matrix> weights,
                             std::vector<std::vector<double>> biases, Activation activation)
    : dims_(std::move(layer_dims)),
      weights_(std::move(weights)),
      biases_(std::move(biases)),
      activation_(activation) {
  validate_dims(dims_);
  const std::size_t layers = dims_.size() - 1;
  if (weights_.size() != layers || biases_.size() != layers) {
    throw ShapeError(fmt::format("expected {} weight matrices and bias vectors, got {} and {}",
                                 layers, weights_.size(), biases_.size()));
  }
  for (std::size_t l = 0; l < layers; ++l) {
    if (weights_[l].rows() != dims_[l + 1] || weights_[l].cols() != dims_[l]) {
      throw ShapeError(fmt::format("layer {} weight is {}x{}, expected {}x{}", l + 1,
                                   weights_[l].rows(), weights_[l].cols(), dims_[l + 1],
                                   dims_[l]));
    }
    if (biases_[l].size() != dims_[l + 1]) {
      throw ShapeError(fmt::format("layer {} bias has length {}, expected {}", l + 1,
                                   biases_[l].size(), dims_[l + 1]));
    }
  }
}

NetworkParams NetworkParams::zeros(std::vector<std::size_t> layer_dims, Activation activation) {
  validate_dims(layer_dims);
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;
  for (std::size_t l = 1; l < layer_dims.size(); ++l) {
    weights.emplace_back(layer_dims[l], layer_dims[l - 1]);
    biases.emplace_back(layer_dims[l], 0.0);
  }
  return NetworkParams(std::move(layer_dims), std::move(weights), std::move(biases), activation);
}

std::size_t NetworkParams::max_width() const {
  return *std::max_element(dims_.begin(), dims_.end());
}

Evaluator::Evaluator(const NetworkParams& params)
    : params_(&params), a_(params.max_width()), b_(params.max_width()) {}

std::span<const double> Evaluator::scores(std::span<const double> x) {
  const auto& weights = params_->weights();
  const auto& biases = params_->biases();
  const Activation act = params_->activation();
  std::copy(x.begin(), x.end(), a_.begin());
  std::size_t width = x.size();
  for (std::size_t l = 0; l < weights.size(); ++l) {
    const Matrix& w = weights[l];
    for (std::size_t r = 0; r < w.rows(); ++r) {
      double z = biases[l][r];
      const auto row = w.row(r);
      for (std::size_t c = 0; c < width; ++c) z += row[c] * a_[c];
      b_[r] = act(z);
    }
    width = w.rows();
    std::swap(a_, b_);
  }
  return {a_.data(), width};
}

std::vector<double> forward(const NetworkParams& params, std::span<const double> x) {
  if (x.size() != params.input_dim()) {
    throw ShapeError(fmt::format("input has dimension {}, network expects {}", x.size(),
                                 params.input_dim()));
  }
  if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) {
    throw DomainError("network input contains a non-finite value");
  }
  Evaluator eval(params);
  auto out = eval.scores(x);
  return {out.begin(), out.end()};
}

std::uint64_t argmax_mask(std::span<const double> scores, double tie_tol) {
  const double top = *std::max_element(scores.begin(), scores.end());
  const double cut = top - tie_tol;
  std::uint64_t mask = 0;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (scores[j] >= cut) mask |= std::uint64_t{1} << j;
  }
  return mask;
}

LabelPrediction labels_of_scores(std::span<const double> scores, double tie_tol) {
  if (tie_tol < 0.0 || std::isnan(tie_tol)) throw ArgumentError("tie_tol must be >= 0");
  if (scores.empty()) throw ShapeError("empty score vector");
  const double top = *std::max_element(scores.begin(), scores.end());
  LabelPrediction out;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (scores[j] >= top - tie_tol) out.labels.push_back(static_cast<int>(j) + 1);
  }
  out.is_tie = out.labels.size() > 1;
  return out;
}

LabelPrediction predict(const NetworkParams& params, std::span<const double> x, double tie_tol) {
  if (tie_tol < 0.0 || std::isnan(tie_tol)) throw ArgumentError("tie_tol must be >= 0");
  return labels_of_scores(forward(params, x), tie_tol);
}

std::vector<double> flatten(const NetworkParams& params) {
  std::vector<double> flat;
  flat.reserve(params.param_count());
  for (std::size_t l = 0; l < params.num_layers(); ++l) {
    const Matrix& w = params.weights()[l];
    for (std::size_t c = 0; c < w.cols(); ++c) {
      for (std::size_t r = 0; r < w.rows(); ++r) flat.push_back(w(r, c));
    }
    const auto& b = params.biases()[l];
    flat.insert(flat.end(), b.begin(), b.end());
  }
  return flat;
}

NetworkParams unflatten(std::span<const std::size_t> layer_dims, Activation activation,
                        std::span<const double> flat) {
  validate_dims(layer_dims);
  const std::size_t m = param_count(layer_dims);
  if (flat.size() != m) {
    throw ShapeError(fmt::format("flat vector has length {}, architecture needs {}",
                                 flat.size(), m));
  }
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;
  std::size_t pos = 0;
  for (std::size_t l = 1; l < layer_dims.size(); ++l) {
    Matrix w(layer_dims[l], layer_dims[l - 1]);
    for (std::size_t c = 0; c < w.cols(); ++c) {
      for (std::size_t r = 0; r < w.rows(); ++r) w(r, c) = flat[pos++];
    }
    weights.push_back(std::move(w));
    biases.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                        flat.begin() + static_cast<std::ptrdiff_t>(pos + layer_dims[l]));
    pos += layer_dims[l];
  }
  return NetworkParams({layer_dims.begin(), layer_dims.end()}, std::move(weights),
                       std::move(biases), activation);
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ShapeError(fmt::format("vectors have lengths {} and {}", a.size(), b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

nlohmann::json to_json(const Activation& activation) {
  nlohmann::json doc = {{"kind", std::string(activation.name())}};
  if (activation.kind() == Activation::Kind::leaky_rectifier) doc["slope"] = activation.slope();
  return doc;
}

Activation activation_from_json(const nlohmann::json& doc) {
  if (doc.is_string()) return Activation::from_name(doc.get<std::string>());
  if (!doc.is_object() || !doc.contains("kind")) {
    throw ShapeError("activation must be an object with a \"kind\" field");
  }
  for (const auto& [key, _] : doc.items()) {
    if (key != "kind" && key != "slope") {
      throw ShapeError("activation: unknown field '" + key + "'");
    }
  }
  const double slope = doc.value("slope", 0.01);
  return Activation::from_name(doc.at("kind").get<std::string>(), slope);
}

nlohmann::json to_json(const NetworkParams& params) {
  nlohmann::json weights = nlohmann::json::array();
  for (const Matrix& w : params.weights()) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < w.rows(); ++r) {
      auto row = w.row(r);
      rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    weights.push_back(std::move(rows));
  }
  return {{"layer_dims", params.layer_dims()},
          {"activation", to_json(params.activation())},
          {"weights", std::move(weights)},
          {"biases", params.biases()}};
}

NetworkParams network_from_json(const nlohmann::json& doc) {
  try {
    auto dims = doc.at("layer_dims").get<std::vector<std::size_t>>();
    validate_dims(dims);
    std::vector<Matrix> weights;
    for (const auto& rows : doc.at("weights")) {
      const std::size_t n_rows = rows.size();
      const std::size_t n_cols = n_rows ? rows.at(0).size() : 0;
      std::vector<double> data;
      for (const auto& row : rows) {
        if (row.size() != n_cols) throw ShapeError("ragged weight matrix");
        for (const auto& v : row) data.push_back(v.get<double>());
      }
      weights.emplace_back(n_rows, n_cols, std::move(data));
    }
    auto biases = doc.at("biases").get<std::vector<std::vector<double>>>();
    return NetworkParams(std::move(dims), std::move(weights), std::move(biases),
                         activation_from_json(doc.at("activation")));
  } catch (const nlohmann::json::exception& e) {
    throw ShapeError(std::string("network document: ") + e.what());
  }
}

}  // namespace dmetric
