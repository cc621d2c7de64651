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

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

namespace dmetric {

// Elementwise nonlinearity. Every kind is continuous and strictly increasing
// on the reals; the plain rectifier is deliberately absent because it is flat
// on the negative half-line.
class Activation {
 public:
  enum class Kind { identity, tanh, logistic, leaky_rectifier, softplus };

  constexpr Activation() = default;

  static Activation identity() { return Activation(Kind::identity, 0.0); }
  static Activation tanh() { return Activation(Kind::tanh, 0.0); }
  static Activation logistic() { return Activation(Kind::logistic, 0.0); }
  static Activation softplus() { return Activation(Kind::softplus, 0.0); }
  // Throws DomainError unless slope > 0.
  static Activation leaky_rectifier(double slope);

  Kind kind() const { return kind_; }
  // Negative-side slope; only meaningful for leaky_rectifier.
  double slope() const { return slope_; }

  inline double operator()(double z) const;

  // Snake-case name used in JSON documents ("leaky_rectifier", ...).
  std::string_view name() const;
  // Inverse of name(); the slope is only consulted for leaky_rectifier.
  static Activation from_name(std::string_view name, double slope = 0.01);

  friend bool operator==(const Activation&, const Activation&) = default;

 private:
  constexpr Activation(Kind kind, double slope) : kind_(kind), slope_(slope) {}

  Kind kind_ = Kind::identity;
  double slope_ = 0.0;
};

inline double Activation::operator()(double z) const {
  switch (kind_) {
    case Kind::identity:
      return z;
    case Kind::tanh:
      return std::tanh(z);
    case Kind::logistic:
      return 1.0 / (1.0 + std::exp(-z));
    case Kind::leaky_rectifier:
      return z >= 0.0 ? z : slope_ * z;
    case Kind::softplus:
      // log(1 + e^z) without overflow for large |z|.
      return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
  }
  return z;
}

}  // namespace dmetric
