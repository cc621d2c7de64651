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

#include "dmetric/activation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dmetric/error.hpp"

namespace dmetric {

Activation Activation::leaky_rectifier(double slope) {
  if (!(slope > 0.0) || !std::isfinite(slope)) {
    throw DomainError("leaky_rectifier slope must be a positive finite number");
  }
  return Activation(Kind::leaky_rectifier, slope);
}

std::string_view Activation::name() const {
  switch (kind_) {
    case Kind::identity:
      return "identity";
    case Kind::tanh:
      return "tanh";
    case Kind::logistic:
      return "logistic";
    case Kind::leaky_rectifier:
      return "leaky_rectifier";
    case Kind::softplus:
      return "softplus";
  }
  return "identity";
}

Activation Activation::from_name(std::string_view name, double slope) {
  if (name == "identity") return identity();
  if (name == "tanh") return tanh();
  if (name == "logistic") return logistic();
  if (name == "softplus") return softplus();
  if (name == "leaky_rectifier") return leaky_rectifier(slope);
  if (name == "relu" || name == "rectifier") {
    throw DomainError("plain rectifier is not strictly increasing; use leaky_rectifier");
  }
  throw DomainError("unknown activation kind '" + std::string(name) + "'");
}

}  // namespace dmetric
