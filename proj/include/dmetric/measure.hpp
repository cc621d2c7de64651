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
#include <string>
#include <vector>

#include "json.hpp"

#include "dmetric/rng.hpp"

namespace dmetric {

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  friend bool operator==(const Box&, const Box&) = default;
};

// Bounded input domain: a closed origin-centred Euclidean ball or an
// axis-aligned box.
class InputDomain {
 public:
  enum class Kind { ball, box };

  // Throws DomainError unless radius is finite and > 0.
  static InputDomain ball(std::size_t dim, double radius);
  // Throws DomainError unless every bound is finite with lower < upper.
  static InputDomain box(std::vector<double> lower, std::vector<double> upper);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  double radius() const { return radius_; }
  const Box& bounds() const { return box_; }

  bool contains(std::span<const double> x) const;
  // Lebesgue volume.
  double volume() const;
  // Tight axis-aligned box around the domain (the box itself for boxes).
  Box bounding_box() const;
  // Euclidean distance from p to the domain, 0 when p is inside.
  double distance_to(std::span<const double> p) const;

  friend bool operator==(const InputDomain&, const InputDomain&) = default;

 private:
  Kind kind_ = Kind::box;
  std::size_t dim_ = 0;
  double radius_ = 0.0;
  Box box_;
};

// Points stored contiguously, point i at [i*dim, (i+1)*dim).
class SampleSet {
 public:
  SampleSet() = default;
  SampleSet(std::size_t dim, std::vector<double> coords);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ ? coords_.size() / dim_ : 0; }
  bool empty() const { return size() == 0; }
  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  std::span<const double> coords() const { return coords_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

// Probability measure on a bounded domain: uniform, or an identity-covariance
// Gaussian restricted to the domain and renormalised.
class InputMeasure {
 public:
  enum class Law { uniform, truncated_gaussian };

  static InputMeasure uniform(InputDomain domain);
  // Throws ShapeError on a mean of the wrong dimension and DomainError when
  // the domain carries less than 1e-9 of the untruncated Gaussian mass.
  static InputMeasure truncated_gaussian(InputDomain domain, std::vector<double> mean);

  const InputDomain& domain() const { return domain_; }
  Law law() const { return law_; }
  const std::vector<double>& mean() const { return mean_; }
  std::size_t dim() const { return domain_.dim(); }

  // Probability that an untruncated N(mean, I) draw lands in the domain.
  // 1 for the uniform law.
  double gaussian_mass() const { return gaussian_mass_; }

  friend bool operator==(const InputMeasure&, const InputMeasure&) = default;

 private:
  InputMeasure(InputDomain domain, Law law, std::vector<double> mean, double normalizer,
               double gaussian_mass);

  friend double density(const InputMeasure&, std::span<const double>);

  InputDomain domain_;
  Law law_ = Law::uniform;
  std::vector<double> mean_;
  // Uniform: the constant density. Gaussian: integral over the domain of
  // exp(-|x-m|^2/2).
  double normalizer_ = 1.0;
  double gaussian_mass_ = 1.0;
};

// One draw from the measure using `gen`; writes measure.dim() coordinates.
// Uniform ball: Gaussian direction with radius M * U^(1/n). Truncated
// Gaussian: rejection from the untruncated law.
void draw(const InputMeasure& measure, SplitMix64& gen, std::span<double> out);

// n i.i.d. draws. Point i depends only on (seed, i), so the result is the
// same at any thread count.
SampleSet sample(const InputMeasure& measure, std::size_t n, std::uint64_t seed);

// Normalised density; 0 outside the domain.
double density(const InputMeasure& measure, std::span<const double> x);

// Supremum of the density over the domain, so that mu(U) <= kappa * |U|.
// Uniform ball: Gamma(n/2 + 1) / (pi^{n/2} M^n). Zero-mean Gaussian on a
// ball: 1 / integral of exp(-|x|^2/2) over the ball.
double kappa(const InputMeasure& measure);

// Standard normal CDF.
double normal_cdf(double x);

nlohmann::json to_json(const InputMeasure& measure);
// Accepts {"domain":{"kind":"box","bounds":[[lo,hi],...]} |
// {"kind":"ball","radius":r,"dim":n}, "law":"uniform"|"truncated_gaussian",
// "mean":[...]}. Unknown fields are rejected with ConfigError.
InputMeasure measure_from_json(const nlohmann::json& doc, const std::string& path = "measure");

}  // namespace dmetric
