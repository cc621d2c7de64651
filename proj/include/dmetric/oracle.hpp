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
#include <functional>
#include <span>
#include <string_view>

#include "dmetric/measure.hpp"
#include "dmetric/network.hpp"

namespace dmetric {

// Decision rule of a single-layer two-class network on the plane: class 1
// where a*x1 + b*x2 + c > 0, class 2 where it is < 0, tie on the line.
// Exact for any strictly increasing activation, since act(z1) > act(z2)
// iff z1 > z2.
struct HalfPlane {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  // Zero normal: the decision is constant (c != 0) or tied everywhere (c == 0).
  bool degenerate() const { return a == 0.0 && b == 0.0; }
  double eval(double x1, double x2) const { return a * x1 + b * x2 + c; }
};

// Throws ArgumentError unless the network has L = 0, K = 2, n_0 = 2.
HalfPlane halfplane_of(const NetworkParams& params);

enum class OracleMethod {
  polygon_area,      // uniform box: clipped polygon
  disk_area,         // uniform ball: clipped polygon intersected with the disk
  normal_cdf,        // gaussian on a box with axis-aligned boundaries
  quadrature,        // midpoint rule fallback
};

std::string_view oracle_method_name(OracleMethod m);

struct OracleValue {
  double value = 0.0;
  OracleMethod method = OracleMethod::quadrature;
};

// mu{x : the two half-plane decisions differ}. Closed form where the geometry
// allows it, otherwise midpoint quadrature at `fallback_grid`. Throws
// DegeneracyError if either half-plane is degenerate; use quad_disagreement
// on the networks instead, which handles ties.
OracleValue exact_disagreement(const HalfPlane& h1, const HalfPlane& h2,
                               const InputMeasure& measure, std::size_t fallback_grid = 4096);

// Midpoint-rule integral of density * 1[region index differs] over a
// grid_res x grid_res grid on the domain's bounding box. 2-D inputs only
// (UnsupportedError otherwise); grid_res >= 64.
double quad_disagreement(const NetworkParams& w, const NetworkParams& w_prime,
                         const InputMeasure& measure, std::size_t grid_res,
                         double tie_tol = 0.0);

// Midpoint-rule integral of density * 1[event(x)] on a 2-D measure.
double quad_measure(const InputMeasure& measure, std::size_t grid_res,
                    const std::function<bool(std::span<const double>)>& event);

}  // namespace dmetric
