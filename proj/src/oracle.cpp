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

#include "dmetric/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "dmetric/error.hpp"
#include "dmetric/geometry.hpp"
#include "dmetric/kernels.hpp"

namespace dmetric {

std::string_view oracle_method_name(OracleMethod m) {
  switch (m) {
    case OracleMethod::polygon_area:
      return "polygon_area";
    case OracleMethod::disk_area:
      return "disk_area";
    case OracleMethod::normal_cdf:
      return "normal_cdf";
    case OracleMethod::quadrature:
      return "quadrature";
  }
  return "quadrature";
}

HalfPlane halfplane_of(const NetworkParams& params) {
  if (params.num_layers() != 1 || params.num_classes() != 2 || params.input_dim() != 2) {
    throw ArgumentError("half-plane form needs a single-layer network with n_0 = 2, K = 2");
  }
  const Matrix& w = params.weights()[0];
  const auto& bias = params.biases()[0];
  return {w(0, 0) - w(1, 0), w(0, 1) - w(1, 1), bias[0] - bias[1]};
}

namespace {

using geometry::Polygon;

// Area of {h_pos > 0, h_neg < 0} within `base`.
double wedge_area(const Polygon& base, const HalfPlane& pos, const HalfPlane& neg,
                  const std::function<double(const Polygon&)>& area_of) {
  Polygon p = geometry::clip(base, pos.a, pos.b, pos.c);
  p = geometry::clip(p, -neg.a, -neg.b, -neg.c);
  return p.size() < 3 ? 0.0 : area_of(p);
}

double disagreement_area(const Polygon& base, const HalfPlane& h1, const HalfPlane& h2,
                         const std::function<double(const Polygon&)>& area_of) {
  return wedge_area(base, h1, h2, area_of) + wedge_area(base, h2, h1, area_of);
}

// Axis-aligned boundary alpha * t + gamma = 0 along one coordinate.
struct AxisRule {
  std::size_t axis;
  double alpha;
  double gamma;
  bool positive(double t) const { return alpha * t + gamma > 0.0; }
};

std::optional<AxisRule> axis_rule(const HalfPlane& h) {
  if (h.b == 0.0) return AxisRule{0, h.a, h.c};
  if (h.a == 0.0) return AxisRule{1, h.b, h.c};
  return std::nullopt;
}

// Truncated standard-normal mass (shifted by the mean) of [lo, hi].
double axis_mass(double lo, double hi, double mean) {
  return normal_cdf(hi - mean) - normal_cdf(lo - mean);
}

// Mass, relative to the axis interval, of the t where `pred` holds; pred is
// constant between the given breakpoints.
template <class Pred>
double axis_fraction(double lo, double hi, double mean, std::vector<double> breaks, Pred pred) {
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double s = std::clamp(breaks[i], lo, hi);
    const double e = std::clamp(breaks[i + 1], lo, hi);
    if (!(e > s)) continue;
    if (pred(0.5 * (s + e))) mass += axis_mass(s, e, mean);
  }
  return mass / axis_mass(lo, hi, mean);
}

std::optional<double> gaussian_box_closed_form(const HalfPlane& h1, const HalfPlane& h2,
                                               const InputMeasure& measure) {
  const auto r1 = axis_rule(h1);
  const auto r2 = axis_rule(h2);
  if (!r1 || !r2) return std::nullopt;
  const Box& box = measure.domain().bounds();
  const auto& mean = measure.mean();
  auto interval = [&](std::size_t axis) {
    return std::array<double, 3>{box.lower[axis], box.upper[axis], mean[axis]};
  };
  if (r1->axis == r2->axis) {
    const auto [lo, hi, m] = interval(r1->axis);
    return axis_fraction(lo, hi, m, {-r1->gamma / r1->alpha, -r2->gamma / r2->alpha},
                         [&](double t) { return r1->positive(t) != r2->positive(t); });
  }
  // Boundaries on different axes: the two decisions are independent under a
  // product measure.
  auto positive_mass = [&](const AxisRule& r) {
    const auto [lo, hi, m] = interval(r.axis);
    return axis_fraction(lo, hi, m, {-r.gamma / r.alpha},
                         [&](double t) { return r.positive(t); });
  };
  const double p1 = positive_mass(*r1);
  const double p2 = positive_mass(*r2);
  return p1 * (1.0 - p2) + (1.0 - p1) * p2;
}

}  // namespace

double quad_measure(const InputMeasure& measure, std::size_t grid_res,
                    const std::function<bool(std::span<const double>)>& event) {
  if (measure.dim() != 2) throw UnsupportedError("quadrature oracle is 2-D only");
  if (grid_res < 1) throw ArgumentError("grid resolution must be positive");
  const Box box = measure.domain().bounding_box();
  return kernels::midpoint_grid_2d(box, grid_res, [&](double y, std::span<const double> xs) {
    double sum = 0.0;
    std::array<double, 2> p{0.0, y};
    for (double x : xs) {
      p[0] = x;
      const double d = density(measure, p);
      if (d > 0.0 && event(p)) sum += d;
    }
    return sum;
  });
}

OracleValue exact_disagreement(const HalfPlane& h1, const HalfPlane& h2,
                               const InputMeasure& measure, std::size_t fallback_grid) {
  if (h1.degenerate() || h2.degenerate()) {
    throw DegeneracyError(
        "half-plane with zero normal (constant or all-tie decision); use quad_disagreement");
  }
  if (measure.dim() != 2) throw ShapeError("half-plane oracle needs a 2-D measure");
  const InputDomain& dom = measure.domain();

  if (measure.law() == InputMeasure::Law::uniform) {
    const Box bb = dom.bounding_box();
    const Polygon base = geometry::rectangle(bb.lower[0], bb.lower[1], bb.upper[0], bb.upper[1]);
    if (dom.kind() == InputDomain::Kind::box) {
      const double a = disagreement_area(base, h1, h2, geometry::area);
      return {a / dom.volume(), OracleMethod::polygon_area};
    }
    const double r = dom.radius();
    const double a = disagreement_area(
        base, h1, h2, [r](const Polygon& p) { return geometry::disk_intersection_area(p, r); });
    return {a / dom.volume(), OracleMethod::disk_area};
  }

  if (dom.kind() == InputDomain::Kind::box) {
    if (auto v = gaussian_box_closed_form(h1, h2, measure)) return {*v, OracleMethod::normal_cdf};
  }
  const double v = quad_measure(measure, fallback_grid, [&](std::span<const double> x) {
    return (h1.eval(x[0], x[1]) > 0.0) != (h2.eval(x[0], x[1]) > 0.0);
  });
  return {v, OracleMethod::quadrature};
}

double quad_disagreement(const NetworkParams& w, const NetworkParams& w_prime,
                         const InputMeasure& measure, std::size_t grid_res, double tie_tol) {
  if (w.input_dim() != 2 || w_prime.input_dim() != 2 || measure.dim() != 2) {
    throw UnsupportedError("quadrature oracle is 2-D only");
  }
  if (grid_res < 64) throw ArgumentError("quadrature oracle needs grid_res >= 64");
  if (!(tie_tol >= 0.0)) throw ArgumentError("tie_tol must be >= 0");
  const Box box = measure.domain().bounding_box();
  return kernels::midpoint_grid_2d(box, grid_res, [&](double y, std::span<const double> xs) {
    Evaluator e1(w);
    Evaluator e2(w_prime);
    double sum = 0.0;
    std::array<double, 2> p{0.0, y};
    for (double x : xs) {
      p[0] = x;
      const double d = density(measure, p);
      if (d == 0.0) continue;
      if (region_of_scores(e1.scores(p), tie_tol) != region_of_scores(e2.scores(p), tie_tol)) {
        sum += d;
      }
    }
    return sum;
  });
}

}  // namespace dmetric
