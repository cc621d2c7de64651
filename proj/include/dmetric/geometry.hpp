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

// Planar polygon helpers used by the closed-form disagreement oracle.

#include <vector>

namespace dmetric::geometry {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using Polygon = std::vector<Point>;

Polygon rectangle(double x0, double y0, double x1, double y1);

// Part of a convex polygon where a*x + b*y + c >= 0 (Sutherland-Hodgman).
Polygon clip(const Polygon& poly, double a, double b, double c);

// Absolute area by the shoelace formula.
double area(const Polygon& poly);

// Area of the intersection of a convex polygon with the disk of radius r
// centred at the origin.
double disk_intersection_area(const Polygon& poly, double r);

}  // namespace dmetric::geometry
