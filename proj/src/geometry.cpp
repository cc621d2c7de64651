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

#include "dmetric/geometry.hpp"

#include <cmath>

namespace dmetric::geometry {

namespace {

double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

// Signed area of the circular sector between rays 0->u and 0->v.
double sector(Point u, Point v, double r) { return 0.5 * r * r * std::atan2(cross(u, v), dot(u, v)); }

// Signed area of disk(0, r) intersected with triangle (0, a, b).
double triangle_disk(Point a, Point b, double r) {
  const double r2 = r * r;
  const bool a_in = dot(a, a) <= r2;
  const bool b_in = dot(b, b) <= r2;
  if (a_in && b_in) return 0.5 * cross(a, b);

  const Point d{b.x - a.x, b.y - a.y};
  const double dd = dot(d, d);
  if (dd == 0.0) return 0.0;
  const double ad = dot(a, d);
  const double disc = ad * ad - dd * (dot(a, a) - r2);
  if (disc <= 0.0) return sector(a, b, r);
  const double s = std::sqrt(disc);
  const double t1 = (-ad - s) / dd;
  const double t2 = (-ad + s) / dd;
  auto at = [&](double t) { return Point{a.x + t * d.x, a.y + t * d.y}; };

  if (a_in) {
    const Point p = at(t2);
    return 0.5 * cross(a, p) + sector(p, b, r);
  }
  if (b_in) {
    const Point p = at(t1);
    return sector(a, p, r) + 0.5 * cross(p, b);
  }
  if (t1 >= 1.0 || t2 <= 0.0) return sector(a, b, r);
  const Point p1 = at(t1);
  const Point p2 = at(t2);
  return sector(a, p1, r) + 0.5 * cross(p1, p2) + sector(p2, b, r);
}

}  // namespace

Polygon rectangle(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

Polygon clip(const Polygon& poly, double a, double b, double c) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point p = poly[i];
    const Point q = poly[(i + 1) % n];
    const double fp = a * p.x + b * p.y + c;
    const double fq = a * q.x + b * q.y + c;
    if (fp >= 0.0) out.push_back(p);
    if ((fp >= 0.0) != (fq >= 0.0)) {
      const double t = fp / (fp - fq);
      out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  return out;
}

double area(const Polygon& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * std::abs(s);
}

double disk_intersection_area(const Polygon& poly, double r) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    s += triangle_disk(poly[i], poly[(i + 1) % poly.size()], r);
  }
  return std::abs(s);
}

}  // namespace dmetric::geometry
