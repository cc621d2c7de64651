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

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "dmetric/error.hpp"
#include "dmetric/geometry.hpp"
#include "dmetric/metric.hpp"
#include "dmetric/oracle.hpp"
#include "support.hpp"

using namespace dmetric;
using std::numbers::pi;
namespace t = dmetric::testing;
namespace g = dmetric::geometry;

TEST_CASE("polygon clipping and area") {
  const auto sq = g::rectangle(-3, -3, 3, 3);
  CHECK(g::area(sq) == 36.0);
  // keep x >= 1
  CHECK(g::area(g::clip(sq, 1.0, 0.0, -1.0)) == doctest::Approx(12.0));
  // keep x + y >= 0: half the square
  CHECK(g::area(g::clip(sq, 1.0, 1.0, 0.0)) == doctest::Approx(18.0));
  // line misses the square
  CHECK(g::clip(sq, 1.0, 0.0, -10.0).size() < 3);
  CHECK(g::area(g::clip(sq, 1.0, 0.0, 10.0)) == doctest::Approx(36.0));
}

TEST_CASE("disk intersection area") {
  const auto big = g::rectangle(-5, -5, 5, 5);
  CHECK(g::disk_intersection_area(big, 3.0) == doctest::Approx(9 * pi).epsilon(1e-13));
  const auto half = g::clip(big, 0.0, 1.0, 0.0);
  CHECK(g::disk_intersection_area(half, 3.0) == doctest::Approx(4.5 * pi).epsilon(1e-13));
  // square inscribed in the unit disk
  const double s = std::sqrt(0.5);
  CHECK(g::disk_intersection_area(g::rectangle(-s, -s, s, s), 1.0) ==
        doctest::Approx(2.0).epsilon(1e-13));
  // circular segment beyond x = 1 in a disk of radius 2
  const double h = 1.0;
  const double segment = 4.0 * std::acos(h / 2.0) - h * std::sqrt(4.0 - h * h);
  CHECK(g::disk_intersection_area(g::clip(big, 1.0, 0.0, -1.0), 2.0) ==
        doctest::Approx(segment).epsilon(1e-12));
  // polygon away from the origin
  CHECK(g::disk_intersection_area(g::rectangle(0.5, 0.5, 4, 4), 1.0) ==
        doctest::Approx(
            // quarter disk minus the two strips 0<x<0.5 and 0<y<0.5, plus their overlap
            pi / 4 - 2 * (0.5 * std::sqrt(0.75) / 2 + std::asin(0.5) / 2) + 0.25)
            .epsilon(1e-12));
}

TEST_CASE("half-plane of the toy networks") {
  const auto h = halfplane_of(t::w1());
  CHECK(h.a == doctest::Approx(-0.2));
  CHECK(h.b == 0.0);
  CHECK(h.c == doctest::Approx(-0.1));
  CHECK(halfplane_of(t::w2()).degenerate());
  CHECK(halfplane_of(t::all_ones()).degenerate());
  CHECK_THROWS_AS(halfplane_of(t::random_network({2, 3}, Activation::identity(), 1, 0)),
                  ArgumentError);
}

TEST_CASE("closed-form toy values") {
  const auto h1 = halfplane_of(t::w1());
  const auto h3 = halfplane_of(t::w3());
  const auto u = exact_disagreement(h1, h3, t::uniform_square());
  CHECK(u.method == OracleMethod::polygon_area);
  CHECK(u.value == doctest::Approx(7.0 / 90.0).epsilon(1e-13));
  const auto gs = exact_disagreement(h1, h3, t::gaussian_square());
  CHECK(gs.method == OracleMethod::normal_cdf);
  CHECK(gs.value == doctest::Approx(0.14206573937810102).epsilon(1e-12));
  CHECK_THROWS_AS(exact_disagreement(h1, halfplane_of(t::w2()), t::uniform_square()),
                  DegeneracyError);
}

TEST_CASE("closed forms on other domains") {
  // x1 > 0 vs x2 > 0 on the uniform disk: two opposite quarter disks
  const HalfPlane hx{1.0, 0.0, 0.0};
  const HalfPlane hy{0.0, 1.0, 0.0};
  const auto disk = InputMeasure::uniform(InputDomain::ball(2, 3.0));
  const auto d = exact_disagreement(hx, hy, disk);
  CHECK(d.method == OracleMethod::disk_area);
  CHECK(d.value == doctest::Approx(0.5).epsilon(1e-13));

  // independent axes under the truncated gaussian box
  const auto gs = t::gaussian_square();
  const HalfPlane hx1{1.0, 0.0, -1.0};
  const auto v = exact_disagreement(hx1, hy, gs);
  const double p1 = (normal_cdf(3) - normal_cdf(1)) / (normal_cdf(3) - normal_cdf(-3));
  CHECK(v.method == OracleMethod::normal_cdf);
  CHECK(v.value == doctest::Approx(p1 * 0.5 + (1 - p1) * 0.5).epsilon(1e-13));

  // oblique lines under a gaussian fall back to quadrature
  const auto q = exact_disagreement(HalfPlane{1.0, 1.0, 0.0}, hy, gs, 1024);
  CHECK(q.method == OracleMethod::quadrature);
  // rotationally symmetric law: the wedge between the two lines has angle pi/4, twice
  CHECK(q.value == doctest::Approx(0.25).epsilon(2e-3));
}

TEST_CASE("quadrature agrees with the closed forms") {
  const std::vector<InputMeasure> ms{t::uniform_square(), t::gaussian_square(),
                                     InputMeasure::uniform(InputDomain::ball(2, 3.0))};
  for (std::uint64_t i = 0; i < 6; ++i) {
    const auto a = t::random_network({2, 2}, Activation::identity(), 77, 2 * i);
    const auto b = t::random_network({2, 2}, Activation::identity(), 77, 2 * i + 1);
    for (const auto& m : ms) {
      const auto exact = exact_disagreement(halfplane_of(a), halfplane_of(b), m);
      CHECK(quad_disagreement(a, b, m, 1024) == doctest::Approx(exact.value).epsilon(5e-3));
    }
  }
}

TEST_CASE("quadrature handles degenerate networks") {
  // w2 is class 1 everywhere, w1 is class 2 for x1 > -1/2
  CHECK(quad_disagreement(t::w1(), t::w2(), t::uniform_square(), 512) ==
        doctest::Approx(3.5 / 6.0).epsilon(2e-3));
  CHECK(quad_disagreement(t::w1(), t::all_ones(), t::uniform_square(), 512) ==
        doctest::Approx(1.0));
  CHECK(quad_measure(t::gaussian_square(), 512, [](std::span<const double>) { return true; }) ==
        doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("quadrature argument checks") {
  CHECK_THROWS_AS(quad_disagreement(t::w1(), t::w2(), t::uniform_square(), 32), ArgumentError);
  const auto ball3 = InputMeasure::uniform(InputDomain::ball(3, 1.0));
  CHECK_THROWS_AS(quad_measure(ball3, 128, [](std::span<const double>) { return true; }),
                  UnsupportedError);
}
