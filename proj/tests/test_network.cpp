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
#include <limits>
#include <vector>

#include "doctest.h"

#include "dmetric/activation.hpp"
#include "dmetric/error.hpp"
#include "dmetric/network.hpp"
#include "support.hpp"

using namespace dmetric;
using dmetric::testing::w1;

TEST_CASE("activations are strictly increasing") {
  const std::vector<Activation> acts{Activation::identity(), Activation::tanh(),
                                     Activation::logistic(), Activation::softplus(),
                                     Activation::leaky_rectifier(0.1)};
  for (const auto& act : acts) {
    CAPTURE(act.name());
    double prev = act(-5.0);
    for (double z = -4.9; z <= 5.0; z += 0.1) {
      const double v = act(z);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("activation values") {
  CHECK(Activation::identity()(-2.5) == -2.5);
  CHECK(Activation::logistic()(0.0) == 0.5);
  CHECK(Activation::tanh()(0.0) == 0.0);
  CHECK(Activation::softplus()(0.0) == doctest::Approx(std::log(2.0)));
  CHECK(Activation::softplus()(800.0) == 800.0);
  CHECK(Activation::leaky_rectifier(0.1)(-2.0) == doctest::Approx(-0.2));
  CHECK(Activation::leaky_rectifier(0.1)(3.0) == 3.0);
}

TEST_CASE("activation names round-trip") {
  for (const auto& act : {Activation::identity(), Activation::tanh(), Activation::logistic(),
                          Activation::softplus()}) {
    CHECK(Activation::from_name(act.name()) == act);
  }
  CHECK(Activation::from_name("leaky_rectifier", 0.2) == Activation::leaky_rectifier(0.2));
  CHECK_THROWS_AS(Activation::from_name("relu"), DomainError);
  CHECK_THROWS_AS(Activation::from_name("swish"), DomainError);
  CHECK_THROWS_AS(Activation::leaky_rectifier(0.0), DomainError);
  CHECK_THROWS_AS(Activation::leaky_rectifier(-1.0), DomainError);
}

TEST_CASE("param_count") {
  CHECK(param_count(std::vector<std::size_t>{2, 2}) == 6);
  CHECK(param_count(std::vector<std::size_t>{2, 3, 2}) == 17);
  CHECK(param_count(std::vector<std::size_t>{4, 8, 8, 3}) == 40 + 72 + 27);
}

TEST_CASE("forward on the toy network") {
  const auto net = w1();
  const std::vector<double> x{0.0, 0.0};
  const auto f = forward(net, x);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == doctest::Approx(0.9));
  CHECK(f[1] == doctest::Approx(1.0));

  const std::vector<double> y{1.0, -1.0};
  const auto g = forward(net, y);
  CHECK(g[0] == doctest::Approx(0.8 - 1.0 + 0.9));
  CHECK(g[1] == doctest::Approx(1.0 - 1.0 + 1.0));
}

TEST_CASE("forward of the zero network is zero") {
  const auto net = NetworkParams::zeros({3, 4, 2}, Activation::identity());
  const std::vector<double> x{1.5, -2.0, 7.0};
  for (double v : forward(net, x)) CHECK(v == 0.0);
}

TEST_CASE("forward rejects bad input") {
  const auto net = w1();
  CHECK_THROWS_AS(forward(net, std::vector<double>{1.0}), ShapeError);
  CHECK_THROWS_AS(forward(net, std::vector<double>{1.0, std::nan("")}), DomainError);
  CHECK_THROWS_AS(
      forward(net, std::vector<double>{std::numeric_limits<double>::infinity(), 0.0}),
      DomainError);
}

TEST_CASE("constructor validates shapes") {
  CHECK_THROWS_AS(NetworkParams({2, 2}, {Matrix(2, 3)}, {{0.0, 0.0}}, Activation::identity()),
                  ShapeError);
  CHECK_THROWS_AS(NetworkParams({2, 2}, {Matrix(2, 2)}, {{0.0}}, Activation::identity()),
                  ShapeError);
  CHECK_THROWS_AS(NetworkParams({2, 2}, {}, {}, Activation::identity()), ShapeError);
}

TEST_CASE("predict and ties") {
  const auto net = w1();
  const std::vector<double> x{0.0, 0.0};
  auto p = predict(net, x);
  CHECK(p.labels == std::vector<int>{2});
  CHECK_FALSE(p.is_tie);

  // f1 - f2 = -0.2 x1 - 0.1, zero at x1 = -0.5
  const std::vector<double> on_line{-0.5, 0.3};
  p = predict(net, on_line, 1e-12);
  CHECK(p.labels == std::vector<int>{1, 2});
  CHECK(p.is_tie);

  CHECK(argmax_mask(std::vector<double>{1.0, 3.0, 3.0, 0.0}, 0.0) == 0b0110);
  CHECK(argmax_mask(std::vector<double>{1.0, 3.0, 2.95, 0.0}, 0.1) == 0b0110);
  CHECK(labels_of_scores(std::vector<double>{5.0, 1.0}, 0.0).labels == std::vector<int>{1});
}

TEST_CASE("argmax is invariant under the output activation") {
  const std::vector<std::vector<double>> zs{{0.1, -0.3, 0.2}, {1.0, 1.0, -4.0}, {-2, -1, -3}};
  for (const auto& act : {Activation::tanh(), Activation::logistic(), Activation::softplus(),
                          Activation::leaky_rectifier(0.05)}) {
    for (const auto& z : zs) {
      std::vector<double> s;
      for (double v : z) s.push_back(act(v));
      CHECK(argmax_mask(z, 0.0) == argmax_mask(s, 0.0));
    }
  }
}

TEST_CASE("flatten uses column-major weights then biases") {
  const auto net = w1();
  CHECK(net.weights()[0](0, 0) == 0.8);
  CHECK(net.weights()[0](1, 0) == 1.0);
  CHECK(net.biases()[0][0] == 0.9);
  CHECK(flatten(net) == std::vector<double>{0.8, 1, 1, 1, 0.9, 1});

  Matrix w(2, 3, std::vector<double>{1, 2, 3, 4, 5, 6});
  const NetworkParams p({3, 2}, {w}, {{7, 8}}, Activation::tanh());
  CHECK(flatten(p) == std::vector<double>{1, 4, 2, 5, 3, 6, 7, 8});
}

TEST_CASE("unflatten inverts flatten") {
  const std::vector<std::size_t> dims{3, 5, 4, 2};
  const auto net = dmetric::testing::random_network(dims, Activation::softplus(), 11, 0);
  const auto flat = flatten(net);
  CHECK(flat.size() == param_count(dims));
  CHECK(unflatten(dims, Activation::softplus(), flat) == net);
  CHECK_THROWS_AS(unflatten(dims, Activation::softplus(),
                            std::span<const double>(flat).first(flat.size() - 1)),
                  ShapeError);
}

TEST_CASE("euclidean distances of the toy triple") {
  const auto a = flatten(w1());
  const auto b = flatten(dmetric::testing::w2());
  const auto c = flatten(dmetric::testing::w3());
  CHECK(euclidean_distance(a, b) == doctest::Approx(0.282842712474619).epsilon(1e-14));
  CHECK(euclidean_distance(a, c) == doctest::Approx(3.959797974644666).epsilon(1e-14));
  CHECK(euclidean_distance(b, c) == doctest::Approx(4.242640687119285).epsilon(1e-14));
  CHECK(euclidean_distance(a, a) == 0.0);
  CHECK_THROWS_AS(euclidean_distance(a, std::vector<double>{1.0}), ShapeError);
}

TEST_CASE("network json round-trip") {
  const auto net = dmetric::testing::random_network({2, 3, 2}, Activation::leaky_rectifier(0.1),
                                                    5, 1);
  const auto doc = to_json(net);
  CHECK(doc.at("activation").at("kind") == "leaky_rectifier");
  CHECK(doc.at("weights").size() == 2);
  CHECK(doc.at("weights")[0].size() == 3);
  CHECK(network_from_json(nlohmann::json::parse(doc.dump())) == net);
  CHECK(activation_from_json("tanh") == Activation::tanh());
}
