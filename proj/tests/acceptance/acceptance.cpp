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

// Acceptance gate: one PASS/FAIL line per criterion. `acceptance --only N`
// runs a single criterion; exit status is nonzero if any selected one fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "dmetric/commands.hpp"
#include "dmetric/config.hpp"
#include "dmetric/kernels.hpp"
#include "dmetric/measure.hpp"
#include "dmetric/metric.hpp"
#include "dmetric/network.hpp"
#include "dmetric/oracle.hpp"
#include "dmetric/quotient.hpp"
#include "dmetric/rng.hpp"

using namespace dmetric;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<std::size_t> kToyDims{2, 2};

NetworkParams toy(std::vector<double> flat) {
  return unflatten(kToyDims, Activation::identity(), flat);
}

InputMeasure uniform_square() {
  return InputMeasure::uniform(InputDomain::box({-3, -3}, {3, 3}));
}

NetworkParams gaussian_network(const std::vector<std::size_t>& dims, Activation act,
                               std::uint64_t seed, std::uint64_t index) {
  auto gen = stream(seed, StreamTag::random_networks, index);
  std::normal_distribution<double> normal;
  std::vector<double> flat(param_count(dims));
  for (double& v : flat) v = normal(gen);
  return unflatten(dims, act, flat);
}

// Single-layer K = 2 network whose boundary crosses the middle of the square.
NetworkParams crossing_network(std::uint64_t seed, std::uint64_t index) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto net = gaussian_network(kToyDims, Activation::identity(), seed, index * 1000 + attempt);
    const auto h = halfplane_of(net);
    const double norm = std::hypot(h.a, h.b);
    if (norm > 0.1 && std::abs(h.c) / norm < 2.0) return net;
  }
}

Outcome ac1_euclidean() {
  const auto t0 = Clock::now();
  const auto a = flatten(toy({0.8, 1, 1, 1, 0.9, 1}));
  const auto b = flatten(toy({1, 1, 1, 1, 1.1, 1}));
  const auto c = flatten(toy({-2, 1, 1, 1, -1.9, 1}));
  struct Row {
    const char* pair;
    double ours;
    double expected;
  };
  const Row rows[] = {{"w1-w2", euclidean_distance(a, b), 0.283},
                      {"w1-w3", euclidean_distance(a, c), 3.959},
                      {"w2-w3", euclidean_distance(b, c), 4.243}};
  const double secs = seconds_since(t0);
  Outcome out{secs < 1.0, ""};
  for (const auto& r : rows) {
    const double diff = std::abs(r.ours - r.expected);
    out.pass = out.pass && diff <= 5e-4;
    out.detail += fmt::format("{} {:.6f} vs {} (|diff| {:.1e}{}); ", r.pair, r.ours, r.expected,
                              diff, diff <= 5e-4 ? "" : " > 5e-4");
  }
  out.detail += fmt::format("{:.3f} s", secs);
  return out;
}

Outcome ac2_triangulation() {
  const auto t0 = Clock::now();
  const auto measure = uniform_square();
  const auto samples = kernels::sample(measure, 100000, 2026);
  int mc_ok = 0;
  int quad_ok = 0;
  double worst_quad = 0.0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto w = crossing_network(7, 2 * i);
    const auto v = crossing_network(7, 2 * i + 1);
    const auto geom = exact_disagreement(halfplane_of(w), halfplane_of(v), measure);
    const auto mc = d_mu_disagreement(w, v, samples);
    const double quad = quad_disagreement(w, v, measure, 2048);
    mc_ok += std::abs(mc.value - geom.value) <= 3.0 * mc.ci_half_width;
    const double qd = std::abs(quad - geom.value);
    quad_ok += qd <= 3e-3;
    worst_quad = std::max(worst_quad, qd);
  }
  const double secs = seconds_since(t0);
  return {mc_ok >= 47 && quad_ok == 50 && secs < 120.0,
          fmt::format("MC within 3ci of geometry {}/50 (need 47); quadrature within 3e-3 {}/50, "
                      "worst {:.2e}; {:.1f} s",
                      mc_ok, quad_ok, worst_quad, secs)};
}

Outcome ac3_table_two() {
  auto cfg = load_config(DMETRIC_CONFIG_DIR "/toy.json");
  const auto report = cmd_tables(cfg);
  bool pass = cfg.n_samples == 1000000;
  std::string detail;
  struct Target {
    const char* measure;
    double quoted;
    double oracle;
  };
  const Target targets[] = {{"uniform", 0.0828, 7.0 / 90.0},
                            {"gaussian", 0.1395, 0.14206573937810102}};
  // w1 and w3 are networks 0 and 2 in the toy config.
  for (const auto& m : report.json.at("measures")) {
    for (const auto& t : targets) {
      if (m.at("name") != t.measure) continue;
      const double ours = m.at("d_mu").at(0).at(2).at("value");
      const double oracle = m.at("oracle").at(0).at(2).at("value");
      const bool ok = std::abs(ours - t.quoted) <= 0.01 && std::abs(oracle - t.quoted) <= 0.01 &&
                      std::abs(oracle - t.oracle) <= 1e-9;
      pass = pass && ok;
      detail += fmt::format("{}: ours {:.4f}, oracle {:.4f}, quoted {}; ", t.measure, ours,
                            oracle, t.quoted);
    }
  }
  // Both our value and the quoted one must be printed for every pair,
  // including the w2 entries that do not reproduce.
  int both = 0;
  for (const auto& c : report.json.at("comparisons")) {
    if (c.at("quantity") == "d_mu" && c.contains("ours") && c.contains("reference")) ++both;
  }
  pass = pass && both == 6 && report.summary.find("reference 0.9118") != std::string::npos;
  detail += fmt::format("{} of 6 side-by-side d_mu entries reported", both);
  return {pass, detail};
}

Outcome ac4_axioms() {
  const auto samples = kernels::sample(
      InputMeasure::truncated_gaussian(InputDomain::box({-3, -3}, {3, 3}), {0, 0}), 100000, 44);
  std::vector<NetworkParams> nets;
  for (std::uint64_t i = 0; i < 10; ++i) {
    nets.push_back(gaussian_network({2, 4, 3}, Activation::tanh(), 4, i));
  }
  const auto r = metric_axiom_suite(nets, samples);
  return {r.symmetry_violations == 0 && r.triangle_violations == 0 && r.distinct_triples == 120,
          fmt::format("symmetry {} / triangle {} violations over {} distinct ({} ordered) "
                      "triples; identity {}, nonnegativity {}",
                      r.symmetry_violations, r.triangle_violations, r.distinct_triples,
                      r.ordered_triples_checked, r.identity_violations,
                      r.nonnegativity_violations)};
}

Outcome ac5_symdiff() {
  const auto samples = kernels::sample(uniform_square(), 100000, 55);
  int equal = 0;
  int total = 0;
  auto check = [&](const std::vector<std::size_t>& dims, std::uint64_t seed, int pairs) {
    for (int i = 0; i < pairs; ++i) {
      const auto w = gaussian_network(dims, Activation::logistic(), seed, 2 * i);
      const auto v = gaussian_network(dims, Activation::logistic(), seed, 2 * i + 1);
      const auto d = d_mu_disagreement(w, v, samples);
      const auto s = d_mu_symdiff(w, v, samples);
      equal += std::memcmp(&d.value, &s.value, sizeof(double)) == 0;
      ++total;
    }
  };
  check({2, 2}, 51, 100);
  check({2, 5, 4}, 52, 20);
  return {equal == total, fmt::format("bit-identical in {}/{} pairs (100 K=2, 20 K=4)", equal,
                                      total)};
}

Outcome ac6_tie_sets() {
  const auto t0 = Clock::now();
  const auto samples = kernels::sample(uniform_square(), 100000, 66);
  const std::vector<std::size_t> small{2, 2};
  const std::vector<std::size_t> deep{2, 3, 2};
  // Flat parameters uniform in the radius-5 ball of each architecture.
  const auto ball_small = InputMeasure::uniform(InputDomain::ball(param_count(small), 5.0));
  const auto ball_deep = InputMeasure::uniform(InputDomain::ball(param_count(deep), 5.0));
  int zero = 0;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const bool use_deep = i % 2 == 1;
    const auto& ball = use_deep ? ball_deep : ball_small;
    std::vector<double> flat(ball.dim());
    auto gen = stream(6, StreamTag::random_networks, i);
    draw(ball, gen, flat);
    const auto net = use_deep ? unflatten(deep, Activation::leaky_rectifier(0.1), flat)
                              : unflatten(small, Activation::identity(), flat);
    const double m = omega0_mass(net, samples, 0.0).value;
    zero += m == 0.0;
    worst = std::max(worst, m);
  }
  const double secs = seconds_since(t0);
  return {zero == 1000 && secs < 300.0,
          fmt::format("omega0 mass exactly 0 for {}/1000 networks (max {}); {:.1f} s", zero,
                      worst, secs)};
}

Outcome ac7_continuity() {
  const auto measure = uniform_square();
  const auto samples = kernels::sample(measure, 100000, 77);
  const auto ones = toy({1, 1, 1, 1, 1, 1});
  const auto w1 = toy({0.8, 1, 1, 1, 0.9, 1});
  const double radii[] = {1e-2, 1e-3, 1e-4};
  const double bounds[] = {0.02, 0.005, 0.002};
  bool pass = true;
  std::string detail;
  for (int k = 0; k < 3; ++k) {
    const auto at_ones = continuity_probe(ones, radii[k], 200, samples, 70 + k);
    const bool ones_ok = at_ones.max_quotient_distance == 1.0 &&
                         at_ones.max_quotient_distance >= at_ones.omega0_mass_center / 2;
    const auto at_w1 = continuity_probe(w1, radii[k], 200, samples, 80 + k);
    const auto worst = toy(at_w1.argmax_neighbor);
    const double oracle =
        exact_disagreement(halfplane_of(w1), halfplane_of(worst), measure).value;
    const bool w1_ok = at_w1.max_quotient_distance <= bounds[k] && oracle <= bounds[k];
    pass = pass && ones_ok && w1_ok;
    detail += fmt::format("r={:g}: ones max {} (omega0/2 = {}), w1 max {:.5f} oracle {:.5f} "
                          "<= {}; ",
                          radii[k], at_ones.max_quotient_distance, at_ones.lower_bound,
                          at_w1.max_quotient_distance, oracle, bounds[k]);
  }
  return {pass, detail};
}

Outcome ac8_rays() {
  // In the (w^1, b^1) slice through the all-one network the boundary is
  // (w - 1) x1 + (b - 1) = 0, fixed along each ray from (1, 1).
  const auto samples = kernels::sample(uniform_square(), 100000, 88);
  auto slice = [](double w, double b) { return toy({w, 1, 1, 1, b, 1}); };
  int same_zero = 0;
  int cross_positive = 0;
  for (int i = 0; i < 20; ++i) {
    // boundary x1 = -(b - 1) / (w - 1) spread over [-2.5, 2.5]
    const double x = -2.5 + 5.0 * i / 19.0;
    const double angle = std::atan2(-x, 1.0);
    const double ux = std::cos(angle);
    const double uy = std::sin(angle);
    const double t1 = 0.3 + 0.05 * i;
    const double t2 = 1.7 + 0.1 * i;
    const auto a = slice(1 + t1 * ux, 1 + t1 * uy);
    const auto b = slice(1 + t2 * ux, 1 + t2 * uy);
    same_zero += d_mu_disagreement(a, b, samples).value == 0.0;

    // a second ray whose boundary sits 0.5 away, still inside the square
    const double x2 = x <= 2.0 ? x + 0.5 : x - 0.5;
    const double angle2 = std::atan2(-x2, 1.0);
    const auto c = slice(1 + t2 * std::cos(angle2), 1 + t2 * std::sin(angle2));
    cross_positive += d_mu_disagreement(a, c, samples).value > 0.0;
  }
  return {same_zero == 20 && cross_positive == 20,
          fmt::format("same-ray pairs at distance 0: {}/20; cross-ray pairs > 0: {}/20",
                      same_zero, cross_positive)};
}

Outcome ac9_kappa() {
  const double pi = std::acos(-1.0);
  const auto ub = InputMeasure::uniform(InputDomain::ball(2, 3.0));
  const auto box = uniform_square();
  const auto gb = InputMeasure::truncated_gaussian(InputDomain::ball(2, 3.0), {0, 0});
  const double k_ub = kappa(ub);
  const double k_box = kappa(box);
  const double k_gb = kappa(gb);
  // Gaussian ball cross-check: 1 / integral of exp(-|x|^2/2) over the disk,
  // by 2-D midpoint quadrature independent of the closed-form mass.
  const Box bb{{-3, -3}, {3, 3}};
  const double integral =
      kernels::midpoint_grid_2d(bb, 4096, [](double y, std::span<const double> xs) {
        double s = 0.0;
        for (double x : xs) {
          const double r2 = x * x + y * y;
          if (r2 <= 9.0) s += std::exp(-0.5 * r2);
        }
        return s;
      });
  const double k_quad = 1.0 / integral;
  std::size_t violations = 0;
  std::size_t probes = 0;
  for (const auto* m : {&ub, &box, &gb}) {
    const double k = kappa(*m);
    for (int i = 0; i < 512; ++i) {
      for (int j = 0; j < 512; ++j) {
        const double p[2] = {-3.0 + 6.0 * i / 511.0, -3.0 + 6.0 * j / 511.0};
        violations += density(*m, p) > k;
        ++probes;
      }
    }
  }
  const bool pass = std::abs(k_ub - 1.0 / (9 * pi)) <= 1e-6 && k_box == 1.0 / 36.0 &&
                    std::abs(k_gb - 0.16094) <= 1e-4 && std::abs(k_quad - 0.16094) <= 1e-4 &&
                    violations == 0;
  return {pass, fmt::format("uniform ball {:.9f} (1/(9 pi) = {:.9f}), box {} (1/36 {}), "
                            "gaussian ball {:.6f} (quadrature {:.6f}); {} violations on {} "
                            "probe points",
                            k_ub, 1.0 / (9 * pi), format_real(k_box),
                            k_box == 1.0 / 36.0 ? "exact" : "inexact", k_gb, k_quad,
                            violations, probes)};
}

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome ac10_determinism() {
  const fs::path dir = fs::temp_directory_path() / "dmetric_acceptance_ac10";
  fs::create_directories(dir);
  const std::string base = fmt::format("{} --threads {{}} sweep --config {}/sweep_small.json "
                                       "--seed 123 --out {}/{{}}.csv",
                                       DMETRIC_EXE, DMETRIC_TEST_DATA, dir.string());
  int rc = 0;
  for (const auto& [threads, name] : {std::pair{1, "t1a"}, std::pair{1, "t1b"},
                                      std::pair{8, "t8a"}, std::pair{8, "t8b"}}) {
    rc |= run(fmt::format(fmt::runtime(base), threads, name));
  }
  const std::string ref = slurp(dir / "t1a.csv");
  const bool same = !ref.empty() && ref == slurp(dir / "t1b.csv") &&
                    ref == slurp(dir / "t8a.csv") && ref == slurp(dir / "t8b.csv");
  const auto rows = std::count(ref.begin(), ref.end(), '\n');
  fs::remove_all(dir);
  return {rc == 0 && same,
          fmt::format("exit status {}; 4 runs (1 and 8 threads) {}; {} CSV lines", rc,
                      same ? "byte-identical" : "DIFFER", rows)};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "Euclidean distances of the toy triple", ac1_euclidean},
      {2, "Monte Carlo, geometry and quadrature agree", ac2_triangulation},
      {3, "toy w1-w3 distances against the quoted table", ac3_table_two},
      {4, "metric axioms on shared samples", ac4_axioms},
      {5, "symmetric-difference estimator identity", ac5_symdiff},
      {6, "tie sets of random networks have zero mass", ac6_tie_sets},
      {7, "continuity probe at and away from the tie set", ac7_continuity},
      {8, "ray invariance in the (w1, b1) slice", ac8_rays},
      {9, "density bounds kappa", ac9_kappa},
      {10, "sweep output independent of thread count", ac10_determinism},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  int failed = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] AC%d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str());
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
