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

#include "dmetric/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <fmt/core.h>

#include "dmetric/error.hpp"
#include "json_util.hpp"

namespace dmetric {

using std::numbers::pi;

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

InputDomain InputDomain::ball(std::size_t dim, double radius) {
  if (dim == 0) throw DomainError("ball dimension must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("ball radius must be finite and positive");
  }
  InputDomain d;
  d.kind_ = Kind::ball;
  d.dim_ = dim;
  d.radius_ = radius;
  return d;
}

InputDomain InputDomain::box(std::vector<double> lower, std::vector<double> upper) {
  if (lower.empty() || lower.size() != upper.size()) {
    throw DomainError("box bounds must be nonempty and of equal length");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(lower[i] < upper[i])) {
      throw DomainError(fmt::format("box axis {} needs finite bounds with lower < upper", i));
    }
  }
  InputDomain d;
  d.kind_ = Kind::box;
  d.dim_ = lower.size();
  d.box_ = Box{std::move(lower), std::move(upper)};
  return d;
}

bool InputDomain::contains(std::span<const double> x) const {
  if (x.size() != dim_) return false;
  if (kind_ == Kind::ball) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return r2 <= radius_ * radius_;
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!(x[i] >= box_.lower[i] && x[i] <= box_.upper[i])) return false;
  }
  return true;
}

double InputDomain::volume() const {
  if (kind_ == Kind::ball) {
    const double n = static_cast<double>(dim_);
    return std::pow(pi, n / 2) * std::pow(radius_, n) / std::tgamma(n / 2 + 1);
  }
  double v = 1.0;
  for (std::size_t i = 0; i < dim_; ++i) v *= box_.upper[i] - box_.lower[i];
  return v;
}

Box InputDomain::bounding_box() const {
  if (kind_ == Kind::box) return box_;
  return Box{std::vector<double>(dim_, -radius_), std::vector<double>(dim_, radius_)};
}

double InputDomain::distance_to(std::span<const double> p) const {
  if (p.size() != dim_) throw ShapeError("point dimension does not match domain");
  if (kind_ == Kind::ball) {
    double r2 = 0.0;
    for (double v : p) r2 += v * v;
    return std::max(0.0, std::sqrt(r2) - radius_);
  }
  double d2 = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double c = std::clamp(p[i], box_.lower[i], box_.upper[i]);
    d2 += (p[i] - c) * (p[i] - c);
  }
  return std::sqrt(d2);
}

SampleSet::SampleSet(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim == 0 || coords_.size() % dim != 0) {
    throw ShapeError("sample coordinates are not a whole number of points");
  }
}

InputMeasure::InputMeasure(InputDomain domain, Law law, std::vector<double> mean,
                           double normalizer, double gaussian_mass)
    : domain_(std::move(domain)),
      law_(law),
      mean_(std::move(mean)),
      normalizer_(normalizer),
      gaussian_mass_(gaussian_mass) {}

namespace {

// Constant density of the uniform law; Gamma(n/2 + 1) / (pi^{n/2} M^n) on a ball.
double uniform_density(const InputDomain& dom) {
  if (dom.kind() == InputDomain::Kind::ball) {
    const double n = static_cast<double>(dom.dim());
    return std::tgamma(n / 2 + 1) / (std::pow(pi, n / 2) * std::pow(dom.radius(), n));
  }
  return 1.0 / dom.volume();
}

}  // namespace

InputMeasure InputMeasure::uniform(InputDomain domain) {
  // normalizer_ holds the density itself for the uniform law.
  const double level = uniform_density(domain);
  return InputMeasure(std::move(domain), Law::uniform, {}, level, 1.0);
}

InputMeasure InputMeasure::truncated_gaussian(InputDomain domain, std::vector<double> mean) {
  if (mean.size() != domain.dim()) {
    throw ShapeError(fmt::format("gaussian mean has dimension {}, domain has {}", mean.size(),
                                 domain.dim()));
  }
  for (double m : mean) {
    if (!std::isfinite(m)) throw DomainError("gaussian mean must be finite");
  }
  const double n = static_cast<double>(domain.dim());
  double mass = 1.0;
  if (domain.kind() == InputDomain::Kind::box) {
    const Box& b = domain.bounds();
    for (std::size_t i = 0; i < mean.size(); ++i) {
      mass *= normal_cdf(b.upper[i] - mean[i]) - normal_cdf(b.lower[i] - mean[i]);
    }
  } else {
    // |X|^2 for X ~ N(mean, I) is (noncentral) chi-square with n degrees of freedom.
    double offset2 = 0.0;
    for (double m : mean) offset2 += m * m;
    const double r2 = domain.radius() * domain.radius();
    if (offset2 == 0.0) {
      mass = boost::math::gamma_p(n / 2, r2 / 2);
    } else {
      boost::math::non_central_chi_squared_distribution<double> chi2(n, offset2);
      mass = boost::math::cdf(chi2, r2);
    }
  }
  if (!(mass > 1e-9)) {
    throw DomainError("domain carries (almost) none of the gaussian mass");
  }
  const double normalizer = std::pow(2 * pi, n / 2) * mass;
  return InputMeasure(std::move(domain), Law::truncated_gaussian, std::move(mean), normalizer,
                      mass);
}

double density(const InputMeasure& measure, std::span<const double> x) {
  if (!measure.domain_.contains(x)) return 0.0;
  if (measure.law_ == InputMeasure::Law::uniform) return measure.normalizer_;
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - measure.mean_[i];
    r2 += d * d;
  }
  return std::exp(-0.5 * r2) / measure.normalizer_;
}

double kappa(const InputMeasure& measure) {
  const InputDomain& dom = measure.domain();
  if (measure.law() == InputMeasure::Law::uniform) return uniform_density(dom);
  // Peak of exp(-|x-m|^2/2) over the domain is at the point closest to m.
  const double d = dom.distance_to(measure.mean());
  return std::exp(-0.5 * d * d) / (std::pow(2 * pi, static_cast<double>(dom.dim()) / 2) *
                                   measure.gaussian_mass());
}

void draw(const InputMeasure& measure, SplitMix64& gen, std::span<double> out) {
  const InputDomain& dom = measure.domain();
  const std::size_t n = dom.dim();
  if (measure.law() == InputMeasure::Law::uniform) {
    if (dom.kind() == InputDomain::Kind::box) {
      const Box& b = dom.bounds();
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = b.lower[i] + (b.upper[i] - b.lower[i]) * uniform01(gen);
      }
      return;
    }
    std::normal_distribution<double> normal;
    for (;;) {
      double r2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = normal(gen);
        r2 += out[i] * out[i];
      }
      if (r2 == 0.0) continue;
      const double scale =
          dom.radius() * std::pow(uniform01(gen), 1.0 / static_cast<double>(n)) / std::sqrt(r2);
      for (std::size_t i = 0; i < n; ++i) out[i] *= scale;
      // Rounding can push |x| a few ulps past the radius.
      if (dom.contains(out)) return;
    }
  }
  std::normal_distribution<double> normal;
  const auto& mean = measure.mean();
  do {
    for (std::size_t i = 0; i < n; ++i) out[i] = mean[i] + normal(gen);
  } while (!dom.contains(out));
}

nlohmann::json to_json(const InputMeasure& measure) {
  nlohmann::json domain;
  const InputDomain& dom = measure.domain();
  if (dom.kind() == InputDomain::Kind::ball) {
    domain = {{"kind", "ball"}, {"radius", dom.radius()}, {"dim", dom.dim()}};
  } else {
    nlohmann::json bounds = nlohmann::json::array();
    for (std::size_t i = 0; i < dom.dim(); ++i) {
      bounds.push_back({dom.bounds().lower[i], dom.bounds().upper[i]});
    }
    domain = {{"kind", "box"}, {"bounds", std::move(bounds)}};
  }
  nlohmann::json doc = {{"domain", std::move(domain)}};
  if (measure.law() == InputMeasure::Law::uniform) {
    doc["law"] = "uniform";
  } else {
    doc["law"] = "truncated_gaussian";
    doc["mean"] = measure.mean();
  }
  return doc;
}

InputMeasure measure_from_json(const nlohmann::json& doc, const std::string& path) {
  using namespace detail;
  reject_unknown(doc, path, {"name", "domain", "law", "mean"});
  const std::string dpath = path + ".domain";
  const auto& d = field(doc, path, "domain");
  const auto kind = as<std::string>(field(d, dpath, "kind"), dpath + ".kind");
  std::optional<InputDomain> domain;
  try {
    if (kind == "ball") {
      reject_unknown(d, dpath, {"kind", "radius", "dim"});
      const double radius = as_number(field(d, dpath, "radius"), dpath + ".radius");
      const auto dim = as<std::size_t>(field(d, dpath, "dim"), dpath + ".dim");
      domain = InputDomain::ball(dim, radius);
    } else if (kind == "box") {
      reject_unknown(d, dpath, {"kind", "bounds"});
      const auto& bounds = field(d, dpath, "bounds");
      if (!bounds.is_array()) throw ConfigError(dpath + ".bounds: expected an array");
      std::vector<double> lo, hi;
      for (std::size_t i = 0; i < bounds.size(); ++i) {
        auto pair = as_numbers(bounds[i], fmt::format("{}.bounds[{}]", dpath, i));
        if (pair.size() != 2) {
          throw ConfigError(fmt::format("{}.bounds[{}]: expected [lower, upper]", dpath, i));
        }
        lo.push_back(pair[0]);
        hi.push_back(pair[1]);
      }
      domain = InputDomain::box(std::move(lo), std::move(hi));
    } else {
      throw ConfigError(dpath + ".kind: expected \"box\" or \"ball\", got \"" + kind + "\"");
    }
  } catch (const DomainError& e) {
    throw ConfigError(dpath + ": " + e.what());
  }
  const auto law = as<std::string>(field(doc, path, "law"), path + ".law");
  if (law == "uniform") {
    if (doc.contains("mean")) throw ConfigError(path + ".mean: only valid for truncated_gaussian");
    return InputMeasure::uniform(std::move(*domain));
  }
  if (law == "truncated_gaussian") {
    std::vector<double> mean(domain->dim(), 0.0);
    if (doc.contains("mean")) mean = as_numbers(doc.at("mean"), path + ".mean");
    try {
      return InputMeasure::truncated_gaussian(std::move(*domain), std::move(mean));
    } catch (const std::exception& e) {
      throw ConfigError(path + ": " + e.what());
    }
  }
  throw ConfigError(path + ".law: expected \"uniform\" or \"truncated_gaussian\", got \"" + law +
                    "\"");
}

}  // namespace dmetric
