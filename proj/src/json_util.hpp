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

// Strict JSON field access with path-qualified diagnostics.

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dmetric/error.hpp"

namespace dmetric::detail {

inline void require_object(const nlohmann::json& doc, const std::string& path) {
  if (!doc.is_object()) throw ConfigError(path + ": expected an object");
}

inline void reject_unknown(const nlohmann::json& doc, const std::string& path,
                           std::initializer_list<std::string_view> allowed) {
  require_object(doc, path);
  for (const auto& [key, _] : doc.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError(path + ": unknown field '" + key + "'");
  }
}

inline const nlohmann::json& field(const nlohmann::json& doc, const std::string& path,
                                   const char* key) {
  require_object(doc, path);
  auto it = doc.find(key);
  if (it == doc.end()) throw ConfigError(path + ": missing required field '" + key + "'");
  return *it;
}

template <class T>
T as(const nlohmann::json& value, const std::string& path) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(path + ": wrong type (" + std::string(value.type_name()) + ")");
  }
}

inline double as_number(const nlohmann::json& value, const std::string& path) {
  if (!value.is_number()) throw ConfigError(path + ": expected a number");
  return value.get<double>();
}

inline std::vector<double> as_numbers(const nlohmann::json& value, const std::string& path) {
  if (!value.is_array()) throw ConfigError(path + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(as_number(value[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace dmetric::detail
