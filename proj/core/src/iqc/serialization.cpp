/*
 Copyright 2026 The ltviqc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "ltviqc/iqc/serialization.hpp"

#include <initializer_list>
#include <stdexcept>
#include <string>

namespace ltviqc {

using nlohmann::json;

namespace {

void allow_keys(const json& j, std::initializer_list<const char*> keys) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : keys) ok = ok || key == k;
    if (!ok) throw std::invalid_argument("unknown IQC key '" + key + "'");
  }
}

}  // namespace

void validate_iqc_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw std::invalid_argument("IQC must be an object with a string 'type'");
  }
  const auto type = j.at("type").get<std::string>();
  if (type == "unit_norm_lti") {
    allow_keys(j, {"type", "v", "p"});
    if (!j.at("v").is_number_integer() || j.at("v").get<int>() < 0) {
      throw std::invalid_argument("unit_norm_lti: 'v' must be a nonnegative integer");
    }
    if (!j.at("p").is_number() || !(j.at("p").get<double>() > 0.0)) {
      throw std::invalid_argument("unit_norm_lti: 'p' must be positive");
    }
  } else if (type == "tv_real") {
    allow_keys(j, {"type", "points"});
    if (j.contains("points") &&
        (!j.at("points").is_number_integer() || j.at("points").get<int>() < 2)) {
      throw std::invalid_argument("tv_real: 'points' must be an integer >= 2");
    }
  } else if (type == "conic") {
    allow_keys(j, {"type", "parts"});
    if (!j.at("parts").is_array() || j.at("parts").empty()) {
      throw std::invalid_argument("conic: 'parts' must be a nonempty array");
    }
    for (const auto& p : j.at("parts")) validate_iqc_json(p);
  } else {
    throw std::invalid_argument("unknown IQC type '" + type + "'");
  }
}

IqcSpec iqc_spec_from_json(const json& j, double horizon) {
  validate_iqc_json(j);
  const auto type = j.at("type").get<std::string>();
  if (type == "unit_norm_lti") {
    return make_unit_norm_lti_iqc(j.at("v").get<int>(), j.at("p").get<double>());
  }
  if (type == "tv_real") {
    const int pts = j.value("points", 11);
    return make_tv_real_iqc(TimeGrid::Uniform(horizon, static_cast<std::size_t>(pts)));
  }
  std::vector<IqcSpec> parts;
  for (const auto& p : j.at("parts")) parts.push_back(iqc_spec_from_json(p, horizon));
  return conic_combine(parts);
}

}  // namespace ltviqc
