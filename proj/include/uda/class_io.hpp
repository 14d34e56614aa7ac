/*
 * Copyright 2026 The UDA Hardness Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <map>
#include <string>
#include <vector>

#include "uda/types.hpp"

namespace uda {

// Untyped class description as read from a class file; validate_class turns
// it into the in-memory model, reporting every violated invariant at once.
struct RawClassSpec {
  std::string metric;
  struct RawPoint {
    std::int64_t id = 0;
    std::vector<double> coords;
    double angle = 0.0;
    bool has_angle = false;
  };
  std::vector<RawPoint> points;
  std::vector<std::string> labels;
  struct RawClassifier {
    std::string id;
    std::vector<std::int64_t> table;
  };
  std::vector<RawClassifier> classifiers;
  struct RawEntry {
    double weight = 0.0;
    std::map<std::string, double> p;  // point id (decimal string) -> mass
    std::map<std::string, double> q;
    std::map<std::string, double> prior_f;  // classifier id -> mass
  };
  std::vector<RawEntry> entries;
};

// Strict-schema parse: unknown fields anywhere are rejected.
RawClassSpec parse_class_spec(const std::string& json_text);

// Validates every invariant and builds the class; the thrown Error carries
// one detail line per violation.
UDAClass validate_class(const RawClassSpec& raw);

inline UDAClass parse_class(const std::string& json_text) {
  return validate_class(parse_class_spec(json_text));
}

// Canonical serialization: fixed field order, points and sparse maps by
// ascending id, numbers with 12 significant digits. serialize(parse(s)) == s
// for any canonically produced s.
std::string serialize_class(const UDAClass& pi);

}  // namespace uda
