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

#include <limits>
#include <string>
#include <vector>

#include "uda/types.hpp"
#include "uda/uncertainty.hpp"

namespace uda {

// The four benchmark scenarios, discretized on midpoint grids so that
// consistency sets are exact set computations:
//   1. quarter-circle arcs with the rotating-separator family,
//      source opposite (class 1) vs adjacent (class 2) to the target arc;
//   2. two opposite-arc pairs with separators c in [-45, 45] degrees,
//      transfer in one direction (class 1) and the reverse (class 2);
//   3. line segments with threshold classifiers c in [-1, 1], source
//      supports [-2,-1]u[1,2] (class 1) vs [-2,-1/2]u[1/2,2] (class 2);
//   4. a vertical source segment and a family of shifted target segments
//      coupled with their matching separator pair {f^c, 1-f^c}.
//
// `resolution` is the number of grid cells per 90-degree arc (circle
// scenarios) or per unit interval (line scenarios); it also steps the
// classifier parameter grids.
struct ExampleSpec {
  int example_id = 1;   // 1..4
  int resolution = 90;  // >= 8; even for examples 2 and 3
};

struct BuiltExample {
  int example_id = 0;
  int resolution = 0;
  std::shared_ptr<const ClassifierFamily> family;
  std::vector<UDAClass> classes;  // two classes for 1..3, one for 4

  // The designated hardest instance per class (entry index, classifier).
  std::vector<std::size_t> hardest_entry;
  std::vector<ClassifierIndex> hardest_f;

  // Strided family subset for the quadratic pair scan; empty = use all.
  std::vector<ClassifierIndex> measure_subset;
};

BuiltExample build_example(const ExampleSpec& spec);

// One comparison cell: a computed quantity against its reference value.
// Reference cells with a note document known discrepancies between the
// printed values and what the definitions reproduce.
struct RegressionCell {
  std::string quantity;
  double computed = std::numeric_limits<double>::quiet_NaN();
  bool computed_infinite = false;
  double expected = std::numeric_limits<double>::quiet_NaN();
  bool expected_infinite = false;
  std::string base;  // "bits"/"nats" for entropy cells, "" otherwise
  std::string note;
  double abs_delta = std::numeric_limits<double>::quiet_NaN();
};

struct RegressionRow {
  int example_id = 0;
  int class_id = 0;  // 1-based
  int resolution = 0;
  std::vector<RegressionCell> cells;
};

std::vector<RegressionRow> regression_table(std::span<const ExampleSpec> specs,
                                            EntropyConfig cfg);

}  // namespace uda
