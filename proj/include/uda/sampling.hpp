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

#include <functional>

#include "uda/rng.hpp"
#include "uda/types.hpp"

namespace uda {

// One ground-truth triple (p, q, f) drawn from a UDA class.
struct UDAInstance {
  std::size_t entry_index = 0;
  ClassifierIndex f = 0;
  FiniteDistribution p;
  FiniteDistribution q;
  std::shared_ptr<const ClassifierFamily> family;

  std::span<const Label> f_table() const { return family->table(f); }
};

// Entry chosen proportional to weight, then f proportional to that entry's
// prior. Identical RngSpec reproduces the identical instance.
UDAInstance draw_instance(const UDAClass& pi, RngSpec rng);

// xs i.i.d. from p, xt i.i.d. from q, ys = f(xs) elementwise.
Sample draw_sample(const UDAInstance& inst, std::size_t m, std::size_t n, RngSpec rng);

inline constexpr std::uint64_t kEnumerationGuard = 1000000;

// Visits every (m, n)-sample of the instance with its probability
// p^m(xs) * q^n(xt). Throws kTooLarge when |support(p)|^m * |support(q)|^n
// exceeds the guard.
void enumerate_samples(const UDAInstance& inst, std::size_t m, std::size_t n,
                       const std::function<void(const Sample&, double)>& visit);

}  // namespace uda
