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

#include <cstdint>
#include <span>
#include <vector>

namespace uda {

// (seed, stream) fully determines the draw sequence, on every platform.
// Parallel trials use one stream per trial so results do not depend on
// scheduling. Standard-library distributions are deliberately avoided: their
// output is implementation-defined.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  RngSpec with_stream(std::uint64_t s) const { return RngSpec{seed, s}; }
};

// Counter-style generator built on the splitmix64 finalizer.
class Rng {
 public:
  explicit Rng(RngSpec spec);

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53 random bits.
  double next_double();

  // Uniform in [0, n), unbiased (rejection). n must be > 0.
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

// Cumulative-sum inversion over a fixed weight vector. Weights must be
// non-negative with a positive total; they need not be normalized.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(std::span<const double> weights);

  // Index into the weight vector.
  std::size_t pick(Rng& rng) const;

  double total() const { return total_; }

 private:
  std::vector<double> cdf_;
  double total_;
};

}  // namespace uda
