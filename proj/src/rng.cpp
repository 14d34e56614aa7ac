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

#include "uda/rng.hpp"

#include <algorithm>

#include "uda/errors.hpp"

namespace uda {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

Rng::Rng(RngSpec spec) {
  // Decorrelate seed and stream before mixing them into one state word.
  state_ = mix64(spec.seed + kGolden) ^ mix64(mix64(spec.stream) + 0xD1B54A32D192ED03ULL);
}

std::uint64_t Rng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double Rng::next_double() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::next_below(std::uint64_t n) {
  if (n == 0) throw_validation(ErrorCode::kBadArgument, "next_below requires n > 0");
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

DiscreteSampler::DiscreteSampler(std::span<const double> weights) {
  if (weights.empty()) {
    throw_validation(ErrorCode::kEmptySupport, "sampler needs at least one weight");
  }
  cdf_.reserve(weights.size());
  double running = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw_validation(ErrorCode::kBadArgument, "negative sampling weight");
    running += w;
    cdf_.push_back(running);
  }
  total_ = running;
  if (!(total_ > 0.0)) {
    throw_validation(ErrorCode::kEmptySupport, "sampler weights sum to zero");
  }
}

std::size_t DiscreteSampler::pick(Rng& rng) const {
  const double u = rng.next_double() * total_;
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return std::size_t(it - cdf_.begin());
}

}  // namespace uda
