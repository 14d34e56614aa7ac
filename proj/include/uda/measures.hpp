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

#include <optional>
#include <string>
#include <vector>

#include "uda/types.hpp"

namespace uda {

struct MeasureResult {
  std::string name;
  double value = 0.0;
  bool is_infinite = false;
  // Scans over a strided subset of the family report a lower bound.
  bool lower_bound_only = false;
  std::string witness_h;   // maximizing h (or the h for which certification fails)
  std::string witness_h2;  // second member of an (h, h') pair
  std::optional<double> certificate_c;  // certifying constant for the transfer exponent
};

enum class FDivergenceKind { kKL, kChi2, kTV };

// E_{x~q} f(p(x)/q(x)) plus the singular part p(supp(p) \ supp(q)) * f'(inf).
// f'(inf) is infinite for kl and chi2; for tv the generator is |t-1|/2 with
// slope 1/2, so the result equals the plain total variation sum_x |p-q| / 2.
// Logarithms are natural.
MeasureResult f_divergence(const FiniteDistribution& p, const FiniteDistribution& q,
                           FDivergenceKind kind);

inline constexpr std::size_t kTransportGuard = 512;

// W_d between p and q.
//  - 1-D euclidean supports: sorted-quantile coupling (the exact optimum).
//  - angular domains: sorted-quantile coupling in the stored angular order,
//    costs charged as geodesic arc distance in degrees.
//  - euclidean dimension >= 2: exact transportation solve; support sizes
//    above the guard throw kTooLarge.
// Discrete domains throw kNoMetric.
MeasureResult wasserstein(const FiniteDistribution& p, const FiniteDistribution& q,
                          double d_exponent);

// Exact min-cost transportation between weighted point sets given a dense
// cost matrix (row-major, |a| x |b|). Exposed for cross-checks.
double transport_cost(std::span<const double> a_mass, std::span<const double> b_mass,
                      std::span<const double> cost);

inline constexpr std::uint64_t kPairScanGuard = 10000000;

// sup_{h,h' in H} |Pr_p(h != h') - Pr_q(h != h')| with the witnessing pair.
// `subset` restricts the scan (empty = whole family). If the pair count
// exceeds the guard: with allow_subsample the scan runs on a strided subset
// and is flagged lower_bound_only, otherwise kTooLarge.
MeasureResult h_delta_h(const FiniteDistribution& p, const FiniteDistribution& q,
                        const ClassifierFamily& H, bool allow_subsample = false,
                        std::span<const ClassifierIndex> subset = {});

// sup_{h in H} |Pr_p(h != f) - Pr_q(h != f)| with the witness.
MeasureResult y_discrepancy(const FiniteDistribution& p, const FiniteDistribution& q,
                            ClassifierIndex f, const ClassifierFamily& H);

// Default certification grids: gamma 1.0..10.0 step 0.1, C = 2^i, i in -10..10.
// Grid values of gamma below 1 are admissible as explicit inputs but are not
// searched by default: on a finite grid the smallest positive source error is
// bounded away from zero, which lets any gamma < 1 certify with a moderate C
// even when the underlying scaling law forces gamma >= 1.
std::vector<double> default_gamma_grid();
std::vector<double> default_c_grid();

// Smallest grid gamma admitting a grid C with
//   C * Pr_p(h != f) >= Pr_q(h != f)^gamma  for every h in H.
// Infinity if some h has Pr_p = 0 < Pr_q, or no grid pair certifies.
MeasureResult transfer_exponent(const FiniteDistribution& p, const FiniteDistribution& q,
                                ClassifierIndex f, const ClassifierFamily& H,
                                std::span<const double> gamma_grid = {},
                                std::span<const double> c_grid = {});

}  // namespace uda
