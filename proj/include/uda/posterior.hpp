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

#include <memory>
#include <span>
#include <vector>

#include "uda/types.hpp"

namespace uda {

// Distribution over classifiers of a family; support entries only.
struct Posterior {
  std::shared_ptr<const ClassifierFamily> family;
  std::vector<ClassifierIndex> support;  // sorted ascending
  std::vector<double> probs;             // aligned, all > 0, sums to 1

  double prob(ClassifierIndex f) const;
};

// Per-point label distributions for a query set.
struct SoftPrediction {
  std::vector<PointId> query;
  std::size_t k = 0;
  std::vector<double> probs;  // row-major query x k

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(probs.data() + i * k, k);
  }
};

// Classifiers of the family that label xs as ys; the full family for m = 0.
std::vector<ClassifierIndex> consistent_set(const ClassifierFamily& family,
                                            std::span<const PointId> xs,
                                            std::span<const Label> ys);

// Classifiers that agree with f on the support of p.
std::vector<ClassifierIndex> consistent_set_infinite(const ClassifierFamily& family,
                                                     const FiniteDistribution& p,
                                                     ClassifierIndex f);

// Posterior over classifiers given a finite sample:
//   probs[f] ~ sum_entries weight * prior(f) * p^m(xs) * q^n(xt) * [f consistent].
// Accumulation runs in log space. Throws kZeroEvidence if the sample has
// probability zero under every entry.
Posterior posterior_finite(const UDAClass& pi, const Sample& s);

struct InfinitePosterior {
  Posterior rho;
  // Prior mass of the consistent set under the matched pair (diagnostic S).
  double consistent_prior_mass = 0.0;
};

// Posterior over classifiers given an infinite-sample observation (p, q, f_p):
// the prior of the entries whose (p, q) match exactly, conditioned on
// agreement with f on the support of p. Throws kUnknownPair if no entry
// matches, kZeroEvidence if the conditioning removes all mass.
InfinitePosterior posterior_infinite(const UDAClass& pi, const FiniteDistribution& p,
                                     const FiniteDistribution& q, ClassifierIndex f);

// Aggregated soft classifier of a posterior on a query set:
//   probs[x][y] = sum_f rho(f) * [f(x) = y].
SoftPrediction aggregate(const Posterior& rho, std::span<const PointId> query);

// Per-point argmax with ties broken toward the lowest label index. The result
// is aligned with soft.query.
std::vector<Label> harden(const SoftPrediction& soft);

// Classifiers grouped by identical restriction to a support set. Classifiers
// in one group share their consistent set (the group itself), hence their
// posterior; this is what makes sweeping all ground truths cheap.
struct RestrictionGroups {
  std::vector<std::uint32_t> group_of;                 // classifier index -> group
  std::vector<std::vector<ClassifierIndex>> members;   // group -> sorted members
};

RestrictionGroups group_by_restriction(const ClassifierFamily& family,
                                       std::span<const PointId> support);

}  // namespace uda
