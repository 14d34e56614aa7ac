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
#include <optional>
#include <string>
#include <vector>

#include "uda/posterior.hpp"
#include "uda/rng.hpp"
#include "uda/sampling.hpp"
#include "uda/types.hpp"

namespace uda {

struct RiskReport {
  double value = 0.0;
  std::optional<double> standard_error;  // present iff monte-carlo
  bool exact = true;
  std::size_t trials = 0;
};

// A learner's response to one sample: a distribution over label tables.
// Tables either alias family storage or live in `owned`.
struct LearnerOutput {
  std::vector<double> weights;
  std::vector<std::span<const Label>> tables;
  std::vector<std::vector<Label>> owned;

  static LearnerOutput point_mass(std::vector<Label> table);
  static LearnerOutput from_family(const ClassifierFamily& family,
                                   std::span<const ClassifierIndex> members,
                                   std::span<const double> weights);
};

class Learner {
 public:
  virtual ~Learner() = default;
  virtual std::string name() const = 0;
  virtual LearnerOutput respond(const Sample& s) const = 0;
};

// Point mass on the hardened aggregate of the posterior.
class OptimalLearner final : public Learner {
 public:
  explicit OptimalLearner(const UDAClass& pi) : pi_(&pi) {}
  std::string name() const override { return "optimal"; }
  LearnerOutput respond(const Sample& s) const override;

 private:
  const UDAClass* pi_;
};

// Uniform over the classifiers consistent with the labeled sample.
class UniformConsistentLearner final : public Learner {
 public:
  explicit UniformConsistentLearner(const UDAClass& pi) : pi_(&pi) {}
  std::string name() const override { return "uniform-consistent"; }
  LearnerOutput respond(const Sample& s) const override;

 private:
  const UDAClass* pi_;
};

class FixedClassifierLearner final : public Learner {
 public:
  FixedClassifierLearner(const UDAClass& pi, ClassifierIndex g)
      : pi_(&pi), g_(g) {}
  std::string name() const override;
  LearnerOutput respond(const Sample& s) const override;

 private:
  const UDAClass* pi_;
  ClassifierIndex g_;
};

// Point mass on a pseudo-random family member; deterministic in
// (seed, sample contents).
class RandomLearner final : public Learner {
 public:
  RandomLearner(const UDAClass& pi, std::uint64_t seed) : pi_(&pi), seed_(seed) {}
  std::string name() const override { return "random-" + std::to_string(seed_); }
  LearnerOutput respond(const Sample& s) const override;

 private:
  const UDAClass* pi_;
  std::uint64_t seed_;
};

// Draws from the posterior itself (Gibbs-style adversary for the harness).
class GibbsLearner final : public Learner {
 public:
  explicit GibbsLearner(const UDAClass& pi) : pi_(&pi) {}
  std::string name() const override { return "gibbs"; }
  LearnerOutput respond(const Sample& s) const override;

 private:
  const UDAClass* pi_;
};

// The stock zoo: optimal, uniform-consistent, gibbs, fixed(first classifier).
std::vector<std::unique_ptr<Learner>> make_learner_zoo(const UDAClass& pi);

// R(g | q, f): q-mass of the disagreement set.
double target_risk(std::span<const Label> g, const FiniteDistribution& q,
                   std::span<const Label> f);

// e(A; s, q) evaluated from the learner's output distribution and the
// posterior for the sample.
double samplewise_risk(const LearnerOutput& out, const Posterior& rho,
                       const FiniteDistribution& q);

// e*(s, q) = 1 - E_{x~q} max_y rho^A(y | x); evaluated through the same code
// path as samplewise_risk on the hardened point mass, so the two agree
// bitwise.
double optimal_samplewise_risk(const Posterior& rho, const FiniteDistribution& q);
double optimal_samplewise_risk(const SoftPrediction& rho_agg, const FiniteDistribution& q);

// Full-domain hardened aggregate table of a posterior.
std::vector<Label> hardened_table(const Posterior& rho);

// R(A | p, q, f): exact enumeration under the guard, or Monte Carlo.
RiskReport expected_risk(const Learner& learner, const UDAInstance& inst, std::size_t m,
                         std::size_t n, bool exact, std::size_t trials, RngSpec rng);

// R(A) over the class. Exact mode enumerates every entry, ground truth and
// sample; MC mode draws (instance, sample) pairs.
RiskReport overall_risk(const Learner& learner, const UDAClass& pi, std::size_t m,
                        std::size_t n, bool exact, std::size_t trials, RngSpec rng);

// Same quantity through the sample-wise decomposition:
// E_pi E_s e(A; s, q). Exact only; agrees with overall_risk to 1e-12.
double overall_risk_decomposed(const Learner& learner, const UDAClass& pi, std::size_t m,
                               std::size_t n);

// R*_inf: weighted optimal sample-wise risk over entries and ground truths,
// with posteriors collapsed through restriction groups.
double optimal_overall_risk_infinite(const UDAClass& pi);

}  // namespace uda
