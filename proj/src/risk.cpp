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

#include "uda/risk.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "uda/parallel.hpp"

namespace uda {

LearnerOutput LearnerOutput::point_mass(std::vector<Label> table) {
  LearnerOutput out;
  out.weights.push_back(1.0);
  out.owned.push_back(std::move(table));
  out.tables.emplace_back(out.owned.back());
  return out;
}

LearnerOutput LearnerOutput::from_family(const ClassifierFamily& family,
                                         std::span<const ClassifierIndex> members,
                                         std::span<const double> weights) {
  LearnerOutput out;
  out.weights.assign(weights.begin(), weights.end());
  out.tables.reserve(members.size());
  for (ClassifierIndex g : members) out.tables.push_back(family.table(g));
  return out;
}

LearnerOutput OptimalLearner::respond(const Sample& s) const {
  const Posterior rho = posterior_finite(*pi_, s);
  return LearnerOutput::point_mass(hardened_table(rho));
}

LearnerOutput UniformConsistentLearner::respond(const Sample& s) const {
  const auto& family = *pi_->family();
  const auto members = consistent_set(family, s.xs, s.ys);
  if (members.empty()) {
    throw_numeric(ErrorCode::kZeroEvidence, "no classifier is consistent with the sample");
  }
  std::vector<double> w(members.size(), 1.0 / double(members.size()));
  return LearnerOutput::from_family(family, members, w);
}

std::string FixedClassifierLearner::name() const {
  return "fixed-" + pi_->family()->at(g_).id;
}

LearnerOutput FixedClassifierLearner::respond(const Sample&) const {
  const ClassifierIndex members[1] = {g_};
  const double w[1] = {1.0};
  return LearnerOutput::from_family(*pi_->family(), members, w);
}

LearnerOutput RandomLearner::respond(const Sample& s) const {
  // Hash the sample into the stream so distinct samples get distinct picks.
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  for (PointId x : s.xs) feed(x + 1);
  for (PointId x : s.xt) feed(std::uint64_t(x) + 0x100000000ULL);
  for (Label y : s.ys) feed(std::uint64_t(y) + 0x200000000ULL);
  Rng rng(RngSpec{seed_, h});
  const ClassifierIndex pick =
      ClassifierIndex(rng.next_below(std::uint64_t(pi_->family()->size())));
  const ClassifierIndex members[1] = {pick};
  const double w[1] = {1.0};
  return LearnerOutput::from_family(*pi_->family(), members, w);
}

LearnerOutput GibbsLearner::respond(const Sample& s) const {
  const Posterior rho = posterior_finite(*pi_, s);
  return LearnerOutput::from_family(*pi_->family(), rho.support, rho.probs);
}

std::vector<std::unique_ptr<Learner>> make_learner_zoo(const UDAClass& pi) {
  std::vector<std::unique_ptr<Learner>> zoo;
  zoo.push_back(std::make_unique<OptimalLearner>(pi));
  zoo.push_back(std::make_unique<UniformConsistentLearner>(pi));
  zoo.push_back(std::make_unique<GibbsLearner>(pi));
  zoo.push_back(std::make_unique<FixedClassifierLearner>(pi, 0));
  return zoo;
}

double target_risk(std::span<const Label> g, const FiniteDistribution& q,
                   std::span<const Label> f) {
  if (g.size() != q.domain()->size() || f.size() != q.domain()->size()) {
    throw_validation(ErrorCode::kShapeMismatch, "table length != domain size");
  }
  Accumulator acc;
  const auto sup = q.support();
  const auto mass = q.masses();
  for (std::size_t i = 0; i < sup.size(); ++i) {
    if (g[sup[i]] != f[sup[i]]) acc.add(mass[i]);
  }
  return acc.value();
}

namespace {

// Aggregated label distribution of a learner output on the q-support.
std::vector<double> learner_aggregate(const LearnerOutput& out, std::span<const PointId> query,
                                      std::size_t k) {
  std::vector<double> agg(query.size() * k, 0.0);
  for (std::size_t a = 0; a < out.weights.size(); ++a) {
    const auto table = out.tables[a];
    const double w = out.weights[a];
    for (std::size_t j = 0; j < query.size(); ++j) {
      agg[j * k + table[query[j]]] += w;
    }
  }
  return agg;
}

double risk_between_aggregates(const SoftPrediction& rho_agg, const std::vector<double>& lag,
                               const FiniteDistribution& q) {
  const std::size_t k = rho_agg.k;
  const auto mass = q.masses();
  Accumulator acc;
  for (std::size_t j = 0; j < rho_agg.query.size(); ++j) {
    const auto row = rho_agg.row(j);
    double agree = 0.0;
    for (std::size_t y = 0; y < k; ++y) agree += row[y] * lag[j * k + y];
    acc.add(mass[j] * (1.0 - agree));
  }
  return acc.value();
}

}  // namespace

double samplewise_risk(const LearnerOutput& out, const Posterior& rho,
                       const FiniteDistribution& q) {
  const SoftPrediction rho_agg = aggregate(rho, q.support());
  const auto lag = learner_aggregate(out, q.support(), rho_agg.k);
  return risk_between_aggregates(rho_agg, lag, q);
}

double optimal_samplewise_risk(const SoftPrediction& rho_agg, const FiniteDistribution& q) {
  const std::size_t k = rho_agg.k;
  const std::vector<Label> hard = harden(rho_agg);
  // One-hot learner aggregate at the argmax labels; same reduction as the
  // generic path so equality with samplewise_risk(optimal) is bitwise.
  std::vector<double> lag(rho_agg.query.size() * k, 0.0);
  for (std::size_t j = 0; j < rho_agg.query.size(); ++j) lag[j * k + hard[j]] = 1.0;
  return risk_between_aggregates(rho_agg, lag, q);
}

double optimal_samplewise_risk(const Posterior& rho, const FiniteDistribution& q) {
  return optimal_samplewise_risk(aggregate(rho, q.support()), q);
}

std::vector<Label> hardened_table(const Posterior& rho) {
  const std::size_t n = rho.family->domain()->size();
  std::vector<PointId> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = PointId(i);
  return harden(aggregate(rho, all));
}

namespace {

double mean_risk_of_output(const LearnerOutput& out, const FiniteDistribution& q,
                           std::span<const Label> f) {
  Accumulator acc;
  for (std::size_t a = 0; a < out.weights.size(); ++a) {
    acc.add(out.weights[a] * target_risk(out.tables[a], q, f));
  }
  return acc.value();
}

}  // namespace

RiskReport expected_risk(const Learner& learner, const UDAInstance& inst, std::size_t m,
                         std::size_t n, bool exact, std::size_t trials, RngSpec rng) {
  RiskReport report;
  if (exact) {
    Accumulator acc;
    enumerate_samples(inst, m, n, [&](const Sample& s, double prob) {
      acc.add(prob * mean_risk_of_output(learner.respond(s), inst.q, inst.f_table()));
    });
    report.value = acc.value();
    report.exact = true;
    return report;
  }
  if (trials == 0) throw_validation(ErrorCode::kBadArgument, "monte-carlo needs trials > 0");
  Accumulator sum, sumsq;
  for (std::size_t t = 0; t < trials; ++t) {
    const Sample s = draw_sample(inst, m, n, rng.with_stream(rng.stream + t));
    const double v = mean_risk_of_output(learner.respond(s), inst.q, inst.f_table());
    sum.add(v);
    sumsq.add(v * v);
  }
  const double mean = sum.value() / double(trials);
  const double var = std::max(0.0, sumsq.value() / double(trials) - mean * mean);
  report.value = mean;
  report.standard_error = std::sqrt(var / double(trials));
  report.exact = false;
  report.trials = trials;
  return report;
}

RiskReport overall_risk(const Learner& learner, const UDAClass& pi, std::size_t m,
                        std::size_t n, bool exact, std::size_t trials, RngSpec rng) {
  RiskReport report;
  if (exact) {
    Accumulator acc;
    for (const ClassEntry& entry : pi.entries()) {
      if (entry.weight <= 0.0) continue;
      for (std::size_t i = 0; i < entry.prior_support.size(); ++i) {
        if (entry.prior_mass[i] <= 0.0) continue;
        UDAInstance inst{0, entry.prior_support[i], entry.p, entry.q, pi.family()};
        const RiskReport r = expected_risk(learner, inst, m, n, true, 0, rng);
        acc.add(entry.weight * entry.prior_mass[i] * r.value);
      }
    }
    report.value = acc.value();
    report.exact = true;
    return report;
  }
  if (trials == 0) throw_validation(ErrorCode::kBadArgument, "monte-carlo needs trials > 0");
  Accumulator sum, sumsq;
  for (std::size_t t = 0; t < trials; ++t) {
    const UDAInstance inst = draw_instance(pi, rng.with_stream(rng.stream + 2 * t));
    const Sample s = draw_sample(inst, m, n, rng.with_stream(rng.stream + 2 * t + 1));
    const double v = mean_risk_of_output(learner.respond(s), inst.q, inst.f_table());
    sum.add(v);
    sumsq.add(v * v);
  }
  const double mean = sum.value() / double(trials);
  const double var = std::max(0.0, sumsq.value() / double(trials) - mean * mean);
  report.value = mean;
  report.standard_error = std::sqrt(var / double(trials));
  report.exact = false;
  report.trials = trials;
  return report;
}

double overall_risk_decomposed(const Learner& learner, const UDAClass& pi, std::size_t m,
                               std::size_t n) {
  Accumulator acc;
  for (const ClassEntry& entry : pi.entries()) {
    if (entry.weight <= 0.0) continue;
    for (std::size_t i = 0; i < entry.prior_support.size(); ++i) {
      if (entry.prior_mass[i] <= 0.0) continue;
      UDAInstance inst{0, entry.prior_support[i], entry.p, entry.q, pi.family()};
      Accumulator inner;
      enumerate_samples(inst, m, n, [&](const Sample& s, double prob) {
        const Posterior rho = posterior_finite(pi, s);
        inner.add(prob * samplewise_risk(learner.respond(s), rho, entry.q));
      });
      acc.add(entry.weight * entry.prior_mass[i] * inner.value());
    }
  }
  return acc.value();
}

double optimal_overall_risk_infinite(const UDAClass& pi) {
  const auto& family = *pi.family();

  // Restriction groups are shared across entries with the same source support.
  std::map<std::vector<PointId>, RestrictionGroups> cache;
  Accumulator acc;
  for (const ClassEntry& entry : pi.entries()) {
    if (entry.weight <= 0.0) continue;
    std::vector<PointId> key(entry.p.support().begin(), entry.p.support().end());
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(std::move(key), group_by_restriction(family, entry.p.support())).first;
    }
    const RestrictionGroups& groups = it->second;

    // Bucket the prior by restriction group; each bucket is one posterior.
    // Ordered so the float reduction is canonical.
    std::map<std::uint32_t, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < entry.prior_support.size(); ++i) {
      if (entry.prior_mass[i] <= 0.0) continue;
      buckets[groups.group_of[entry.prior_support[i]]].push_back(i);
    }
    for (const auto& [gid, idxs] : buckets) {
      Posterior rho;
      rho.family = pi.family();
      double mass = 0.0;
      for (std::size_t i : idxs) mass += entry.prior_mass[i];
      for (std::size_t i : idxs) {
        rho.support.push_back(entry.prior_support[i]);
        rho.probs.push_back(entry.prior_mass[i] / mass);
      }
      acc.add(entry.weight * mass * optimal_samplewise_risk(rho, entry.q));
    }
  }
  return acc.value();
}

}  // namespace uda
