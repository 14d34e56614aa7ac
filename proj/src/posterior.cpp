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

#include "uda/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "uda/parallel.hpp"

namespace uda {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double Posterior::prob(ClassifierIndex f) const {
  auto it = std::lower_bound(support.begin(), support.end(), f);
  if (it == support.end() || *it != f) return 0.0;
  return probs[std::size_t(it - support.begin())];
}

std::vector<ClassifierIndex> consistent_set(const ClassifierFamily& family,
                                            std::span<const PointId> xs,
                                            std::span<const Label> ys) {
  if (xs.size() != ys.size()) {
    throw_validation(ErrorCode::kShapeMismatch, "xs and ys must have equal length");
  }
  std::vector<ClassifierIndex> out;
  out.reserve(family.size());
  for (ClassifierIndex g = 0; g < family.size(); ++g) {
    const auto table = family.table(g);
    bool ok = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (table[xs[i]] != ys[i]) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(g);
  }
  return out;
}

std::vector<ClassifierIndex> consistent_set_infinite(const ClassifierFamily& family,
                                                     const FiniteDistribution& p,
                                                     ClassifierIndex f) {
  const auto ref = family.table(f);
  std::vector<ClassifierIndex> out;
  for (ClassifierIndex g = 0; g < family.size(); ++g) {
    const auto table = family.table(g);
    bool ok = true;
    for (PointId x : p.support()) {
      if (table[x] != ref[x]) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(g);
  }
  return out;
}

Posterior posterior_finite(const UDAClass& pi, const Sample& s) {
  const auto& family = *pi.family();
  if (s.xs.size() != s.ys.size()) {
    throw_validation(ErrorCode::kShapeMismatch, "xs and ys must have equal length");
  }

  // Dedupe the sample; repeated points only scale the log likelihood.
  // Ordered maps keep the float accumulation order canonical.
  std::map<PointId, std::size_t> xt_counts;
  for (PointId x : s.xt) ++xt_counts[x];
  std::map<PointId, std::size_t> xs_counts;
  std::map<PointId, Label> xs_labels;
  for (std::size_t i = 0; i < s.xs.size(); ++i) {
    ++xs_counts[s.xs[i]];
    auto [it, inserted] = xs_labels.emplace(s.xs[i], s.ys[i]);
    if (!inserted && it->second != s.ys[i]) {
      // Contradictory labels: no classifier is consistent.
      throw_numeric(ErrorCode::kZeroEvidence, "sample labels one point two ways");
    }
  }

  // Consistency scan over the deduped labeled points.
  std::vector<ClassifierIndex> consistent;
  consistent.reserve(family.size());
  for (ClassifierIndex g = 0; g < family.size(); ++g) {
    const auto table = family.table(g);
    bool ok = true;
    for (const auto& [x, y] : xs_labels) {
      if (table[x] != y) {
        ok = false;
        break;
      }
    }
    if (ok) consistent.push_back(g);
  }
  if (consistent.empty()) {
    throw_numeric(ErrorCode::kZeroEvidence, "no classifier is consistent with the sample");
  }

  // log weight of each entry from its (p, q) likelihoods; -inf if impossible.
  std::vector<double> entry_logw(pi.size(), kNegInf);
  for (std::size_t e = 0; e < pi.size(); ++e) {
    const ClassEntry& entry = pi.entry(e);
    if (entry.weight <= 0.0) continue;
    double lw = std::log(entry.weight);
    bool possible = true;
    for (const auto& [x, c] : xs_counts) {
      const double px = entry.p.prob(x);
      if (px <= 0.0) {
        possible = false;
        break;
      }
      lw += double(c) * std::log(px);
    }
    if (!possible) continue;
    for (const auto& [x, c] : xt_counts) {
      const double qx = entry.q.prob(x);
      if (qx <= 0.0) {
        possible = false;
        break;
      }
      lw += double(c) * std::log(qx);
    }
    if (possible) entry_logw[e] = lw;
  }

  // Accumulate log-sum-exp per consistent classifier over entries.
  std::vector<double> logp(consistent.size(), kNegInf);
  double logp_max = kNegInf;
  for (std::size_t e = 0; e < pi.size(); ++e) {
    if (entry_logw[e] == kNegInf) continue;
    const ClassEntry& entry = pi.entry(e);
    for (std::size_t i = 0; i < consistent.size(); ++i) {
      const double prior = entry.prior_prob(consistent[i]);
      if (prior <= 0.0) continue;
      const double term = entry_logw[e] + std::log(prior);
      double& slot = logp[i];
      if (slot == kNegInf) {
        slot = term;
      } else {
        const double hi = std::max(slot, term);
        slot = hi + std::log1p(std::exp(std::min(slot, term) - hi));
      }
      logp_max = std::max(logp_max, slot);
    }
  }
  if (logp_max == kNegInf) {
    throw_numeric(ErrorCode::kZeroEvidence,
                  "sample has probability zero under every entry of the class");
  }

  Posterior rho;
  rho.family = pi.family();
  double total = 0.0;
  for (std::size_t i = 0; i < consistent.size(); ++i) {
    if (logp[i] == kNegInf) continue;
    const double v = std::exp(logp[i] - logp_max);
    rho.support.push_back(consistent[i]);
    rho.probs.push_back(v);
    total += v;
  }
  for (double& v : rho.probs) v /= total;
  return rho;
}

InfinitePosterior posterior_infinite(const UDAClass& pi, const FiniteDistribution& p,
                                     const FiniteDistribution& q, ClassifierIndex f) {
  const auto& family = *pi.family();
  if (f >= family.size()) {
    throw_validation(ErrorCode::kDanglingClassifierId, "unknown classifier index");
  }

  // pi_{F|P,Q} is the weight-mixed prior of the entries whose (p, q) match.
  std::vector<double> mixed(family.size(), 0.0);
  double pair_weight = 0.0;
  for (const ClassEntry& entry : pi.entries()) {
    if (entry.weight <= 0.0) continue;
    if (!entry.p.identical_to(p) || !entry.q.identical_to(q)) continue;
    pair_weight += entry.weight;
    for (std::size_t i = 0; i < entry.prior_support.size(); ++i) {
      mixed[entry.prior_support[i]] += entry.weight * entry.prior_mass[i];
    }
  }
  if (pair_weight <= 0.0) {
    throw_numeric(ErrorCode::kUnknownPair, "(p, q) is not in the support of the class");
  }

  const std::vector<ClassifierIndex> consistent = consistent_set_infinite(family, p, f);

  InfinitePosterior out;
  out.rho.family = pi.family();
  double s_mass = 0.0;
  for (ClassifierIndex g : consistent) {
    if (mixed[g] > 0.0) {
      out.rho.support.push_back(g);
      out.rho.probs.push_back(mixed[g]);
      s_mass += mixed[g];
    }
  }
  if (s_mass <= 0.0) {
    throw_numeric(ErrorCode::kZeroEvidence, "prior puts no mass on the consistent set");
  }
  for (double& v : out.rho.probs) v /= s_mass;
  out.consistent_prior_mass = s_mass / pair_weight;
  return out;
}

SoftPrediction aggregate(const Posterior& rho, std::span<const PointId> query) {
  const std::size_t k = rho.family->labels().k();
  SoftPrediction soft;
  soft.query.assign(query.begin(), query.end());
  soft.k = k;
  soft.probs.assign(query.size() * k, 0.0);
  for (std::size_t i = 0; i < rho.support.size(); ++i) {
    const auto table = rho.family->table(rho.support[i]);
    const double w = rho.probs[i];
    for (std::size_t j = 0; j < query.size(); ++j) {
      soft.probs[j * k + table[query[j]]] += w;
    }
  }
  return soft;
}

std::vector<Label> harden(const SoftPrediction& soft) {
  std::vector<Label> out(soft.query.size(), 0);
  for (std::size_t j = 0; j < soft.query.size(); ++j) {
    const auto row = soft.row(j);
    std::size_t best = 0;
    for (std::size_t y = 1; y < soft.k; ++y) {
      if (row[y] > row[best]) best = y;  // strict: ties keep the lowest index
    }
    out[j] = Label(best);
  }
  return out;
}

RestrictionGroups group_by_restriction(const ClassifierFamily& family,
                                       std::span<const PointId> support) {
  struct SigHash {
    std::size_t operator()(const std::vector<Label>& v) const {
      std::size_t h = 1469598103934665603ULL;
      for (Label b : v) {
        h ^= b;
        h *= 1099511628211ULL;
      }
      return h;
    }
  };

  RestrictionGroups groups;
  groups.group_of.assign(family.size(), 0);
  std::unordered_map<std::vector<Label>, std::uint32_t, SigHash> seen;
  seen.reserve(family.size());
  std::vector<Label> sig(support.size());
  for (ClassifierIndex g = 0; g < family.size(); ++g) {
    const auto table = family.table(g);
    for (std::size_t i = 0; i < support.size(); ++i) sig[i] = table[support[i]];
    auto [it, inserted] = seen.emplace(sig, std::uint32_t(groups.members.size()));
    if (inserted) groups.members.emplace_back();
    groups.group_of[g] = it->second;
    groups.members[it->second].push_back(g);
  }
  return groups;
}

}  // namespace uda
