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

#include "uda/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "uda/parallel.hpp"

namespace uda {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

double entropy(std::span<const double> dist, EntropyConfig cfg) {
  Accumulator acc;
  for (double p : dist) {
    if (p > 0.0) acc.add(-p * std::log(p));
  }
  double h = std::max(0.0, acc.value());
  if (cfg.base == LogBase::kBits) h /= kLn2;
  return h;
}

namespace {

double expected_row_entropy(const SoftPrediction& soft, std::span<const double> weights,
                            double norm, EntropyConfig cfg) {
  Accumulator acc;
  for (std::size_t j = 0; j < soft.query.size(); ++j) {
    acc.add(weights[j] * entropy(soft.row(j), cfg));
  }
  return acc.value() / norm;
}

}  // namespace

double ptlu(const Posterior& rho, const FiniteDistribution& q, EntropyConfig cfg) {
  const SoftPrediction soft = aggregate(rho, q.support());
  return expected_row_entropy(soft, q.masses(), 1.0, cfg);
}

double eptlu(const Posterior& rho, const Sample& s, EntropyConfig cfg) {
  if (s.xt.empty()) {
    throw_numeric(ErrorCode::kEmptyTargetSample, "EPTLU needs a non-empty target sample");
  }
  std::map<PointId, std::size_t> counts;
  for (PointId x : s.xt) ++counts[x];
  std::vector<PointId> query;
  std::vector<double> weights;
  query.reserve(counts.size());
  for (const auto& [x, c] : counts) {
    query.push_back(x);
    weights.push_back(double(c));
  }
  const SoftPrediction soft = aggregate(rho, query);
  return expected_row_entropy(soft, weights, double(s.xt.size()), cfg);
}

double fano_bound(double u, std::size_t k, std::optional<double> e_star, EntropyConfig cfg) {
  if (cfg.base != LogBase::kBits) {
    throw_validation(ErrorCode::kWrongBase, "the bound's constants hold in bits only");
  }
  if (k < 2) throw_validation(ErrorCode::kBadArgument, "k must be >= 2");
  const double u_max = std::log2(double(k));
  if (u < -kMassTolerance || u > u_max + kMassTolerance) {
    throw_validation(ErrorCode::kBadArgument, "PTLU outside [0, log2 k]");
  }
  u = std::clamp(u, 0.0, u_max);
  if (k == 2) {
    if (!e_star.has_value() || std::isnan(*e_star)) {
      throw_validation(ErrorCode::kMissingEStar, "k = 2 form needs the optimal risk");
    }
    return u * u / 4.0 + (*e_star) * (*e_star);
  }
  return (u - 1.0) / std::log2(double(k - 1));
}

BoundReport risk_lower_bound_for_g(const UDAClass& pi, ClassifierIndex g, const Posterior& rho,
                                   const FiniteDistribution& q, const Sample& s, double e_star,
                                   double delta, EntropyConfig cfg) {
  const auto& family = *pi.family();
  if (g >= family.size()) {
    throw_validation(ErrorCode::kDanglingClassifierId, "unknown classifier index");
  }
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw_validation(ErrorCode::kBadArgument, "delta must lie in (0, 1]");
  }
  const auto gt = family.table(g);
  for (std::size_t i = 0; i < s.xs.size(); ++i) {
    if (gt[s.xs[i]] != s.ys[i]) {
      throw_validation(ErrorCode::kInconsistentClassifier,
                       "classifier contradicts the labeled sample");
    }
  }

  const std::size_t k = family.labels().k();
  const double u = ptlu(rho, q, cfg);

  // Exact mean and variance of R(g|q,f) over the posterior support.
  std::vector<double> risks(rho.support.size());
  Accumulator mean_acc;
  for (std::size_t i = 0; i < rho.support.size(); ++i) {
    risks[i] = target_risk(gt, q, family.table(rho.support[i]));
    mean_acc.add(rho.probs[i] * risks[i]);
  }
  const double mean = mean_acc.value();
  Accumulator var_acc;
  for (std::size_t i = 0; i < rho.support.size(); ++i) {
    const double d = risks[i] - mean;
    var_acc.add(rho.probs[i] * d * d);
  }
  const double variance = std::max(0.0, var_acc.value());

  BoundReport report;
  report.k = k;
  report.u = u;
  report.e_star = e_star;
  report.delta = delta;
  report.variance = variance;
  report.bound_value =
      fano_bound(u, k, k == 2 ? std::optional<double>(e_star) : std::nullopt, cfg) -
      std::sqrt(variance / delta);
  report.risk_value = mean;
  report.slack = mean - report.bound_value;
  report.holds = report.slack >= -1e-9;

  Accumulator fail;
  for (std::size_t i = 0; i < rho.support.size(); ++i) {
    if (risks[i] < report.bound_value - 1e-9) fail.add(rho.probs[i]);
  }
  report.fail_mass = fail.value();
  return report;
}

BoundReport eptlu_bound(double u_tilde, double t, std::size_t n, std::size_t k, double e_star,
                        EntropyConfig cfg, double risk_value) {
  if (cfg.base != LogBase::kBits) {
    throw_validation(ErrorCode::kWrongBase, "the bound's constants hold in bits only");
  }
  if (!(t > 0.0)) throw_validation(ErrorCode::kBadArgument, "t must be > 0");
  if (n < 1) throw_numeric(ErrorCode::kEmptyTargetSample, "n must be >= 1");
  if (k < 2) throw_validation(ErrorCode::kBadArgument, "k must be >= 2");

  BoundReport report;
  report.k = k;
  report.u_tilde = u_tilde;
  report.t = t;
  report.e_star = e_star;
  const double log2k = std::log2(double(k));
  report.confidence = 1.0 - std::exp(-2.0 * double(n) * t * t / (log2k * log2k));
  if (k == 2) {
    if (std::isnan(e_star)) {
      throw_validation(ErrorCode::kMissingEStar, "k = 2 form needs the optimal risk");
    }
    const double shifted = std::max(0.0, u_tilde - t);
    report.bound_value = shifted * shifted / 4.0 + e_star * e_star;
  } else {
    report.bound_value = (u_tilde - t - 1.0) / std::log2(double(k - 1));
  }
  report.risk_value = risk_value;
  if (!std::isnan(risk_value)) {
    report.slack = risk_value - report.bound_value;
    report.holds = report.slack >= -1e-9;
  }
  return report;
}

ViolationReport verify_bounds(const UDAClass& pi, std::size_t m, std::size_t n,
                              std::size_t trials, std::span<const Learner* const> learners,
                              RngSpec rng, EntropyConfig cfg, std::span<const double> deltas) {
  ViolationReport report;
  report.trials = trials;
  for (double d : deltas) report.tail_stats.push_back({d, 0, 0, 0.0});
  const std::size_t k = pi.family()->labels().k();

  for (std::size_t tr = 0; tr < trials; ++tr) {
    const UDAInstance inst = draw_instance(pi, rng.with_stream(rng.stream + 4 * tr));
    const Sample s = draw_sample(inst, m, n, rng.with_stream(rng.stream + 4 * tr + 1));
    const Posterior rho = posterior_finite(pi, s);
    const double u = ptlu(rho, inst.q, cfg);
    const double e_star = optimal_samplewise_risk(rho, inst.q);
    const double bound =
        fano_bound(u, k, k == 2 ? std::optional<double>(e_star) : std::nullopt, cfg);

    for (const Learner* learner : learners) {
      const double e = samplewise_risk(learner->respond(s), rho, inst.q);
      ++report.fano_checks;
      report.min_fano_slack = std::min(report.min_fano_slack, e - bound);
      if (e < bound - 1e-9) ++report.fano_violations;
    }

    if (!deltas.empty()) {
      // A random source-consistent classifier; the tail statement is about
      // any such g.
      const auto consistent = consistent_set(*pi.family(), s.xs, s.ys);
      Rng pick(rng.with_stream(rng.stream + 4 * tr + 2));
      const ClassifierIndex g = consistent[pick.next_below(consistent.size())];
      for (std::size_t di = 0; di < deltas.size(); ++di) {
        const BoundReport br =
            risk_lower_bound_for_g(pi, g, rho, inst.q, s, e_star, deltas[di], cfg);
        auto& stat = report.tail_stats[di];
        ++stat.checks;
        stat.max_fail_mass = std::max(stat.max_fail_mass, br.fail_mass);
        if (br.fail_mass > deltas[di] + 1e-9) ++stat.violations;
      }
    }
  }
  return report;
}

ConvergenceDiagnostics convergence_diagnostics(const UDAClass& pi, const UDAInstance& inst) {
  ConvergenceDiagnostics diag;
  const InfinitePosterior post = posterior_infinite(pi, inst.p, inst.q, inst.f);
  const SoftPrediction soft = aggregate(post.rho, inst.q.support());
  double beta = 1.0;
  for (std::size_t j = 0; j < soft.query.size(); ++j) {
    for (double v : soft.row(j)) beta = std::min(beta, v);
  }
  diag.beta = beta;
  diag.K = consistent_set_infinite(*pi.family(), inst.p, inst.f).size();
  diag.S = post.consistent_prior_mass;
  diag.alpha_p = inst.p.min_support_mass();
  diag.alpha_q = inst.q.min_support_mass();
  diag.N_p = inst.p.support_size();
  diag.N_q = inst.q.support_size();
  return diag;
}

ConvergenceReport convergence_study(const UDAClass& pi, const UDAInstance& inst,
                                    std::span<const std::pair<std::size_t, std::size_t>> schedule,
                                    std::size_t trials, RngSpec rng, EntropyConfig cfg) {
  if (schedule.empty() || trials == 0) {
    throw_validation(ErrorCode::kBadArgument, "schedule and trials must be non-empty");
  }
  ConvergenceReport report;
  report.diagnostics = convergence_diagnostics(pi, inst);
  report.u_infinite = ptlu(posterior_infinite(pi, inst.p, inst.q, inst.f).rho, inst.q, cfg);

  const auto [m_tail, n_tail] = schedule.back();
  report.assumptions_hold_at_tail = report.diagnostics.beta > 0.0 &&
                                    m_tail > report.diagnostics.N_p &&
                                    n_tail > report.diagnostics.N_q;

  std::vector<double> gaps(trials);
  for (std::size_t p = 0; p < schedule.size(); ++p) {
    const auto [m, n] = schedule[p];
    for (std::size_t tr = 0; tr < trials; ++tr) {
      const Sample s =
          draw_sample(inst, m, n, rng.with_stream(rng.stream + p * trials + tr));
      const Posterior rho = posterior_finite(pi, s);
      gaps[tr] = std::fabs(report.u_infinite - eptlu(rho, s, cfg));
    }
    std::sort(gaps.begin(), gaps.end());
    Accumulator mean;
    for (double g : gaps) mean.add(g);
    ConvergencePoint point;
    point.m = m;
    point.n = n;
    point.median_gap = trials % 2 == 1 ? gaps[trials / 2]
                                       : 0.5 * (gaps[trials / 2 - 1] + gaps[trials / 2]);
    point.mean_gap = mean.value() / double(trials);
    point.max_gap = gaps.back();
    report.points.push_back(point);
  }
  return report;
}

std::vector<ConcentrationStat> eptlu_concentration(const UDAClass& pi, const UDAInstance& inst,
                                                   std::size_t m, std::size_t n,
                                                   std::span<const double> ts, std::size_t trials,
                                                   RngSpec rng, EntropyConfig cfg) {
  if (n == 0) throw_numeric(ErrorCode::kEmptyTargetSample, "n must be >= 1");
  const std::size_t k = pi.family()->labels().k();
  const double logk = cfg.base == LogBase::kBits ? std::log2(double(k)) : std::log(double(k));

  std::vector<ConcentrationStat> stats;
  for (double t : ts) {
    ConcentrationStat st;
    st.t = t;
    st.trials = trials;
    st.hoeffding_bound = std::exp(-2.0 * double(n) * t * t / (logk * logk));
    stats.push_back(st);
  }

  // The source half of the sample stays fixed; only x_t is resampled.
  const Sample source_part = draw_sample(inst, m, 0, rng.with_stream(rng.stream));
  for (std::size_t tr = 0; tr < trials; ++tr) {
    Sample s = source_part;
    s.xt = draw_sample(inst, 0, n, rng.with_stream(rng.stream + 1 + tr)).xt;
    const Posterior rho = posterior_finite(pi, s);
    const double gap = std::fabs(ptlu(rho, inst.q, cfg) - eptlu(rho, s, cfg));
    for (auto& st : stats) {
      if (gap > st.t) ++st.violations;
    }
  }
  for (auto& st : stats) st.rate = double(st.violations) / double(trials);
  return stats;
}

InfiniteAnalysis analyze_infinite(const UDAClass& pi) {
  const auto& family = *pi.family();
  InfiniteAnalysis out;

  std::map<std::vector<PointId>, RestrictionGroups> cache;
  Accumulator r_star;
  for (const ClassEntry& entry : pi.entries()) {
    EntryAnalysis ea;
    std::vector<PointId> key(entry.p.support().begin(), entry.p.support().end());
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(std::move(key), group_by_restriction(family, entry.p.support())).first;
    }
    const RestrictionGroups& groups = it->second;

    std::map<std::uint32_t, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < entry.prior_support.size(); ++i) {
      if (entry.prior_mass[i] <= 0.0) continue;
      buckets[groups.group_of[entry.prior_support[i]]].push_back(i);
    }

    auto bucket_posterior = [&](const std::vector<std::size_t>& idxs) {
      Posterior rho;
      rho.family = pi.family();
      double mass = 0.0;
      for (std::size_t i : idxs) mass += entry.prior_mass[i];
      for (std::size_t i : idxs) {
        rho.support.push_back(entry.prior_support[i]);
        rho.probs.push_back(entry.prior_mass[i] / mass);
      }
      return std::make_pair(rho, mass);
    };

    Accumulator expected;
    bool first = true;
    const std::vector<std::size_t>* hardest_bucket = nullptr;
    for (const auto& [gid, idxs] : buckets) {
      auto [rho, mass] = bucket_posterior(idxs);
      const double e_star = optimal_samplewise_risk(rho, entry.q);
      expected.add(mass * e_star);
      if (first || e_star > ea.max_e_star) {
        ea.max_e_star = e_star;
        ea.hardest = rho.support.front();
        hardest_bucket = &idxs;
        first = false;
      }
    }
    ea.expected_e_star = expected.value();
    if (hardest_bucket) {
      auto [rho, mass] = bucket_posterior(*hardest_bucket);
      (void)mass;
      ea.ptlu_at_hardest_nats = ptlu(rho, entry.q, EntropyConfig{LogBase::kNats});
      ea.ptlu_at_hardest_bits = ea.ptlu_at_hardest_nats / kLn2;
    }
    r_star.add(entry.weight * ea.expected_e_star);
    out.entries.push_back(ea);
  }
  out.r_star_infinite = r_star.value();
  return out;
}

}  // namespace uda
