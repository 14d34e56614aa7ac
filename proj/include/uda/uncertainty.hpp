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
#include <optional>
#include <vector>

#include "uda/risk.hpp"

namespace uda {

enum class LogBase { kBits, kNats };

struct EntropyConfig {
  LogBase base = LogBase::kBits;
};

inline const char* log_base_name(LogBase b) { return b == LogBase::kBits ? "bits" : "nats"; }

// Shannon entropy with the 0 log(1/0) = 0 convention.
double entropy(std::span<const double> dist, EntropyConfig cfg);

// Posterior target label uncertainty: E_{x~q} H(rho^A(. | x)).
double ptlu(const Posterior& rho, const FiniteDistribution& q, EntropyConfig cfg);

// Empirical PTLU: the same average over the target sample points, duplicates
// counted with multiplicity. Throws kEmptyTargetSample for n = 0.
double eptlu(const Posterior& rho, const Sample& s, EntropyConfig cfg);

// Risk lower bound from PTLU. Requires bits (the additive 1 and the /4 both
// come from binary-entropy inequalities in base 2). k = 2 needs e_star.
// The k > 2 form may be negative (vacuous); it is returned unclamped.
double fano_bound(double u, std::size_t k, std::optional<double> e_star, EntropyConfig cfg);

struct BoundReport {
  double bound_value = 0.0;
  double risk_value = std::numeric_limits<double>::quiet_NaN();
  double slack = std::numeric_limits<double>::quiet_NaN();
  bool holds = true;

  // Echoed inputs (NaN where not applicable).
  std::size_t k = 0;
  double u = std::numeric_limits<double>::quiet_NaN();
  double u_tilde = std::numeric_limits<double>::quiet_NaN();
  double e_star = std::numeric_limits<double>::quiet_NaN();
  double t = std::numeric_limits<double>::quiet_NaN();
  double delta = std::numeric_limits<double>::quiet_NaN();
  double confidence = std::numeric_limits<double>::quiet_NaN();
  double variance = std::numeric_limits<double>::quiet_NaN();
  // Posterior mass of {f : R(g|q,f) < bound - 1e-9} when exactly computable.
  double fail_mass = std::numeric_limits<double>::quiet_NaN();
};

// High-probability lower bound on R(g | q, f) for a classifier g consistent
// with the labeled sample: fano form minus sqrt(Var/delta), with the variance
// over the posterior computed exactly. risk_value is the posterior-mean risk
// of g; fail_mass is the exact lower tail.
BoundReport risk_lower_bound_for_g(const UDAClass& pi, ClassifierIndex g, const Posterior& rho,
                                   const FiniteDistribution& q, const Sample& s, double e_star,
                                   double delta, EntropyConfig cfg);

// EPTLU-based bound holding with confidence 1 - exp(-2 n t^2 / (log2 k)^2).
// (u_tilde - t) is clamped at 0 in the k = 2 form so extra slack can only
// weaken the bound. Pass the realized sample-wise risk to fill slack/holds.
BoundReport eptlu_bound(double u_tilde, double t, std::size_t n, std::size_t k, double e_star,
                        EntropyConfig cfg,
                        double risk_value = std::numeric_limits<double>::quiet_NaN());

struct ViolationReport {
  std::size_t trials = 0;
  std::size_t fano_checks = 0;
  std::size_t fano_violations = 0;
  double min_fano_slack = std::numeric_limits<double>::infinity();

  struct DeltaStat {
    double delta = 0.0;
    std::size_t checks = 0;
    std::size_t violations = 0;  // trials whose exact fail mass exceeded delta
    double max_fail_mass = 0.0;
  };
  std::vector<DeltaStat> tail_stats;
};

// Draws (instance, sample) pairs, runs every learner, and checks
// e(A; s, q) >= fano_bound(U, k, e*) - 1e-9 for each, plus the exact tail of
// the per-classifier bound at each delta. Violations are data, not errors.
ViolationReport verify_bounds(const UDAClass& pi, std::size_t m, std::size_t n,
                              std::size_t trials, std::span<const Learner* const> learners,
                              RngSpec rng, EntropyConfig cfg,
                              std::span<const double> deltas = {});

struct ConvergenceDiagnostics {
  double beta = 0.0;     // min_{x in supp(q), y} rho^A(y | x, p, q, f_p)
  std::size_t K = 0;     // |consistent set| within the family
  double S = 0.0;        // prior mass of the consistent set
  double alpha_p = 0.0;  // min mass on supp(p)
  double alpha_q = 0.0;
  std::size_t N_p = 0;
  std::size_t N_q = 0;
};

ConvergenceDiagnostics convergence_diagnostics(const UDAClass& pi, const UDAInstance& inst);

struct ConvergencePoint {
  std::size_t m = 0;
  std::size_t n = 0;
  double median_gap = 0.0;
  double mean_gap = 0.0;
  double max_gap = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergencePoint> points;
  ConvergenceDiagnostics diagnostics;
  double u_infinite = 0.0;
  bool assumptions_hold_at_tail = false;  // beta > 0, m > N_p, n > N_q
};

// Gap statistics |U(p, q, f_p) - EPTLU(s_{m,n})| over resampled (m, n)-samples
// for each schedule point.
ConvergenceReport convergence_study(const UDAClass& pi, const UDAInstance& inst,
                                    std::span<const std::pair<std::size_t, std::size_t>> schedule,
                                    std::size_t trials, RngSpec rng, EntropyConfig cfg);

struct ConcentrationStat {
  double t = 0.0;
  double hoeffding_bound = 0.0;  // exp(-2 n t^2 / (log k)^2)
  std::size_t trials = 0;
  std::size_t violations = 0;  // |U - EPTLU| > t
  double rate = 0.0;
};

// Resamples the target part of the sample only (source part fixed) and counts
// how often |U(s, q) - EPTLU(s)| exceeds t.
std::vector<ConcentrationStat> eptlu_concentration(const UDAClass& pi, const UDAInstance& inst,
                                                   std::size_t m, std::size_t n,
                                                   std::span<const double> ts, std::size_t trials,
                                                   RngSpec rng, EntropyConfig cfg);

// R*_inf together with per-entry optimal risks and PTLU, computed by
// collapsing ground truths with equal restriction to the source support.
struct EntryAnalysis {
  double expected_e_star = 0.0;
  double max_e_star = 0.0;
  ClassifierIndex hardest = 0;
  double ptlu_at_hardest_bits = 0.0;
  double ptlu_at_hardest_nats = 0.0;
};

struct InfiniteAnalysis {
  double r_star_infinite = 0.0;
  std::vector<EntryAnalysis> entries;
};

InfiniteAnalysis analyze_infinite(const UDAClass& pi);

}  // namespace uda
