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

#include "uda/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "uda/parallel.hpp"

namespace uda {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_shared_domain(const FiniteDistribution& p, const FiniteDistribution& q) {
  if (p.domain() != q.domain()) {
    throw_validation(ErrorCode::kShapeMismatch, "distributions live on different domains");
  }
}
}  // namespace

MeasureResult f_divergence(const FiniteDistribution& p, const FiniteDistribution& q,
                           FDivergenceKind kind) {
  check_shared_domain(p, q);
  MeasureResult result;
  result.name = kind == FDivergenceKind::kKL     ? "kl"
                : kind == FDivergenceKind::kChi2 ? "chi2"
                                                 : "tv";

  Accumulator acc;
  const auto sup = q.support();
  const auto mass = q.masses();
  for (std::size_t i = 0; i < sup.size(); ++i) {
    const double qs = mass[i];
    const double r = p.prob(sup[i]) / qs;
    switch (kind) {
      case FDivergenceKind::kKL:
        if (r > 0.0) acc.add(qs * r * std::log(r));
        break;
      case FDivergenceKind::kChi2:
        acc.add(qs * (r - 1.0) * (r - 1.0));
        break;
      case FDivergenceKind::kTV:
        acc.add(qs * 0.5 * std::fabs(r - 1.0));
        break;
    }
  }

  // Mass of p outside supp(q) enters through the generator's slope at
  // infinity: unbounded for kl and chi2, 1/2 for |t-1|/2.
  Accumulator singular;
  for (std::size_t i = 0; i < p.support().size(); ++i) {
    if (q.prob(p.support()[i]) == 0.0) singular.add(p.masses()[i]);
  }
  if (singular.value() > 0.0) {
    if (kind == FDivergenceKind::kTV) {
      acc.add(0.5 * singular.value());
    } else {
      result.is_infinite = true;
      result.value = kInf;
      return result;
    }
  }
  result.value = acc.value();
  return result;
}

namespace {

// Sorted-quantile coupling; `key` orders the support, `ground` charges a
// pairwise distance.
template <typename Key, typename Ground>
double quantile_coupling_cost(const FiniteDistribution& p, const FiniteDistribution& q,
                              double d_exponent, Key key, Ground ground) {
  std::vector<std::size_t> pi(p.support_size()), qi(q.support_size());
  std::iota(pi.begin(), pi.end(), 0);
  std::iota(qi.begin(), qi.end(), 0);
  auto by_key = [&](std::span<const PointId> sup) {
    return [&, sup](std::size_t a, std::size_t b) { return key(sup[a]) < key(sup[b]); };
  };
  std::sort(pi.begin(), pi.end(), by_key(p.support()));
  std::sort(qi.begin(), qi.end(), by_key(q.support()));

  // Normalize both sides so quantiles match even when the mass sums differ
  // in the last few ulps.
  double p_total = 0.0, q_total = 0.0;
  for (double v : p.masses()) p_total += v;
  for (double v : q.masses()) q_total += v;

  Accumulator cost;
  std::size_t i = 0, j = 0;
  double pi_left = p.masses()[pi[0]] / p_total;
  double qj_left = q.masses()[qi[0]] / q_total;
  while (true) {
    const double step = std::min(pi_left, qj_left);
    const double d = ground(p.support()[pi[i]], q.support()[qi[j]]);
    cost.add(step * std::pow(d, d_exponent));
    pi_left -= step;
    qj_left -= step;
    if (pi_left <= 1e-15) {
      if (++i >= pi.size()) break;
      pi_left = p.masses()[pi[i]] / p_total;
    }
    if (qj_left <= 1e-15) {
      if (++j >= qi.size()) break;
      qj_left = q.masses()[qi[j]] / q_total;
    }
  }
  return cost.value();
}

}  // namespace

double transport_cost(std::span<const double> a_mass, std::span<const double> b_mass,
                      std::span<const double> cost) {
  const std::size_t na = a_mass.size();
  const std::size_t nb = b_mass.size();
  if (cost.size() != na * nb) {
    throw_validation(ErrorCode::kShapeMismatch, "cost matrix shape mismatch");
  }

  // Successive shortest augmenting paths with potentials. Nodes 0..na-1 are
  // rows, na..na+nb-1 columns; forward arcs (i -> j) always exist, backward
  // arcs (j -> i) only where flow is positive. Each augmentation saturates a
  // row's supply or a column's demand, so the phase count is at most na + nb.
  const std::size_t n_nodes = na + nb;
  std::vector<double> supply(a_mass.begin(), a_mass.end());
  std::vector<double> demand(b_mass.begin(), b_mass.end());
  std::vector<double> pot(n_nodes, 0.0);
  std::vector<double> flow(na * nb, 0.0);

  const double eps = 1e-15;
  // Augmentations can also just empty a backward arc, so the cap is loose;
  // unroutable residual mass is checked after the loop.
  const std::size_t phase_cap = na * nb + 2 * (na + nb) + 16;
  for (std::size_t phase = 0; phase < phase_cap; ++phase) {
    std::size_t src = na;
    for (std::size_t i = 0; i < na; ++i) {
      if (supply[i] > eps) {
        src = i;
        break;
      }
    }
    if (src == na) break;

    std::vector<double> dist(n_nodes, kInf);
    std::vector<std::size_t> parent(n_nodes, n_nodes);
    std::vector<bool> done(n_nodes, false);
    dist[src] = 0.0;
    for (;;) {
      std::size_t u = n_nodes;
      double best = kInf;
      for (std::size_t v = 0; v < n_nodes; ++v) {
        if (!done[v] && dist[v] < best) {
          best = dist[v];
          u = v;
        }
      }
      if (u == n_nodes) break;
      done[u] = true;
      if (u < na) {
        for (std::size_t j = 0; j < nb; ++j) {
          const double w = cost[u * nb + j] + pot[u] - pot[na + j];
          if (dist[u] + w < dist[na + j] - 1e-18) {
            dist[na + j] = dist[u] + w;
            parent[na + j] = u;
          }
        }
      } else {
        const std::size_t j = u - na;
        for (std::size_t i = 0; i < na; ++i) {
          if (flow[i * nb + j] > eps) {
            const double w = -cost[i * nb + j] + pot[u] - pot[i];
            if (dist[u] + w < dist[i] - 1e-18) {
              dist[i] = dist[u] + w;
              parent[i] = u;
            }
          }
        }
      }
    }

    std::size_t sink = n_nodes;
    for (std::size_t j = 0; j < nb; ++j) {
      if (demand[j] > eps && dist[na + j] < kInf &&
          (sink == n_nodes || dist[na + j] < dist[sink])) {
        sink = na + j;
      }
    }
    if (sink == n_nodes) break;  // leftover rounding dust is unmatchable

    double push = std::min(supply[src], demand[sink - na]);
    for (std::size_t v = sink; v != src; v = parent[v]) {
      const std::size_t u = parent[v];
      if (v < na) push = std::min(push, flow[v * nb + (u - na)]);  // backward arc
    }
    for (std::size_t v = sink; v != src; v = parent[v]) {
      const std::size_t u = parent[v];
      if (v >= na) {
        flow[u * nb + (v - na)] += push;  // forward arc u(row) -> v(col)
      } else {
        flow[v * nb + (u - na)] -= push;  // backward arc u(col) -> v(row)
      }
    }
    supply[src] -= push;
    demand[sink - na] -= push;

    const double dmax = dist[sink];
    for (std::size_t v = 0; v < n_nodes; ++v) {
      pot[v] += std::min(dist[v], dmax);
    }
  }

  double residual = 0.0;
  for (double s : supply) residual += s;
  if (residual > 1e-9) {
    throw_numeric(ErrorCode::kTooLarge, "transport solve left unroutable mass");
  }

  Accumulator total;
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      if (flow[i * nb + j] > 0.0) total.add(flow[i * nb + j] * cost[i * nb + j]);
    }
  }
  return total.value();
}

MeasureResult wasserstein(const FiniteDistribution& p, const FiniteDistribution& q,
                          double d_exponent) {
  check_shared_domain(p, q);
  if (!(d_exponent >= 1.0)) {
    throw_validation(ErrorCode::kBadArgument, "wasserstein exponent must be >= 1");
  }
  const Domain& dom = *p.domain();
  MeasureResult result;
  result.name = "wasserstein";

  double cost = 0.0;
  switch (dom.metric()) {
    case Metric::kDiscrete:
      throw_numeric(ErrorCode::kNoMetric, "discrete domains have no transport metric");
    case Metric::kAngularDegrees:
      cost = quantile_coupling_cost(
          p, q, d_exponent, [&](PointId x) { return dom.angle_deg(x); },
          [&](PointId a, PointId b) { return dom.distance(a, b); });
      break;
    case Metric::kEuclidean:
      if (dom.dim() == 1) {
        cost = quantile_coupling_cost(
            p, q, d_exponent, [&](PointId x) { return dom.coords(x)[0]; },
            [&](PointId a, PointId b) { return dom.distance(a, b); });
      } else {
        if (p.support_size() > kTransportGuard || q.support_size() > kTransportGuard) {
          throw_numeric(ErrorCode::kTooLarge, "transport support exceeds the guard");
        }
        const std::size_t na = p.support_size(), nb = q.support_size();
        std::vector<double> cost_matrix(na * nb);
        for (std::size_t i = 0; i < na; ++i) {
          for (std::size_t j = 0; j < nb; ++j) {
            cost_matrix[i * nb + j] =
                std::pow(dom.distance(p.support()[i], q.support()[j]), d_exponent);
          }
        }
        cost = transport_cost(p.masses(), q.masses(), cost_matrix);
      }
      break;
  }
  result.value = std::pow(std::max(0.0, cost), 1.0 / d_exponent);
  return result;
}

namespace {

// Pr_p(h != g) for every h in `subset` against a fixed table g.
std::vector<double> disagreement_profile(const FiniteDistribution& p,
                                         const ClassifierFamily& H,
                                         std::span<const ClassifierIndex> subset,
                                         std::span<const Label> g) {
  std::vector<double> out(subset.size(), 0.0);
  const auto sup = p.support();
  const auto mass = p.masses();
  parallel_chunks(subset.size(), 64, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t u = b; u < e; ++u) {
      const auto h = H.table(subset[u]);
      Accumulator acc;
      for (std::size_t i = 0; i < sup.size(); ++i) {
        if (h[sup[i]] != g[sup[i]]) acc.add(mass[i]);
      }
      out[u] = acc.value();
    }
  });
  return out;
}

std::vector<ClassifierIndex> full_index_range(const ClassifierFamily& H) {
  std::vector<ClassifierIndex> all(H.size());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

}  // namespace

MeasureResult h_delta_h(const FiniteDistribution& p, const FiniteDistribution& q,
                        const ClassifierFamily& H, bool allow_subsample,
                        std::span<const ClassifierIndex> subset) {
  check_shared_domain(p, q);
  MeasureResult result;
  result.name = "h_delta_h";

  std::vector<ClassifierIndex> ids;
  if (subset.empty()) {
    ids = full_index_range(H);
  } else {
    ids.assign(subset.begin(), subset.end());
  }
  result.lower_bound_only = ids.size() < H.size();

  if (std::uint64_t(ids.size()) * std::uint64_t(ids.size()) > kPairScanGuard) {
    if (!allow_subsample) {
      throw_numeric(ErrorCode::kTooLarge, "pair scan exceeds the guard");
    }
    const std::size_t target = std::size_t(std::sqrt(double(kPairScanGuard)));
    const std::size_t stride = (ids.size() + target - 1) / target;
    std::vector<ClassifierIndex> sampled;
    for (std::size_t i = 0; i < ids.size(); i += stride) sampled.push_back(ids[i]);
    ids = std::move(sampled);
    result.lower_bound_only = true;
  }

  const auto psup = p.support();
  const auto pmass = p.masses();
  const auto qsup = q.support();
  const auto qmass = q.masses();

  struct Best {
    double value = -1.0;
    std::size_t a = 0, b = 0;
  };
  const std::size_t n = ids.size();
  const std::size_t chunk = 16;
  std::vector<Best> bests((n + chunk - 1) / chunk);
  parallel_chunks(n, chunk, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    Best best;
    for (std::size_t a = lo; a < hi; ++a) {
      const auto ha = H.table(ids[a]);
      for (std::size_t b = a + 1; b < n; ++b) {
        const auto hb = H.table(ids[b]);
        double dp = 0.0;
        for (std::size_t i = 0; i < psup.size(); ++i) {
          if (ha[psup[i]] != hb[psup[i]]) dp += pmass[i];
        }
        double dq = 0.0;
        for (std::size_t i = 0; i < qsup.size(); ++i) {
          if (ha[qsup[i]] != hb[qsup[i]]) dq += qmass[i];
        }
        const double v = std::fabs(dp - dq);
        if (v > best.value) best = Best{v, a, b};
      }
    }
    bests[c] = best;
  });

  Best overall;
  for (const Best& b : bests) {
    if (b.value > overall.value) overall = b;
  }
  if (overall.value < 0.0) overall = Best{0.0, 0, 0};  // single-member subset
  result.value = overall.value;
  result.witness_h = H.at(ids[overall.a]).id;
  result.witness_h2 = H.at(ids[overall.b]).id;
  return result;
}

MeasureResult y_discrepancy(const FiniteDistribution& p, const FiniteDistribution& q,
                            ClassifierIndex f, const ClassifierFamily& H) {
  check_shared_domain(p, q);
  const auto all = full_index_range(H);
  const auto ft = H.table(f);
  const auto dp = disagreement_profile(p, H, all, ft);
  const auto dq = disagreement_profile(q, H, all, ft);

  MeasureResult result;
  result.name = "y_discrepancy";
  std::size_t best = 0;
  double best_v = -1.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const double v = std::fabs(dp[i] - dq[i]);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  result.value = best_v;
  result.witness_h = H.at(all[best]).id;
  return result;
}

std::vector<double> default_gamma_grid() {
  std::vector<double> g;
  for (int i = 10; i <= 100; ++i) g.push_back(double(i) / 10.0);
  return g;
}

std::vector<double> default_c_grid() {
  std::vector<double> c;
  for (int i = -10; i <= 10; ++i) c.push_back(std::ldexp(1.0, i));
  return c;
}

MeasureResult transfer_exponent(const FiniteDistribution& p, const FiniteDistribution& q,
                                ClassifierIndex f, const ClassifierFamily& H,
                                std::span<const double> gamma_grid,
                                std::span<const double> c_grid) {
  check_shared_domain(p, q);
  const std::vector<double> def_g = gamma_grid.empty() ? default_gamma_grid() : std::vector<double>();
  const std::vector<double> def_c = c_grid.empty() ? default_c_grid() : std::vector<double>();
  if (gamma_grid.empty()) gamma_grid = def_g;
  if (c_grid.empty()) c_grid = def_c;
  for (double g : gamma_grid) {
    if (!(g > 0.0)) throw_validation(ErrorCode::kBadArgument, "gamma grid must be positive");
  }

  const auto all = full_index_range(H);
  const auto ft = H.table(f);
  const auto src = disagreement_profile(p, H, all, ft);
  const auto tgt = disagreement_profile(q, H, all, ft);

  MeasureResult result;
  result.name = "transfer_exponent";

  for (std::size_t i = 0; i < all.size(); ++i) {
    if (src[i] == 0.0 && tgt[i] > 0.0) {
      // No C can lift a zero source error above a positive target error.
      result.is_infinite = true;
      result.value = kInf;
      result.witness_h = H.at(all[i]).id;
      return result;
    }
  }

  const double c_max = *std::max_element(c_grid.begin(), c_grid.end());
  for (double gamma : gamma_grid) {
    double need = 0.0;
    std::size_t tight = all.size();
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (tgt[i] <= 0.0) continue;
      const double c = std::pow(tgt[i], gamma) / src[i];
      if (c > need) {
        need = c;
        tight = i;
      }
    }
    if (need <= c_max) {
      for (double c : c_grid) {
        if (c >= need) {
          result.value = gamma;
          result.certificate_c = c;
          if (tight < all.size()) result.witness_h = H.at(all[tight]).id;
          return result;
        }
      }
    }
  }
  result.is_infinite = true;
  result.value = kInf;
  return result;
}

}  // namespace uda
