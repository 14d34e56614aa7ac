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

#include "uda/sampling.hpp"

#include <cmath>

namespace uda {

UDAInstance draw_instance(const UDAClass& pi, RngSpec spec) {
  Rng rng(spec);

  std::vector<double> weights;
  weights.reserve(pi.size());
  for (const ClassEntry& e : pi.entries()) weights.push_back(e.weight);
  const std::size_t entry_index = DiscreteSampler(weights).pick(rng);
  const ClassEntry& entry = pi.entry(entry_index);

  const std::size_t which = DiscreteSampler(entry.prior_mass).pick(rng);

  UDAInstance inst{entry_index, entry.prior_support[which], entry.p, entry.q, pi.family()};
  return inst;
}

Sample draw_sample(const UDAInstance& inst, std::size_t m, std::size_t n, RngSpec spec) {
  Rng rng(spec);
  Sample s;
  s.xs.reserve(m);
  s.ys.reserve(m);
  s.xt.reserve(n);

  const auto f = inst.f_table();
  DiscreteSampler from_p(inst.p.masses());
  for (std::size_t i = 0; i < m; ++i) {
    const PointId x = inst.p.support()[from_p.pick(rng)];
    s.xs.push_back(x);
    s.ys.push_back(f[x]);
  }
  DiscreteSampler from_q(inst.q.masses());
  for (std::size_t j = 0; j < n; ++j) {
    s.xt.push_back(inst.q.support()[from_q.pick(rng)]);
  }
  return s;
}

void enumerate_samples(const UDAInstance& inst, std::size_t m, std::size_t n,
                       const std::function<void(const Sample&, double)>& visit) {
  const auto ps = inst.p.support();
  const auto qs = inst.q.support();
  const auto pm = inst.p.masses();
  const auto qm = inst.q.masses();

  double combos = 1.0;
  for (std::size_t i = 0; i < m; ++i) combos *= double(ps.size());
  for (std::size_t j = 0; j < n; ++j) combos *= double(qs.size());
  if (combos > double(kEnumerationGuard)) {
    throw_numeric(ErrorCode::kTooLarge, "sample enumeration exceeds the guard");
  }

  const auto f = inst.f_table();
  Sample s;
  s.xs.assign(m, 0);
  s.ys.assign(m, 0);
  s.xt.assign(n, 0);

  // Odometer over source index choices, then target index choices.
  std::vector<std::size_t> idx(m + n, 0);
  for (;;) {
    double prob = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      s.xs[i] = ps[idx[i]];
      s.ys[i] = f[s.xs[i]];
      prob *= pm[idx[i]];
    }
    for (std::size_t j = 0; j < n; ++j) {
      s.xt[j] = qs[idx[m + j]];
      prob *= qm[idx[m + j]];
    }
    visit(s, prob);

    std::size_t pos = 0;
    for (; pos < m + n; ++pos) {
      const std::size_t limit = pos < m ? ps.size() : qs.size();
      if (++idx[pos] < limit) break;
      idx[pos] = 0;
    }
    if (pos == m + n) break;
  }
}

}  // namespace uda
