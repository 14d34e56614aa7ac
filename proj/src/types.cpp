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

#include "uda/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace uda {

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::kEuclidean: return "euclidean";
    case Metric::kAngularDegrees: return "angular-degrees";
    case Metric::kDiscrete: return "discrete";
  }
  return "discrete";
}

std::optional<Metric> metric_from_name(std::string_view name) {
  if (name == "euclidean") return Metric::kEuclidean;
  if (name == "angular-degrees") return Metric::kAngularDegrees;
  if (name == "discrete") return Metric::kDiscrete;
  return std::nullopt;
}

std::shared_ptr<const Domain> Domain::euclidean(std::vector<std::vector<double>> coords) {
  if (coords.empty()) throw_validation(ErrorCode::kShapeMismatch, "empty domain");
  const std::size_t d = coords.front().size();
  if (d < 1) throw_validation(ErrorCode::kShapeMismatch, "euclidean points need dimension >= 1");
  auto dom = std::shared_ptr<Domain>(new Domain());
  dom->metric_ = Metric::kEuclidean;
  dom->size_ = coords.size();
  dom->dim_ = d;
  dom->coords_.reserve(coords.size() * d);
  for (const auto& c : coords) {
    if (c.size() != d) {
      throw_validation(ErrorCode::kShapeMismatch, "all coordinate vectors must share one dimension");
    }
    dom->coords_.insert(dom->coords_.end(), c.begin(), c.end());
  }
  return dom;
}

std::shared_ptr<const Domain> Domain::angular_degrees(std::vector<double> angles) {
  if (angles.empty()) throw_validation(ErrorCode::kShapeMismatch, "empty domain");
  for (double a : angles) {
    if (!(a >= 0.0 && a < 360.0)) {
      throw_validation(ErrorCode::kShapeMismatch, "angular coordinate outside [0, 360)");
    }
  }
  auto dom = std::shared_ptr<Domain>(new Domain());
  dom->metric_ = Metric::kAngularDegrees;
  dom->size_ = angles.size();
  dom->angles_ = std::move(angles);
  return dom;
}

std::shared_ptr<const Domain> Domain::discrete(std::size_t n_points) {
  if (n_points == 0) throw_validation(ErrorCode::kShapeMismatch, "empty domain");
  auto dom = std::shared_ptr<Domain>(new Domain());
  dom->metric_ = Metric::kDiscrete;
  dom->size_ = n_points;
  return dom;
}

double Domain::distance(PointId a, PointId b) const {
  switch (metric_) {
    case Metric::kEuclidean: {
      double s = 0.0;
      const double* pa = coords_.data() + std::size_t(a) * dim_;
      const double* pb = coords_.data() + std::size_t(b) * dim_;
      for (std::size_t i = 0; i < dim_; ++i) {
        const double d = pa[i] - pb[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case Metric::kAngularDegrees: {
      double d = std::fabs(angles_[a] - angles_[b]);
      return std::min(d, 360.0 - d);
    }
    case Metric::kDiscrete:
      throw_numeric(ErrorCode::kNoMetric, "discrete domains have no metric");
  }
  return 0.0;
}

LabelSet::LabelSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() < 2) {
    throw_validation(ErrorCode::kShapeMismatch, "label set needs k >= 2");
  }
  if (names_.size() > 255) {
    throw_validation(ErrorCode::kShapeMismatch, "label set limited to 255 labels");
  }
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) {
    throw_validation(ErrorCode::kShapeMismatch, "label names must be unique");
  }
}

std::optional<Label> LabelSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return Label(i);
  }
  return std::nullopt;
}

namespace {

void finish_distribution(const std::shared_ptr<const Domain>& domain,
                         std::vector<std::pair<PointId, double>>& entries,
                         std::vector<PointId>& support, std::vector<double>& mass) {
  std::sort(entries.begin(), entries.end());
  double sum = 0.0;
  PointId prev = 0;
  bool first = true;
  for (const auto& [id, m] : entries) {
    if (id >= domain->size()) {
      throw_validation(ErrorCode::kShapeMismatch, "point id outside domain");
    }
    if (!first && id == prev) {
      throw_validation(ErrorCode::kShapeMismatch, "duplicate point id in distribution");
    }
    prev = id;
    first = false;
    if (m < 0.0) {
      throw_validation(ErrorCode::kNonNormalized, "negative probability mass");
    }
    sum += m;
    if (m < kMassClamp) continue;  // clamp float dust; supports must be exact sets
    support.push_back(id);
    mass.push_back(m);
  }
  if (std::fabs(sum - 1.0) > kMassTolerance) {
    throw_validation(ErrorCode::kNonNormalized,
                     "distribution mass sums to " + std::to_string(sum));
  }
  if (support.empty()) {
    throw_validation(ErrorCode::kEmptySupport, "distribution has empty support");
  }
}

}  // namespace

FiniteDistribution::FiniteDistribution(std::shared_ptr<const Domain> domain,
                                       std::span<const double> dense) {
  if (!domain) throw_validation(ErrorCode::kShapeMismatch, "null domain");
  if (dense.size() != domain->size()) {
    throw_validation(ErrorCode::kShapeMismatch, "probability vector length != domain size");
  }
  std::vector<std::pair<PointId, double>> entries;
  entries.reserve(dense.size());
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) entries.emplace_back(PointId(i), dense[i]);
  }
  domain_ = std::move(domain);
  finish_distribution(domain_, entries, support_, mass_);
}

FiniteDistribution FiniteDistribution::from_sparse(
    std::shared_ptr<const Domain> domain, std::vector<std::pair<PointId, double>> entries) {
  if (!domain) throw_validation(ErrorCode::kShapeMismatch, "null domain");
  FiniteDistribution d;
  d.domain_ = std::move(domain);
  finish_distribution(d.domain_, entries, d.support_, d.mass_);
  return d;
}

double FiniteDistribution::prob(PointId id) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), id);
  if (it == support_.end() || *it != id) return 0.0;
  return mass_[std::size_t(it - support_.begin())];
}

double FiniteDistribution::min_support_mass() const {
  double m = mass_.front();
  for (double v : mass_) m = std::min(m, v);
  return m;
}

bool FiniteDistribution::identical_to(const FiniteDistribution& other) const {
  return domain_ == other.domain_ && support_ == other.support_ && mass_ == other.mass_;
}

ClassifierFamily::ClassifierFamily(std::shared_ptr<const Domain> domain, LabelSet labels,
                                   std::vector<Classifier> classifiers)
    : domain_(std::move(domain)), labels_(std::move(labels)), classifiers_(std::move(classifiers)) {
  if (!domain_) throw_validation(ErrorCode::kShapeMismatch, "null domain");
  if (classifiers_.empty()) {
    throw_validation(ErrorCode::kShapeMismatch, "classifier family is empty");
  }
  const std::size_t n = domain_->size();
  const std::size_t k = labels_.k();
  index_.reserve(classifiers_.size());
  for (std::size_t i = 0; i < classifiers_.size(); ++i) {
    const Classifier& c = classifiers_[i];
    if (c.table.size() != n) {
      throw_validation(ErrorCode::kShapeMismatch,
                       "classifier '" + c.id + "' table length != domain size");
    }
    for (Label y : c.table) {
      if (y >= k) {
        throw_validation(ErrorCode::kShapeMismatch,
                         "classifier '" + c.id + "' uses label index out of range");
      }
    }
    if (!index_.emplace(c.id, ClassifierIndex(i)).second) {
      throw_validation(ErrorCode::kShapeMismatch, "duplicate classifier id '" + c.id + "'");
    }
  }
}

std::optional<ClassifierIndex> ClassifierFamily::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Label> restrict(std::span<const Label> table, const FiniteDistribution& p) {
  if (table.size() != p.domain()->size()) {
    throw_validation(ErrorCode::kShapeMismatch, "classifier and distribution domains differ");
  }
  std::vector<Label> out;
  out.reserve(p.support_size());
  for (PointId x : p.support()) out.push_back(table[x]);
  return out;
}

double ClassEntry::prior_prob(ClassifierIndex f) const {
  auto it = std::lower_bound(prior_support.begin(), prior_support.end(), f);
  if (it == prior_support.end() || *it != f) return 0.0;
  return prior_mass[std::size_t(it - prior_support.begin())];
}

UDAClass::UDAClass(std::shared_ptr<const ClassifierFamily> family, std::vector<ClassEntry> entries)
    : family_(std::move(family)), entries_(std::move(entries)) {
  if (!family_) throw_validation(ErrorCode::kShapeMismatch, "null family");
  if (entries_.empty()) throw_validation(ErrorCode::kEmptySupport, "UDA class has no entries");
  double weight_sum = 0.0;
  for (const ClassEntry& e : entries_) {
    if (e.weight < 0.0) throw_validation(ErrorCode::kNonNormalized, "negative entry weight");
    weight_sum += e.weight;
    if (e.p.domain() != family_->domain() || e.q.domain() != family_->domain()) {
      throw_validation(ErrorCode::kShapeMismatch, "entry distributions on a foreign domain");
    }
    if (e.prior_support.size() != e.prior_mass.size() || e.prior_support.empty()) {
      throw_validation(ErrorCode::kEmptySupport, "entry prior has empty support");
    }
    double prior_sum = 0.0;
    for (std::size_t i = 0; i < e.prior_support.size(); ++i) {
      if (i > 0 && e.prior_support[i] <= e.prior_support[i - 1]) {
        throw_validation(ErrorCode::kShapeMismatch, "prior support must be sorted and unique");
      }
      if (e.prior_support[i] >= family_->size()) {
        throw_validation(ErrorCode::kDanglingClassifierId, "prior references unknown classifier");
      }
      if (e.prior_mass[i] < 0.0) {
        throw_validation(ErrorCode::kNonNormalized, "negative prior mass");
      }
      prior_sum += e.prior_mass[i];
    }
    if (std::fabs(prior_sum - 1.0) > kMassTolerance) {
      throw_validation(ErrorCode::kNonNormalized,
                       "prior mass sums to " + std::to_string(prior_sum));
    }
  }
  if (std::fabs(weight_sum - 1.0) > kMassTolerance) {
    throw_validation(ErrorCode::kNonNormalized,
                     "entry weights sum to " + std::to_string(weight_sum));
  }
}

}  // namespace uda
