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

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "uda/errors.hpp"

namespace uda {

using PointId = std::uint32_t;
using Label = std::uint8_t;
using ClassifierIndex = std::uint32_t;

// Mass sums are accepted within this absolute tolerance.
inline constexpr double kMassTolerance = 1e-9;
// Masses below this are treated as float dust and dropped from supports.
inline constexpr double kMassClamp = 1e-12;

enum class Metric { kEuclidean, kAngularDegrees, kDiscrete };

std::string metric_name(Metric m);
std::optional<Metric> metric_from_name(std::string_view name);

// A finite input space. Point ids are 0..size()-1. Euclidean domains carry a
// coordinate vector per point (one shared dimension), angular domains carry
// one angle in [0, 360) degrees, discrete domains carry nothing.
class Domain {
 public:
  static std::shared_ptr<const Domain> euclidean(std::vector<std::vector<double>> coords);
  static std::shared_ptr<const Domain> angular_degrees(std::vector<double> angles);
  static std::shared_ptr<const Domain> discrete(std::size_t n_points);

  Metric metric() const { return metric_; }
  std::size_t size() const { return size_; }
  std::size_t dim() const { return dim_; }

  // Euclidean only.
  std::span<const double> coords(PointId id) const {
    return std::span<const double>(coords_.data() + std::size_t(id) * dim_, dim_);
  }
  // Angular only.
  double angle_deg(PointId id) const { return angles_[id]; }

  // Pointwise ground distance; throws kNoMetric for discrete domains.
  // Angular distance is the geodesic arc length in degrees.
  double distance(PointId a, PointId b) const;

 private:
  Domain() = default;
  Metric metric_ = Metric::kDiscrete;
  std::size_t size_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> coords_;  // flat, size * dim
  std::vector<double> angles_;  // size
};

class LabelSet {
 public:
  explicit LabelSet(std::vector<std::string> names);

  std::size_t k() const { return names_.size(); }
  const std::string& name(Label y) const { return names_[y]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Label> index_of(std::string_view name) const;

 private:
  std::vector<std::string> names_;
};

// A probability vector over a domain, stored by support. Immutable.
class FiniteDistribution {
 public:
  FiniteDistribution(std::shared_ptr<const Domain> domain, std::span<const double> dense);
  static FiniteDistribution from_sparse(std::shared_ptr<const Domain> domain,
                                        std::vector<std::pair<PointId, double>> entries);

  const std::shared_ptr<const Domain>& domain() const { return domain_; }
  std::span<const PointId> support() const { return support_; }
  std::span<const double> masses() const { return mass_; }
  std::size_t support_size() const { return support_.size(); }

  // 0 for points outside the support.
  double prob(PointId id) const;

  double min_support_mass() const;

  // Exact representation equality (same support ids, identical doubles).
  bool identical_to(const FiniteDistribution& other) const;

 private:
  FiniteDistribution() = default;
  std::shared_ptr<const Domain> domain_;
  std::vector<PointId> support_;  // sorted ascending
  std::vector<double> mass_;      // aligned with support_
};

struct Classifier {
  std::string id;
  std::vector<Label> table;  // point id -> label index
};

class ClassifierFamily {
 public:
  ClassifierFamily(std::shared_ptr<const Domain> domain, LabelSet labels,
                   std::vector<Classifier> classifiers);

  const std::shared_ptr<const Domain>& domain() const { return domain_; }
  const LabelSet& labels() const { return labels_; }
  std::size_t size() const { return classifiers_.size(); }
  const Classifier& at(ClassifierIndex i) const { return classifiers_[i]; }
  std::span<const Label> table(ClassifierIndex i) const { return classifiers_[i].table; }
  std::optional<ClassifierIndex> index_of(std::string_view id) const;

 private:
  std::shared_ptr<const Domain> domain_;
  LabelSet labels_;
  std::vector<Classifier> classifiers_;
  std::unordered_map<std::string, ClassifierIndex> index_;
};

// Restriction of a classifier table to the support of a distribution,
// aligned with p.support().
std::vector<Label> restrict(std::span<const Label> table, const FiniteDistribution& p);

inline std::vector<Label> restrict(const Classifier& f, const FiniteDistribution& p) {
  return restrict(std::span<const Label>(f.table), p);
}

// One atom of a UDA class: a (p, q) pair plus a prior over classifiers.
struct ClassEntry {
  double weight = 0.0;
  FiniteDistribution p;
  FiniteDistribution q;
  std::vector<ClassifierIndex> prior_support;  // sorted ascending
  std::vector<double> prior_mass;              // aligned, all > 0

  double prior_prob(ClassifierIndex f) const;
};

// A finite-support distribution over ground-truth triples (p, q, f).
class UDAClass {
 public:
  UDAClass(std::shared_ptr<const ClassifierFamily> family, std::vector<ClassEntry> entries);

  const std::shared_ptr<const ClassifierFamily>& family() const { return family_; }
  std::span<const ClassEntry> entries() const { return entries_; }
  const ClassEntry& entry(std::size_t i) const { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::shared_ptr<const ClassifierFamily> family_;
  std::vector<ClassEntry> entries_;
};

// An (m, n)-sample: labeled source points and unlabeled target points.
struct Sample {
  std::vector<PointId> xs;
  std::vector<PointId> xt;
  std::vector<Label> ys;

  std::size_t m() const { return xs.size(); }
  std::size_t n() const { return xt.size(); }
};

}  // namespace uda
