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

#include "uda/class_io.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "uda/report.hpp"

namespace uda {

namespace {

using Json = nlohmann::json;

[[noreturn]] void bad_schema(const std::string& what) {
  throw_validation(ErrorCode::kShapeMismatch, "class file: " + what);
}

void check_keys(const Json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) bad_schema("unknown field '" + it.key() + "' in " + where);
  }
}

const Json& need(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) bad_schema("missing field '" + std::string(key) + "' in " + where);
  return *it;
}

std::map<std::string, double> parse_mass_map(const Json& obj, const std::string& where) {
  if (!obj.is_object()) bad_schema(where + " must be an object of id -> mass");
  std::map<std::string, double> out;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!it.value().is_number()) bad_schema("non-numeric mass in " + where);
    out[it.key()] = it.value().get<double>();
  }
  return out;
}

}  // namespace

RawClassSpec parse_class_spec(const std::string& json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    bad_schema(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) bad_schema("top level must be an object");
  check_keys(root, "top level",
             {"schema_version", "domain", "labels", "classifiers", "uda_class"});

  RawClassSpec raw;
  const Json& domain = need(root, "domain", "top level");
  check_keys(domain, "domain", {"metric", "points"});
  raw.metric = need(domain, "metric", "domain").get<std::string>();
  for (const Json& pt : need(domain, "points", "domain")) {
    check_keys(pt, "point", {"id", "coords", "angle"});
    RawClassSpec::RawPoint p;
    p.id = need(pt, "id", "point").get<std::int64_t>();
    if (pt.contains("coords")) p.coords = pt["coords"].get<std::vector<double>>();
    if (pt.contains("angle")) {
      p.angle = pt["angle"].get<double>();
      p.has_angle = true;
    }
    raw.points.push_back(std::move(p));
  }

  raw.labels = need(root, "labels", "top level").get<std::vector<std::string>>();

  for (const Json& c : need(root, "classifiers", "top level")) {
    check_keys(c, "classifier", {"id", "table"});
    RawClassSpec::RawClassifier rc;
    rc.id = need(c, "id", "classifier").get<std::string>();
    rc.table = need(c, "table", "classifier").get<std::vector<std::int64_t>>();
    raw.classifiers.push_back(std::move(rc));
  }

  const Json& cls = need(root, "uda_class", "top level");
  check_keys(cls, "uda_class", {"entries"});
  for (const Json& e : need(cls, "entries", "uda_class")) {
    check_keys(e, "entry", {"weight", "p", "q", "prior_f"});
    RawClassSpec::RawEntry re;
    re.weight = need(e, "weight", "entry").get<double>();
    re.p = parse_mass_map(need(e, "p", "entry"), "entry.p");
    re.q = parse_mass_map(need(e, "q", "entry"), "entry.q");
    re.prior_f = parse_mass_map(need(e, "prior_f", "entry"), "entry.prior_f");
    raw.entries.push_back(std::move(re));
  }
  return raw;
}

namespace {

struct Violations {
  std::vector<std::string> lines;
  ErrorCode first_code = ErrorCode::kShapeMismatch;

  void add(ErrorCode code, const std::string& line) {
    if (lines.empty()) first_code = code;
    lines.push_back(line);
  }
  bool any() const { return !lines.empty(); }
};

bool parse_point_id(const std::string& s, std::size_t domain_size, PointId& out) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return false;
  const unsigned long v = std::strtoul(s.c_str(), nullptr, 10);
  if (v >= domain_size) return false;
  out = PointId(v);
  return true;
}

double check_mass_vector(const std::map<std::string, double>& entries, Violations& v,
                         const std::string& where) {
  double sum = 0.0;
  double positive = 0.0;
  for (const auto& [id, mass] : entries) {
    if (mass < 0.0) v.add(ErrorCode::kNonNormalized, where + ": negative mass at '" + id + "'");
    sum += mass;
    if (mass >= kMassClamp) positive += mass;
  }
  if (std::fabs(sum - 1.0) > kMassTolerance) {
    v.add(ErrorCode::kNonNormalized,
          where + ": mass sums to " + format_number(sum) + " (needs 1 within 1e-09)");
  }
  if (positive <= 0.0) v.add(ErrorCode::kEmptySupport, where + ": empty support");
  return sum;
}

}  // namespace

UDAClass validate_class(const RawClassSpec& raw) {
  Violations v;

  // Domain: contiguous ids 0..N-1, metric-specific coordinates.
  const auto metric = metric_from_name(raw.metric);
  if (!metric) v.add(ErrorCode::kShapeMismatch, "domain: unknown metric '" + raw.metric + "'");
  const std::size_t n = raw.points.size();
  if (n == 0) v.add(ErrorCode::kEmptySupport, "domain: no points");
  std::vector<bool> seen(n, false);
  for (const auto& pt : raw.points) {
    if (pt.id < 0 || std::size_t(pt.id) >= n) {
      v.add(ErrorCode::kShapeMismatch,
            "domain: point id " + std::to_string(pt.id) + " outside 0.." + std::to_string(n - 1));
    } else if (seen[std::size_t(pt.id)]) {
      v.add(ErrorCode::kShapeMismatch, "domain: duplicate point id " + std::to_string(pt.id));
    } else {
      seen[std::size_t(pt.id)] = true;
    }
  }

  std::shared_ptr<const Domain> dom;
  if (!v.any()) {
    std::vector<const RawClassSpec::RawPoint*> by_id(n);
    for (const auto& pt : raw.points) by_id[std::size_t(pt.id)] = &pt;
    try {
      if (*metric == Metric::kEuclidean) {
        std::vector<std::vector<double>> coords;
        coords.reserve(n);
        for (const auto* pt : by_id) coords.push_back(pt->coords);
        dom = Domain::euclidean(std::move(coords));
      } else if (*metric == Metric::kAngularDegrees) {
        std::vector<double> angles;
        angles.reserve(n);
        for (const auto* pt : by_id) {
          if (!pt->has_angle) {
            v.add(ErrorCode::kShapeMismatch,
                  "domain: point " + std::to_string(pt->id) + " lacks an angle");
            angles.push_back(0.0);
          } else {
            angles.push_back(pt->angle);
          }
        }
        if (!v.any()) dom = Domain::angular_degrees(std::move(angles));
      } else {
        dom = Domain::discrete(n);
      }
    } catch (const Error& e) {
      v.add(e.code, std::string("domain: ") + e.what());
    }
  }

  // Labels and classifiers.
  if (raw.labels.size() < 2) v.add(ErrorCode::kShapeMismatch, "labels: need k >= 2");
  std::set<std::string> label_names(raw.labels.begin(), raw.labels.end());
  if (label_names.size() != raw.labels.size()) {
    v.add(ErrorCode::kShapeMismatch, "labels: names must be unique");
  }
  const std::size_t k = raw.labels.size();

  std::set<std::string> classifier_ids;
  for (const auto& rc : raw.classifiers) {
    if (!classifier_ids.insert(rc.id).second) {
      v.add(ErrorCode::kShapeMismatch, "classifiers: duplicate id '" + rc.id + "'");
    }
    if (rc.table.size() != n) {
      v.add(ErrorCode::kShapeMismatch,
            "classifier '" + rc.id + "': table length " + std::to_string(rc.table.size()) +
                " != domain size " + std::to_string(n));
    }
    for (std::int64_t y : rc.table) {
      if (y < 0 || std::size_t(y) >= k) {
        v.add(ErrorCode::kShapeMismatch,
              "classifier '" + rc.id + "': label index " + std::to_string(y) + " out of range");
        break;
      }
    }
  }
  if (raw.classifiers.empty()) v.add(ErrorCode::kEmptySupport, "classifiers: none given");

  // Entries: weights, mass maps, prior references.
  double weight_sum = 0.0;
  for (std::size_t ei = 0; ei < raw.entries.size(); ++ei) {
    const auto& re = raw.entries[ei];
    const std::string where = "entry " + std::to_string(ei);
    if (re.weight < 0.0) v.add(ErrorCode::kNonNormalized, where + ": negative weight");
    weight_sum += re.weight;
    check_mass_vector(re.p, v, where + ".p");
    check_mass_vector(re.q, v, where + ".q");
    for (const auto& [id, mass] : re.p) {
      PointId unused;
      if (!parse_point_id(id, n, unused)) {
        v.add(ErrorCode::kShapeMismatch, where + ".p: unknown point id '" + id + "'");
      }
      (void)mass;
    }
    for (const auto& [id, mass] : re.q) {
      PointId unused;
      if (!parse_point_id(id, n, unused)) {
        v.add(ErrorCode::kShapeMismatch, where + ".q: unknown point id '" + id + "'");
      }
      (void)mass;
    }
    double prior_sum = 0.0;
    bool prior_positive = false;
    for (const auto& [cid, mass] : re.prior_f) {
      if (!classifier_ids.count(cid)) {
        v.add(ErrorCode::kDanglingClassifierId,
              where + ".prior_f: unknown classifier id '" + cid + "'");
      }
      if (mass < 0.0) v.add(ErrorCode::kNonNormalized, where + ".prior_f: negative mass");
      prior_sum += mass;
      if (mass >= kMassClamp) prior_positive = true;
    }
    if (std::fabs(prior_sum - 1.0) > kMassTolerance) {
      v.add(ErrorCode::kNonNormalized,
            where + ".prior_f: mass sums to " + format_number(prior_sum));
    }
    if (!prior_positive) v.add(ErrorCode::kEmptySupport, where + ".prior_f: empty support");
  }
  if (raw.entries.empty()) {
    v.add(ErrorCode::kEmptySupport, "uda_class: no entries");
  } else if (std::fabs(weight_sum - 1.0) > kMassTolerance) {
    v.add(ErrorCode::kNonNormalized, "uda_class: weights sum to " + format_number(weight_sum));
  }

  if (v.any()) {
    throw Error(ErrorKind::kValidation, v.first_code,
                "class validation failed with " + std::to_string(v.lines.size()) +
                    " violation(s)",
                v.lines);
  }

  // Construction proper; the checks above make these constructors succeed.
  LabelSet labels(raw.labels);
  std::vector<Classifier> classifiers;
  classifiers.reserve(raw.classifiers.size());
  for (const auto& rc : raw.classifiers) {
    Classifier c;
    c.id = rc.id;
    c.table.reserve(rc.table.size());
    for (std::int64_t y : rc.table) c.table.push_back(Label(y));
    classifiers.push_back(std::move(c));
  }
  auto family =
      std::make_shared<const ClassifierFamily>(dom, std::move(labels), std::move(classifiers));

  std::vector<ClassEntry> entries;
  for (const auto& re : raw.entries) {
    ClassEntry entry;
    entry.weight = re.weight;
    auto to_sparse = [&](const std::map<std::string, double>& m) {
      std::vector<std::pair<PointId, double>> pairs;
      pairs.reserve(m.size());
      for (const auto& [id, mass] : m) {
        PointId pid = 0;
        parse_point_id(id, n, pid);
        pairs.emplace_back(pid, mass);
      }
      return FiniteDistribution::from_sparse(dom, std::move(pairs));
    };
    entry.p = to_sparse(re.p);
    entry.q = to_sparse(re.q);
    std::vector<std::pair<ClassifierIndex, double>> prior;
    for (const auto& [cid, mass] : re.prior_f) {
      if (mass < kMassClamp) continue;
      prior.emplace_back(*family->index_of(cid), mass);
    }
    std::sort(prior.begin(), prior.end());
    for (const auto& [idx, mass] : prior) {
      entry.prior_support.push_back(idx);
      entry.prior_mass.push_back(mass);
    }
    entries.push_back(std::move(entry));
  }
  return UDAClass(family, std::move(entries));
}

std::string serialize_class(const UDAClass& pi) {
  const auto& family = *pi.family();
  const Domain& dom = *family.domain();

  std::string out;
  out.reserve(1 << 16);
  auto num = [&](double x) { out += format_number(x); };

  out += "{\"schema_version\":\"1\",\"domain\":{\"metric\":\"";
  out += metric_name(dom.metric());
  out += "\",\"points\":[";
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (i) out.push_back(',');
    out += "{\"id\":" + std::to_string(i);
    if (dom.metric() == Metric::kEuclidean) {
      out += ",\"coords\":[";
      const auto c = dom.coords(PointId(i));
      for (std::size_t d = 0; d < c.size(); ++d) {
        if (d) out.push_back(',');
        num(c[d]);
      }
      out.push_back(']');
    } else if (dom.metric() == Metric::kAngularDegrees) {
      out += ",\"angle\":";
      num(dom.angle_deg(PointId(i)));
    }
    out.push_back('}');
  }
  out += "]},\"labels\":[";
  for (std::size_t y = 0; y < family.labels().k(); ++y) {
    if (y) out.push_back(',');
    out += json_escape(family.labels().name(Label(y)));
  }
  out += "],\"classifiers\":[";
  for (std::size_t ci = 0; ci < family.size(); ++ci) {
    if (ci) out.push_back(',');
    const Classifier& c = family.at(ClassifierIndex(ci));
    out += "{\"id\":" + json_escape(c.id) + ",\"table\":[";
    for (std::size_t i = 0; i < c.table.size(); ++i) {
      if (i) out.push_back(',');
      out += std::to_string(int(c.table[i]));
    }
    out += "]}";
  }
  out += "],\"uda_class\":{\"entries\":[";
  for (std::size_t ei = 0; ei < pi.size(); ++ei) {
    if (ei) out.push_back(',');
    const ClassEntry& e = pi.entry(ei);
    out += "{\"weight\":";
    num(e.weight);
    auto emit_dist = [&](const char* key, const FiniteDistribution& dist) {
      out += std::string(",\"") + key + "\":{";
      const auto sup = dist.support();
      const auto mass = dist.masses();
      for (std::size_t i = 0; i < sup.size(); ++i) {
        if (i) out.push_back(',');
        out += "\"" + std::to_string(sup[i]) + "\":";
        num(mass[i]);
      }
      out.push_back('}');
    };
    emit_dist("p", e.p);
    emit_dist("q", e.q);
    out += ",\"prior_f\":{";
    for (std::size_t i = 0; i < e.prior_support.size(); ++i) {
      if (i) out.push_back(',');
      out += json_escape(family.at(e.prior_support[i]).id) + ":";
      num(e.prior_mass[i]);
    }
    out += "}}";
  }
  out += "]}}\n";
  return out;
}

}  // namespace uda
