/*
 * Copyright 2026 The DataSlicer Authors.
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
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "dataslicer/spec.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "dataslicer/error.hpp"

namespace dataslicer {

std::string_view comparator_symbol(Comparator cmp) {
  switch (cmp) {
    case Comparator::kLt: return "<";
    case Comparator::kLe: return "<=";
    case Comparator::kEq: return "=";
    case Comparator::kNe: return "!=";
    case Comparator::kGe: return ">=";
    case Comparator::kGt: return ">";
    case Comparator::kIn: return "in";
    case Comparator::kBetween: return "between";
  }
  return "=";
}

std::optional<Comparator> comparator_from_symbol(std::string_view symbol) {
  std::string lower(symbol);
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "<") return Comparator::kLt;
  if (lower == "<=") return Comparator::kLe;
  if (lower == "=" || lower == "==") return Comparator::kEq;
  if (lower == "!=" || lower == "<>") return Comparator::kNe;
  if (lower == ">=") return Comparator::kGe;
  if (lower == ">") return Comparator::kGt;
  if (lower == "in") return Comparator::kIn;
  if (lower == "between") return Comparator::kBetween;
  return std::nullopt;
}

FilterPredicate FilterPredicate::make(FieldExpr field, Comparator cmp, std::vector<Literal> operands) {
  bool agg = field.contains_aggregate();
  FilterPredicate p{std::move(field), cmp, std::move(operands), agg};
  p.validate();
  return p;
}

FilterPredicate FilterPredicate::placeholder(FieldExpr field) {
  bool agg = field.contains_aggregate();
  return FilterPredicate{std::move(field), std::nullopt, {}, agg};
}

void FilterPredicate::validate() const {
  if (aggregated != field.contains_aggregate()) {
    throw Error(ErrorCode::kInvalidArgument,
                "filter on " + field.canonical() + ": aggregated flag must be " +
                    (field.contains_aggregate() ? "true" : "false"));
  }
  if (!comparator) {
    if (!operands.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "placeholder filter on " + field.canonical() + " carries operands");
    }
    return;
  }
  std::size_t n = operands.size();
  bool ok = true;
  switch (*comparator) {
    case Comparator::kBetween: ok = n == 2; break;
    case Comparator::kIn: ok = n >= 1; break;
    default: ok = n == 1; break;
  }
  if (!ok) {
    throw Error(ErrorCode::kInvalidArgument, "filter on " + field.canonical() + ": wrong operand count for '" +
                                                 std::string(comparator_symbol(*comparator)) + "'");
  }
}

bool predicate_less(const FilterPredicate& a, const FilterPredicate& b) {
  if (a.field != b.field) return a.field < b.field;
  auto ca = a.comparator ? static_cast<int>(*a.comparator) : -1;
  auto cb = b.comparator ? static_cast<int>(*b.comparator) : -1;
  if (ca != cb) return ca < cb;
  return a.operands < b.operands;
}

void DataSpecification::validate() const {
  if (x && y && *x == *y) throw Error(ErrorCode::kInvalidArgument, "x and y must differ: " + x->canonical());
  auto check_unique = [](std::vector<FieldExpr> fields, const char* what) {
    std::sort(fields.begin(), fields.end());
    auto dup = std::adjacent_find(fields.begin(), fields.end());
    if (dup != fields.end()) {
      throw Error(ErrorCode::kInvalidArgument, std::string("duplicate ") + what + " field: " + dup->canonical());
    }
  };
  check_unique(layers, "layer");
  check_unique(grouping, "grouping");
  for (const auto& f : filters) f.validate();
  std::vector<FilterPredicate> sorted = filters;
  std::sort(sorted.begin(), sorted.end(), predicate_less);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate filter predicate");
  }
  // A placeholder stands for "some filter on this field"; mixing it with
  // concrete predicates on the same field is ambiguous.
  for (const auto& f : filters) {
    if (!f.is_placeholder()) continue;
    auto same_field = std::count_if(filters.begin(), filters.end(),
                                    [&](const FilterPredicate& g) { return g.field == f.field; });
    if (same_field > 1) {
      throw Error(ErrorCode::kInvalidArgument, "placeholder filter on " + f.field.canonical() +
                                                   " combined with other predicates on the same field");
    }
  }
}

std::vector<FieldExpr> DataSpecification::selected_fields() const {
  std::vector<FieldExpr> out;
  if (x) out.push_back(*x);
  if (y) out.push_back(*y);
  out.insert(out.end(), layers.begin(), layers.end());
  return out;
}

bool operator==(const DataSpecification& a, const DataSpecification& b) {
  if (a.x != b.x || a.y != b.y) return false;
  auto same_set = [](std::vector<FieldExpr> l, std::vector<FieldExpr> r) {
    std::sort(l.begin(), l.end());
    std::sort(r.begin(), r.end());
    return l == r;
  };
  if (!same_set(a.layers, b.layers) || !same_set(a.grouping, b.grouping)) return false;
  auto fa = a.filters;
  auto fb = b.filters;
  std::sort(fa.begin(), fa.end(), predicate_less);
  std::sort(fb.begin(), fb.end(), predicate_less);
  return fa == fb;
}

namespace {

std::vector<FieldExpr> sorted_unique(std::vector<FieldExpr> fields) {
  std::sort(fields.begin(), fields.end());
  fields.erase(std::unique(fields.begin(), fields.end()), fields.end());
  return fields;
}

nlohmann::json optional_field_json(const std::optional<FieldExpr>& f) {
  return f ? nlohmann::json(f->canonical()) : nlohmann::json(nullptr);
}

nlohmann::json fields_json(const std::vector<FieldExpr>& fields) {
  auto arr = nlohmann::json::array();
  for (const auto& f : fields) arr.push_back(f.canonical());
  return arr;
}

}  // namespace

std::string AbstractSpec::canonical_rendering() const {
  nlohmann::json doc = nlohmann::json::array({optional_field_json(x), optional_field_json(y), fields_json(layers),
                                              fields_json(filter_descriptors), fields_json(grouping)});
  return doc.dump();
}

AbstractSpec canonicalize(const DataSpecification& spec) {
  AbstractSpec out;
  out.x = spec.x;
  out.y = spec.y;
  out.layers = sorted_unique(spec.layers);
  std::vector<FieldExpr> descriptors;
  descriptors.reserve(spec.filters.size());
  for (const auto& f : spec.filters) descriptors.push_back(f.field);
  out.filter_descriptors = sorted_unique(std::move(descriptors));
  out.grouping = sorted_unique(spec.grouping);
  return out;
}

DataSpecification embed(const AbstractSpec& spec) {
  DataSpecification out;
  out.x = spec.x;
  out.y = spec.y;
  out.layers = spec.layers;
  for (const auto& f : spec.filter_descriptors) out.filters.push_back(FilterPredicate::placeholder(f));
  out.grouping = spec.grouping;
  return out;
}

std::string VisualSpec::canonical_key() const {
  nlohmann::json enc = nlohmann::json::array();
  for (const auto& e : encodings) enc.push_back(nlohmann::json::array({e.field.canonical(), e.cue}));
  nlohmann::json doc = nlohmann::json::array({chart_type, enc, extra});
  return doc.dump();
}

}  // namespace dataslicer
