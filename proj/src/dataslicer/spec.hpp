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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dataslicer/field.hpp"

namespace dataslicer {

using Literal = std::variant<std::int64_t, double, bool, std::string>;

enum class Comparator { kLt, kLe, kEq, kNe, kGe, kGt, kIn, kBetween };

std::string_view comparator_symbol(Comparator cmp);
// Accepts the symbols above plus "in"/"between" in any case.
std::optional<Comparator> comparator_from_symbol(std::string_view symbol);

/// A concrete filter condition. A missing comparator marks an unbound
/// placeholder: the field is filtered but no bounds are known yet.
struct FilterPredicate {
  FieldExpr field;
  std::optional<Comparator> comparator;
  std::vector<Literal> operands;
  bool aggregated = false;

  static FilterPredicate make(FieldExpr field, Comparator cmp, std::vector<Literal> operands);
  static FilterPredicate placeholder(FieldExpr field);

  bool is_placeholder() const noexcept { return !comparator.has_value(); }
  // Throws Error(kInvalidArgument) on operand-count or aggregated-flag violations.
  void validate() const;

  friend bool operator==(const FilterPredicate&, const FilterPredicate&) = default;
};

// Total order used to compare predicate sets independent of insertion order.
bool predicate_less(const FilterPredicate& a, const FilterPredicate& b);

/// The (X, Y, Layers, Filters, Grouping) tuple a user builds. Collections keep
/// their insertion order (it drives SQL column order) but equality treats
/// them as sets.
struct DataSpecification {
  std::optional<FieldExpr> x;
  std::optional<FieldExpr> y;
  std::vector<FieldExpr> layers;
  std::vector<FilterPredicate> filters;
  std::vector<FieldExpr> grouping;

  // Throws Error(kInvalidArgument).
  void validate() const;

  // Fields rendered on screen: x, y, then layers.
  std::vector<FieldExpr> selected_fields() const;

  friend bool operator==(const DataSpecification& a, const DataSpecification& b);
};

/// Graph-node identity: a specification with filters reduced to the filtered
/// fields and every collection sorted by canonical rendering.
struct AbstractSpec {
  std::optional<FieldExpr> x;
  std::optional<FieldExpr> y;
  std::vector<FieldExpr> layers;
  std::vector<FieldExpr> filter_descriptors;
  std::vector<FieldExpr> grouping;

  // Compact JSON array; the input to node hashing.
  std::string canonical_rendering() const;

  friend bool operator==(const AbstractSpec&, const AbstractSpec&) = default;
};

AbstractSpec canonicalize(const DataSpecification& spec);

// A concrete specification whose canonical form is `spec`; every filter
// descriptor becomes a placeholder predicate.
DataSpecification embed(const AbstractSpec& spec);

struct Encoding {
  FieldExpr field;
  std::string cue;

  friend bool operator==(const Encoding&, const Encoding&) = default;
};

/// Presentation choices paired with a data specification. Kept opaque apart
/// from the chart type and field encodings.
struct VisualSpec {
  std::string chart_type;
  std::vector<Encoding> encodings;
  std::map<std::string, std::string> extra;

  std::string canonical_key() const;

  friend bool operator==(const VisualSpec&, const VisualSpec&) = default;
  friend bool operator<(const VisualSpec& a, const VisualSpec& b) {
    return a.canonical_key() < b.canonical_key();
  }
};

}  // namespace dataslicer
