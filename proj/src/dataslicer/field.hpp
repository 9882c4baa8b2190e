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

#include <compare>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace dataslicer {

enum class FieldKind { kSimple, kAggregated, kComplex };

enum class Aggregate { kSum, kMin, kMax, kAvg };

// Complex-field combinators: concatenation (+), cross product (*), nesting (/).
enum class FieldOp { kConcat, kCross, kNest };

std::string_view aggregate_name(Aggregate agg);
std::string_view field_op_symbol(FieldOp op);

/// An immutable field expression: an attribute, an aggregate over a field, or
/// two fields joined by a combinator.
///
/// Identity is the canonical rendering, e.g. `AVG(magnitude)`, `(a+b)`,
/// `SUM(number of records)`. Attribute names containing `()+*/"` or
/// leading/trailing whitespace are rendered double-quoted. Copies share
/// structure.
class FieldExpr {
 public:
  static FieldExpr simple(std::string name);
  static FieldExpr aggregated(Aggregate agg, FieldExpr inner);
  static FieldExpr complex(FieldOp op, FieldExpr left, FieldExpr right);

  // Parses a rendering. Accepts insignificant whitespace between tokens,
  // lowercase aggregate keywords and `×` as an alias for `*`.
  // Throws Error(kFormatError).
  static FieldExpr parse(std::string_view text);

  FieldKind kind() const noexcept;
  bool is_simple() const noexcept { return kind() == FieldKind::kSimple; }

  // Valid only for the matching kind.
  const std::string& name() const;
  Aggregate aggregate() const;
  FieldOp op() const;
  const FieldExpr& inner() const;
  const FieldExpr& left() const;
  const FieldExpr& right() const;

  const std::string& canonical() const noexcept;

  bool contains_aggregate() const noexcept;
  // Attribute names referenced anywhere in the expression, in rendering order.
  std::vector<std::string> attributes() const;

  friend bool operator==(const FieldExpr& a, const FieldExpr& b) noexcept {
    return a.canonical() == b.canonical();
  }
  friend std::strong_ordering operator<=>(const FieldExpr& a, const FieldExpr& b) noexcept {
    return a.canonical().compare(b.canonical()) <=> 0;
  }

 private:
  struct Node;
  explicit FieldExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace dataslicer
