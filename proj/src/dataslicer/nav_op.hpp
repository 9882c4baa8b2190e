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

#include <cstddef>
#include <string_view>
#include <vector>

#include "dataslicer/spec.hpp"

namespace dataslicer {

enum class NavKind {
  kAddFilter,
  kRemoveFilter,
  kAddSelectField,
  kRemoveSelectField,
  kAddGroupField,
  kRemoveGroupField,
  kAddComplexOp,
  kRemoveComplexOp,
};

// The tuple part an op addresses. Select ops use X, Y or Layer; complex-field
// ops may address any part.
enum class Slot { kFilter, kX, kY, kLayer, kGrouping };

std::string_view nav_kind_name(NavKind kind);
std::string_view slot_name(Slot slot);

/// One Navigation Algebra step.
///
/// Filter ops carry concrete predicates: AddFilter adds them (none means a
/// placeholder), RemoveFilter records what it removed so the op can be
/// inverted. Complex-field ops name the combined field `(l op r)`:
/// AddComplexOp replaces `l` with it, RemoveComplexOp turns it back into `l`.
struct NavOp {
  NavKind kind;
  Slot slot;
  FieldExpr field;
  std::vector<FilterPredicate> predicates;

  static NavOp add_filter(FieldExpr field, std::vector<FilterPredicate> predicates = {});
  static NavOp remove_filter(FieldExpr field, std::vector<FilterPredicate> predicates = {});
  static NavOp add_select(Slot slot, FieldExpr field);
  static NavOp remove_select(Slot slot, FieldExpr field);
  static NavOp add_group(FieldExpr field);
  static NavOp remove_group(FieldExpr field);
  static NavOp add_complex(Slot slot, FieldExpr combined);
  static NavOp remove_complex(Slot slot, FieldExpr combined);

  bool is_removal() const noexcept;
  // The same op without filter predicates, as stored on graph edges.
  NavOp abstracted() const;

  friend bool operator==(const NavOp&, const NavOp&) = default;
};

NavOp inverse(const NavOp& op);

// Throws Error(kInapplicableOp) when the op removes an absent element, adds a
// present one, or would break a specification invariant.
DataSpecification apply_nav_op(const DataSpecification& spec, const NavOp& op);
AbstractSpec apply_nav_op(const AbstractSpec& spec, const NavOp& op);

/// Add/remove script turning `a` into `b` (compared in canonical form).
/// Removals come first in ascending (part, rendering) order; additions follow
/// in exactly the reverse order, so diff_ops(b, a) is the reversed inverse of
/// diff_ops(a, b).
std::vector<NavOp> diff_ops(const DataSpecification& a, const DataSpecification& b);
std::vector<NavOp> diff_ops(const AbstractSpec& a, const AbstractSpec& b);

// Length of diff_ops(a, b) without materializing it.
std::size_t op_distance(const AbstractSpec& a, const AbstractSpec& b);

}  // namespace dataslicer
