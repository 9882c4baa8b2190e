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

#include "dataslicer/nav_op.hpp"

#include <algorithm>
#include <tuple>

#include "dataslicer/error.hpp"

namespace dataslicer {

std::string_view nav_kind_name(NavKind kind) {
  switch (kind) {
    case NavKind::kAddFilter: return "AddFilter";
    case NavKind::kRemoveFilter: return "RemoveFilter";
    case NavKind::kAddSelectField: return "AddSelectField";
    case NavKind::kRemoveSelectField: return "RemoveSelectField";
    case NavKind::kAddGroupField: return "AddGroupField";
    case NavKind::kRemoveGroupField: return "RemoveGroupField";
    case NavKind::kAddComplexOp: return "AddComplexOp";
    case NavKind::kRemoveComplexOp: return "RemoveComplexOp";
  }
  return "AddFilter";
}

std::string_view slot_name(Slot slot) {
  switch (slot) {
    case Slot::kFilter: return "Filter";
    case Slot::kX: return "X";
    case Slot::kY: return "Y";
    case Slot::kLayer: return "Layer";
    case Slot::kGrouping: return "Grouping";
  }
  return "Filter";
}

namespace {

bool is_select_slot(Slot slot) { return slot == Slot::kX || slot == Slot::kY || slot == Slot::kLayer; }

[[noreturn]] void inapplicable(const NavOp& op, const std::string& why) {
  throw Error(ErrorCode::kInapplicableOp,
              std::string(nav_kind_name(op.kind)) + "(" + std::string(slot_name(op.slot)) + ", " +
                  op.field.canonical() + "): " + why);
}

bool contains(const std::vector<FieldExpr>& fields, const FieldExpr& f) {
  return std::find(fields.begin(), fields.end(), f) != fields.end();
}

bool has_filter_on(const std::vector<FilterPredicate>& filters, const FieldExpr& f) {
  return std::any_of(filters.begin(), filters.end(), [&](const FilterPredicate& p) { return p.field == f; });
}

std::vector<FilterPredicate> predicates_on(const std::vector<FilterPredicate>& filters, const FieldExpr& f) {
  std::vector<FilterPredicate> out;
  for (const auto& p : filters) {
    if (p.field == f) out.push_back(p);
  }
  return out;
}

bool same_predicate_set(std::vector<FilterPredicate> a, std::vector<FilterPredicate> b) {
  std::sort(a.begin(), a.end(), predicate_less);
  std::sort(b.begin(), b.end(), predicate_less);
  return a == b;
}

// Replaces `from` with `to` in whichever part `slot` names.
void replace_field(DataSpecification& spec, const NavOp& op, const FieldExpr& from, const FieldExpr& to) {
  switch (op.slot) {
    case Slot::kX:
      if (spec.x != from) inapplicable(op, "X does not hold " + from.canonical());
      spec.x = to;
      break;
    case Slot::kY:
      if (spec.y != from) inapplicable(op, "Y does not hold " + from.canonical());
      spec.y = to;
      break;
    case Slot::kLayer:
    case Slot::kGrouping: {
      auto& fields = op.slot == Slot::kLayer ? spec.layers : spec.grouping;
      if (contains(fields, to)) inapplicable(op, to.canonical() + " already present");
      auto it = std::find(fields.begin(), fields.end(), from);
      if (it == fields.end()) inapplicable(op, from.canonical() + " not present");
      *it = to;
      break;
    }
    case Slot::kFilter: {
      if (has_filter_on(spec.filters, to)) inapplicable(op, "filter on " + to.canonical() + " already present");
      if (!has_filter_on(spec.filters, from)) inapplicable(op, "no filter on " + from.canonical());
      for (auto& p : spec.filters) {
        if (p.field == from) {
          p.field = to;
          p.aggregated = to.contains_aggregate();
        }
      }
      break;
    }
  }
}

// Removals sort ascending on this key; additions descending.
std::tuple<int, std::string> order_key(Slot slot, const FieldExpr& f) {
  return {static_cast<int>(slot), f.canonical()};
}

}  // namespace

NavOp NavOp::add_filter(FieldExpr field, std::vector<FilterPredicate> predicates) {
  return NavOp{NavKind::kAddFilter, Slot::kFilter, std::move(field), std::move(predicates)};
}
NavOp NavOp::remove_filter(FieldExpr field, std::vector<FilterPredicate> predicates) {
  return NavOp{NavKind::kRemoveFilter, Slot::kFilter, std::move(field), std::move(predicates)};
}
NavOp NavOp::add_select(Slot slot, FieldExpr field) {
  if (!is_select_slot(slot)) throw Error(ErrorCode::kInvalidArgument, "select ops target X, Y or Layer");
  return NavOp{NavKind::kAddSelectField, slot, std::move(field), {}};
}
NavOp NavOp::remove_select(Slot slot, FieldExpr field) {
  if (!is_select_slot(slot)) throw Error(ErrorCode::kInvalidArgument, "select ops target X, Y or Layer");
  return NavOp{NavKind::kRemoveSelectField, slot, std::move(field), {}};
}
NavOp NavOp::add_group(FieldExpr field) { return NavOp{NavKind::kAddGroupField, Slot::kGrouping, std::move(field), {}}; }
NavOp NavOp::remove_group(FieldExpr field) {
  return NavOp{NavKind::kRemoveGroupField, Slot::kGrouping, std::move(field), {}};
}
NavOp NavOp::add_complex(Slot slot, FieldExpr combined) {
  if (combined.kind() != FieldKind::kComplex) {
    throw Error(ErrorCode::kInvalidArgument, "complex-field ops need a combined field, got " + combined.canonical());
  }
  return NavOp{NavKind::kAddComplexOp, slot, std::move(combined), {}};
}
NavOp NavOp::remove_complex(Slot slot, FieldExpr combined) {
  if (combined.kind() != FieldKind::kComplex) {
    throw Error(ErrorCode::kInvalidArgument, "complex-field ops need a combined field, got " + combined.canonical());
  }
  return NavOp{NavKind::kRemoveComplexOp, slot, std::move(combined), {}};
}

bool NavOp::is_removal() const noexcept {
  return kind == NavKind::kRemoveFilter || kind == NavKind::kRemoveSelectField ||
         kind == NavKind::kRemoveGroupField || kind == NavKind::kRemoveComplexOp;
}

NavOp NavOp::abstracted() const { return NavOp{kind, slot, field, {}}; }

NavOp inverse(const NavOp& op) {
  NavOp out = op;
  switch (op.kind) {
    case NavKind::kAddFilter: out.kind = NavKind::kRemoveFilter; break;
    case NavKind::kRemoveFilter: out.kind = NavKind::kAddFilter; break;
    case NavKind::kAddSelectField: out.kind = NavKind::kRemoveSelectField; break;
    case NavKind::kRemoveSelectField: out.kind = NavKind::kAddSelectField; break;
    case NavKind::kAddGroupField: out.kind = NavKind::kRemoveGroupField; break;
    case NavKind::kRemoveGroupField: out.kind = NavKind::kAddGroupField; break;
    case NavKind::kAddComplexOp: out.kind = NavKind::kRemoveComplexOp; break;
    case NavKind::kRemoveComplexOp: out.kind = NavKind::kAddComplexOp; break;
  }
  return out;
}

DataSpecification apply_nav_op(const DataSpecification& spec, const NavOp& op) {
  DataSpecification out = spec;
  switch (op.kind) {
    case NavKind::kAddFilter: {
      if (has_filter_on(out.filters, op.field)) inapplicable(op, "field already filtered");
      if (op.predicates.empty()) {
        out.filters.push_back(FilterPredicate::placeholder(op.field));
      } else {
        for (const auto& p : op.predicates) {
          if (p.field != op.field) inapplicable(op, "predicate on " + p.field.canonical() + " does not match");
          out.filters.push_back(p);
        }
      }
      break;
    }
    case NavKind::kRemoveFilter: {
      auto existing = predicates_on(out.filters, op.field);
      if (existing.empty()) inapplicable(op, "field not filtered");
      if (!op.predicates.empty() && !same_predicate_set(existing, op.predicates)) {
        inapplicable(op, "recorded predicates differ from the specification's");
      }
      std::erase_if(out.filters, [&](const FilterPredicate& p) { return p.field == op.field; });
      break;
    }
    case NavKind::kAddSelectField:
      switch (op.slot) {
        case Slot::kX:
          if (out.x) inapplicable(op, "X already holds " + out.x->canonical());
          if (out.y == op.field) inapplicable(op, "field is already on Y");
          out.x = op.field;
          break;
        case Slot::kY:
          if (out.y) inapplicable(op, "Y already holds " + out.y->canonical());
          if (out.x == op.field) inapplicable(op, "field is already on X");
          out.y = op.field;
          break;
        case Slot::kLayer:
          if (contains(out.layers, op.field)) inapplicable(op, "layer already present");
          out.layers.push_back(op.field);
          break;
        default: inapplicable(op, "select ops target X, Y or Layer");
      }
      break;
    case NavKind::kRemoveSelectField:
      switch (op.slot) {
        case Slot::kX:
          if (out.x != op.field) inapplicable(op, "X does not hold the field");
          out.x.reset();
          break;
        case Slot::kY:
          if (out.y != op.field) inapplicable(op, "Y does not hold the field");
          out.y.reset();
          break;
        case Slot::kLayer: {
          auto it = std::find(out.layers.begin(), out.layers.end(), op.field);
          if (it == out.layers.end()) inapplicable(op, "layer not present");
          out.layers.erase(it);
          break;
        }
        default: inapplicable(op, "select ops target X, Y or Layer");
      }
      break;
    case NavKind::kAddGroupField:
      if (contains(out.grouping, op.field)) inapplicable(op, "already grouped");
      out.grouping.push_back(op.field);
      break;
    case NavKind::kRemoveGroupField: {
      auto it = std::find(out.grouping.begin(), out.grouping.end(), op.field);
      if (it == out.grouping.end()) inapplicable(op, "not grouped");
      out.grouping.erase(it);
      break;
    }
    case NavKind::kAddComplexOp:
      if (op.field.kind() != FieldKind::kComplex) inapplicable(op, "not a combined field");
      replace_field(out, op, op.field.left(), op.field);
      break;
    case NavKind::kRemoveComplexOp:
      if (op.field.kind() != FieldKind::kComplex) inapplicable(op, "not a combined field");
      replace_field(out, op, op.field, op.field.left());
      break;
  }
  try {
    out.validate();
  } catch (const Error& e) {
    inapplicable(op, e.what());
  }
  return out;
}

AbstractSpec apply_nav_op(const AbstractSpec& spec, const NavOp& op) {
  return canonicalize(apply_nav_op(embed(spec), op.abstracted()));
}

std::vector<NavOp> diff_ops(const AbstractSpec& a, const AbstractSpec& b) {
  std::vector<NavOp> removals;
  std::vector<NavOp> additions;

  auto diff_sorted = [&](const std::vector<FieldExpr>& from, const std::vector<FieldExpr>& to, auto make_remove,
                         auto make_add) {
    std::vector<FieldExpr> gone;
    std::vector<FieldExpr> added;
    std::set_difference(from.begin(), from.end(), to.begin(), to.end(), std::back_inserter(gone));
    std::set_difference(to.begin(), to.end(), from.begin(), from.end(), std::back_inserter(added));
    for (auto& f : gone) removals.push_back(make_remove(std::move(f)));
    for (auto& f : added) additions.push_back(make_add(std::move(f)));
  };
  auto diff_axis = [&](const std::optional<FieldExpr>& from, const std::optional<FieldExpr>& to, Slot slot) {
    if (from == to) return;
    if (from) removals.push_back(NavOp::remove_select(slot, *from));
    if (to) additions.push_back(NavOp::add_select(slot, *to));
  };

  diff_sorted(
      a.filter_descriptors, b.filter_descriptors, [](FieldExpr f) { return NavOp::remove_filter(std::move(f)); },
      [](FieldExpr f) { return NavOp::add_filter(std::move(f)); });
  diff_axis(a.x, b.x, Slot::kX);
  diff_axis(a.y, b.y, Slot::kY);
  diff_sorted(
      a.layers, b.layers, [](FieldExpr f) { return NavOp::remove_select(Slot::kLayer, std::move(f)); },
      [](FieldExpr f) { return NavOp::add_select(Slot::kLayer, std::move(f)); });
  diff_sorted(
      a.grouping, b.grouping, [](FieldExpr f) { return NavOp::remove_group(std::move(f)); },
      [](FieldExpr f) { return NavOp::add_group(std::move(f)); });

  auto less = [](const NavOp& l, const NavOp& r) { return order_key(l.slot, l.field) < order_key(r.slot, r.field); };
  std::sort(removals.begin(), removals.end(), less);
  std::sort(additions.begin(), additions.end(), [&](const NavOp& l, const NavOp& r) { return less(r, l); });

  removals.insert(removals.end(), std::make_move_iterator(additions.begin()), std::make_move_iterator(additions.end()));
  return removals;
}

std::vector<NavOp> diff_ops(const DataSpecification& a, const DataSpecification& b) {
  auto ops = diff_ops(canonicalize(a), canonicalize(b));
  for (auto& op : ops) {
    if (op.kind == NavKind::kRemoveFilter) op.predicates = predicates_on(a.filters, op.field);
    if (op.kind == NavKind::kAddFilter) op.predicates = predicates_on(b.filters, op.field);
  }
  return ops;
}

std::size_t op_distance(const AbstractSpec& a, const AbstractSpec& b) {
  auto symdiff = [](const std::vector<FieldExpr>& l, const std::vector<FieldExpr>& r) {
    std::size_t common = 0;
    auto i = l.begin();
    auto j = r.begin();
    while (i != l.end() && j != r.end()) {
      if (*i < *j) {
        ++i;
      } else if (*j < *i) {
        ++j;
      } else {
        ++common;
        ++i;
        ++j;
      }
    }
    return l.size() + r.size() - 2 * common;
  };
  auto axis = [](const std::optional<FieldExpr>& l, const std::optional<FieldExpr>& r) -> std::size_t {
    if (l == r) return 0;
    return (l ? 1 : 0) + (r ? 1 : 0);
  };
  return symdiff(a.filter_descriptors, b.filter_descriptors) + axis(a.x, b.x) + axis(a.y, b.y) +
         symdiff(a.layers, b.layers) + symdiff(a.grouping, b.grouping);
}

}  // namespace dataslicer
