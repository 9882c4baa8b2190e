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

#include "dataslicer/codec.hpp"

#include <algorithm>

#include "dataslicer/error.hpp"

namespace dataslicer::codec {

namespace {

[[noreturn]] void format_error(const std::string& where, const std::string& why) {
  throw Error(ErrorCode::kFormatError, (where.empty() ? std::string("/") : where) + ": " + why,
              where.empty() ? "/" : where);
}

const Json* member(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return nullptr;
  return &*it;
}

void require_object(const Json& doc, const std::string& where) {
  if (!doc.is_object()) format_error(where, "expected an object");
}

std::vector<FieldExpr> decode_field_list(const Json& doc, const char* key, const std::string& where) {
  std::vector<FieldExpr> out;
  const Json* arr = member(doc, key);
  if (!arr) return out;
  std::string here = where + "/" + key;
  if (!arr->is_array()) format_error(here, "expected an array");
  for (std::size_t i = 0; i < arr->size(); ++i) out.push_back(decode_field((*arr)[i], here + "/" + std::to_string(i)));
  return out;
}

std::optional<FieldExpr> decode_optional_field(const Json& doc, const char* key, const std::string& where) {
  const Json* f = member(doc, key);
  if (!f) return std::nullopt;
  return decode_field(*f, where + "/" + key);
}

Json encode_fields(const std::vector<FieldExpr>& fields) {
  Json arr = Json::array();
  for (const auto& f : fields) arr.push_back(f.canonical());
  return arr;
}

Json encode_optional(const std::optional<FieldExpr>& f) { return f ? Json(f->canonical()) : Json(nullptr); }

template <typename Fn>
auto rethrow_as_format(const std::string& where, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kFormatError) throw;
    format_error(where, e.what());
  }
}

}  // namespace

Json encode_literal(const Literal& value) {
  return std::visit([](const auto& v) { return Json(v); }, value);
}

Literal decode_literal(const Json& doc, const std::string& where) {
  if (doc.is_number_integer()) return doc.get<std::int64_t>();
  if (doc.is_number_float()) return doc.get<double>();
  if (doc.is_boolean()) return doc.get<bool>();
  if (doc.is_string()) return doc.get<std::string>();
  format_error(where, "operand must be a number, boolean or string");
}

Json encode_field(const FieldExpr& field) { return field.canonical(); }

FieldExpr decode_field(const Json& doc, const std::string& where) {
  if (!doc.is_string()) format_error(where, "field must be a string rendering");
  try {
    return FieldExpr::parse(doc.get<std::string>());
  } catch (const Error& e) {
    format_error(where, e.what());
  }
}

Json encode_predicate(const FilterPredicate& predicate) {
  Json ops = Json::array();
  for (const auto& o : predicate.operands) ops.push_back(encode_literal(o));
  Json doc = {{"field", predicate.field.canonical()},
              {"comparator", predicate.comparator ? Json(std::string(comparator_symbol(*predicate.comparator)))
                                                  : Json(nullptr)},
              {"operands", ops},
              {"aggregated", predicate.aggregated}};
  if (predicate.is_placeholder()) doc["placeholder"] = true;
  return doc;
}

FilterPredicate decode_predicate(const Json& doc, const std::string& where) {
  require_object(doc, where);
  const Json* field = member(doc, "field");
  if (!field) format_error(where, "missing 'field'");
  FieldExpr f = decode_field(*field, where + "/field");
  std::optional<Comparator> cmp;
  if (const Json* c = member(doc, "comparator")) {
    if (!c->is_string()) format_error(where + "/comparator", "expected a string");
    cmp = comparator_from_symbol(c->get<std::string>());
    if (!cmp) format_error(where + "/comparator", "unknown comparator '" + c->get<std::string>() + "'");
  }
  std::vector<Literal> operands;
  if (const Json* ops = member(doc, "operands")) {
    if (!ops->is_array()) format_error(where + "/operands", "expected an array");
    for (std::size_t i = 0; i < ops->size(); ++i) {
      operands.push_back(decode_literal((*ops)[i], where + "/operands/" + std::to_string(i)));
    }
  }
  bool aggregated = f.contains_aggregate();
  if (const Json* a = member(doc, "aggregated")) {
    if (!a->is_boolean()) format_error(where + "/aggregated", "expected a boolean");
    aggregated = a->get<bool>();
  }
  FilterPredicate p{std::move(f), cmp, std::move(operands), aggregated};
  rethrow_as_format(where, [&] {
    p.validate();
    return 0;
  });
  return p;
}

Json encode_spec(const DataSpecification& spec) {
  Json filters = Json::array();
  for (const auto& p : spec.filters) filters.push_back(encode_predicate(p));
  return Json{{"x", encode_optional(spec.x)},
              {"y", encode_optional(spec.y)},
              {"layers", encode_fields(spec.layers)},
              {"filters", filters},
              {"grouping", encode_fields(spec.grouping)}};
}

DataSpecification decode_spec(const Json& doc, const std::string& where) {
  require_object(doc, where);
  DataSpecification spec;
  spec.x = decode_optional_field(doc, "x", where);
  spec.y = decode_optional_field(doc, "y", where);
  spec.layers = decode_field_list(doc, "layers", where);
  spec.grouping = decode_field_list(doc, "grouping", where);
  if (const Json* filters = member(doc, "filters")) {
    if (!filters->is_array()) format_error(where + "/filters", "expected an array");
    for (std::size_t i = 0; i < filters->size(); ++i) {
      spec.filters.push_back(decode_predicate((*filters)[i], where + "/filters/" + std::to_string(i)));
    }
  }
  rethrow_as_format(where, [&] {
    spec.validate();
    return 0;
  });
  return spec;
}

Json encode_abstract_spec(const AbstractSpec& spec) {
  return Json{{"x", encode_optional(spec.x)},
              {"y", encode_optional(spec.y)},
              {"layers", encode_fields(spec.layers)},
              {"filters", encode_fields(spec.filter_descriptors)},
              {"grouping", encode_fields(spec.grouping)}};
}

AbstractSpec decode_abstract_spec(const Json& doc, const std::string& where) {
  require_object(doc, where);
  AbstractSpec spec;
  spec.x = decode_optional_field(doc, "x", where);
  spec.y = decode_optional_field(doc, "y", where);
  spec.layers = decode_field_list(doc, "layers", where);
  spec.filter_descriptors = decode_field_list(doc, "filters", where);
  spec.grouping = decode_field_list(doc, "grouping", where);
  auto canonical_list = [&](const std::vector<FieldExpr>& fields, const char* key) {
    if (!std::is_sorted(fields.begin(), fields.end()) ||
        std::adjacent_find(fields.begin(), fields.end()) != fields.end()) {
      format_error(where + "/" + key, "must be sorted by canonical rendering without duplicates");
    }
  };
  canonical_list(spec.layers, "layers");
  canonical_list(spec.filter_descriptors, "filters");
  canonical_list(spec.grouping, "grouping");
  if (spec.x && spec.y && *spec.x == *spec.y) format_error(where, "x and y must differ");
  return spec;
}

Json encode_visual(const VisualSpec& visual) {
  Json enc = Json::array();
  for (const auto& e : visual.encodings) enc.push_back({{"field", e.field.canonical()}, {"cue", e.cue}});
  Json extra = Json::object();
  for (const auto& [k, v] : visual.extra) extra[k] = v;
  return Json{{"chartType", visual.chart_type}, {"encodings", enc}, {"extra", extra}};
}

VisualSpec decode_visual(const Json& doc, const std::string& where) {
  require_object(doc, where);
  VisualSpec visual;
  if (const Json* chart = member(doc, "chartType")) {
    if (!chart->is_string()) format_error(where + "/chartType", "expected a string");
    visual.chart_type = chart->get<std::string>();
  }
  if (const Json* enc = member(doc, "encodings")) {
    if (!enc->is_array()) format_error(where + "/encodings", "expected an array");
    for (std::size_t i = 0; i < enc->size(); ++i) {
      std::string here = where + "/encodings/" + std::to_string(i);
      const Json& e = (*enc)[i];
      require_object(e, here);
      const Json* field = member(e, "field");
      const Json* cue = member(e, "cue");
      if (!field || !cue || !cue->is_string()) format_error(here, "encoding needs 'field' and string 'cue'");
      visual.encodings.push_back(Encoding{decode_field(*field, here + "/field"), cue->get<std::string>()});
    }
  }
  if (const Json* extra = member(doc, "extra")) {
    if (!extra->is_object()) format_error(where + "/extra", "expected an object");
    for (const auto& [k, v] : extra->items()) visual.extra[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  return visual;
}

namespace {

std::optional<NavKind> nav_kind_from_name(const std::string& name) {
  for (auto k : {NavKind::kAddFilter, NavKind::kRemoveFilter, NavKind::kAddSelectField, NavKind::kRemoveSelectField,
                 NavKind::kAddGroupField, NavKind::kRemoveGroupField, NavKind::kAddComplexOp,
                 NavKind::kRemoveComplexOp}) {
    if (nav_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

std::optional<Slot> slot_from_name(const std::string& name) {
  for (auto s : {Slot::kFilter, Slot::kX, Slot::kY, Slot::kLayer, Slot::kGrouping}) {
    if (slot_name(s) == name) return s;
  }
  return std::nullopt;
}

}  // namespace

Json encode_nav_op(const NavOp& op) {
  Json doc = {{"kind", std::string(nav_kind_name(op.kind))},
              {"slot", std::string(slot_name(op.slot))},
              {"field", op.field.canonical()}};
  if (!op.predicates.empty()) {
    Json preds = Json::array();
    for (const auto& p : op.predicates) preds.push_back(encode_predicate(p));
    doc["predicates"] = preds;
  }
  return doc;
}

NavOp decode_nav_op(const Json& doc, const std::string& where) {
  require_object(doc, where);
  const Json* kind = member(doc, "kind");
  const Json* slot = member(doc, "slot");
  const Json* field = member(doc, "field");
  if (!kind || !kind->is_string()) format_error(where + "/kind", "missing op kind");
  if (!slot || !slot->is_string()) format_error(where + "/slot", "missing op slot");
  if (!field) format_error(where + "/field", "missing op field");
  auto k = nav_kind_from_name(kind->get<std::string>());
  if (!k) format_error(where + "/kind", "unknown op kind '" + kind->get<std::string>() + "'");
  auto s = slot_from_name(slot->get<std::string>());
  if (!s) format_error(where + "/slot", "unknown slot '" + slot->get<std::string>() + "'");
  NavOp op{*k, *s, decode_field(*field, where + "/field"), {}};
  if (const Json* preds = member(doc, "predicates")) {
    if (!preds->is_array()) format_error(where + "/predicates", "expected an array");
    for (std::size_t i = 0; i < preds->size(); ++i) {
      op.predicates.push_back(decode_predicate((*preds)[i], where + "/predicates/" + std::to_string(i)));
    }
  }
  bool filter_kind = *k == NavKind::kAddFilter || *k == NavKind::kRemoveFilter;
  bool group_kind = *k == NavKind::kAddGroupField || *k == NavKind::kRemoveGroupField;
  bool select_kind = *k == NavKind::kAddSelectField || *k == NavKind::kRemoveSelectField;
  if ((filter_kind && *s != Slot::kFilter) || (group_kind && *s != Slot::kGrouping) ||
      (select_kind && *s != Slot::kX && *s != Slot::kY && *s != Slot::kLayer)) {
    format_error(where + "/slot", "slot does not fit op kind");
  }
  if ((*k == NavKind::kAddComplexOp || *k == NavKind::kRemoveComplexOp) && op.field.kind() != FieldKind::kComplex) {
    format_error(where + "/field", "complex-field op needs a combined field");
  }
  return op;
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kFormatError, what + ": " + e.what(), "byte " + std::to_string(e.byte));
  }
}

}  // namespace dataslicer::codec
