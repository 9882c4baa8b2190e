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

#include "dataslicer/query.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <optional>

#include "dataslicer/error.hpp"

namespace dataslicer {

namespace {

bool has_whitespace(const std::string& s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
}

std::string quote_ident(const std::string& name) {
  if (!has_whitespace(name)) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_sql_field(const FieldExpr& f) {
  switch (f.kind()) {
    case FieldKind::kSimple: return quote_ident(f.name());
    case FieldKind::kAggregated:
      return std::string(aggregate_name(f.aggregate())) + "(" + render_sql_field(f.inner()) + ")";
    case FieldKind::kComplex:
      return "(" + render_sql_field(f.left()) + std::string(field_op_symbol(f.op())) + render_sql_field(f.right()) +
             ")";
  }
  return f.canonical();
}

std::string render_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string render_literal(const Literal& lit) {
  if (auto i = std::get_if<std::int64_t>(&lit)) return std::to_string(*i);
  if (auto d = std::get_if<double>(&lit)) return render_double(*d);
  if (auto b = std::get_if<bool>(&lit)) return *b ? "TRUE" : "FALSE";
  std::string out = "'";
  for (char c : std::get<std::string>(lit)) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

std::string render_predicate(const FilterPredicate& p) {
  std::string field = render_sql_field(p.field);
  if (!p.comparator) return field + " <op> ?";
  switch (*p.comparator) {
    case Comparator::kIn: {
      std::string out = field + " IN (";
      for (std::size_t i = 0; i < p.operands.size(); ++i) out += (i ? ", " : "") + render_literal(p.operands[i]);
      return out + ")";
    }
    case Comparator::kBetween:
      return field + " BETWEEN " + render_literal(p.operands[0]) + " AND " + render_literal(p.operands[1]);
    default: return field + " " + std::string(comparator_symbol(*p.comparator)) + " " + render_literal(p.operands[0]);
  }
}

const ColumnDef& resolve_column(const DatasetSchema& schema, const std::string& name) {
  return schema.columns[schema.index_of(name)];
}

void resolve_all(const FieldExpr& f, const DatasetSchema& schema) {
  for (const auto& attr : f.attributes()) schema.index_of(attr);
}

bool is_coordinate(const FieldExpr& f, const DatasetSchema& schema) {
  if (!f.is_simple()) return false;
  const ColumnDef* c = schema.find(f.name());
  return c && (c->role == ColumnRole::kLatitude || c->role == ColumnRole::kLongitude);
}

// Clause layout shared by SQL generation and evaluation.
struct Plan {
  bool aggregating = false;
  std::vector<FieldExpr> select;
  std::vector<FieldExpr> group_by;
  std::vector<FieldExpr> centroids;
  std::vector<FilterPredicate> where;
  std::vector<FilterPredicate> having;
};

Plan make_plan(const DataSpecification& spec, const DatasetSchema& schema) {
  spec.validate();
  for (const auto& f : spec.selected_fields()) resolve_all(f, schema);
  for (const auto& f : spec.grouping) resolve_all(f, schema);
  for (const auto& p : spec.filters) resolve_all(p.field, schema);

  Plan plan;
  if (spec.x) plan.select.push_back(*spec.x);
  if (spec.y) plan.select.push_back(*spec.y);
  if (spec.x && spec.y && is_coordinate(*spec.x, schema) && is_coordinate(*spec.y, schema) &&
      resolve_column(schema, spec.x->name()).role == ColumnRole::kLongitude) {
    std::swap(plan.select[0], plan.select[1]);
  }
  plan.select.insert(plan.select.end(), spec.layers.begin(), spec.layers.end());

  for (const auto& p : spec.filters) (p.aggregated ? plan.having : plan.where).push_back(p);

  plan.aggregating = !spec.grouping.empty() || !plan.having.empty() ||
                     std::any_of(plan.select.begin(), plan.select.end(),
                                 [](const FieldExpr& f) { return f.contains_aggregate(); });
  if (!plan.aggregating) return plan;

  plan.group_by = spec.grouping;
  for (const auto& axis : {spec.x, spec.y}) {
    if (!axis || axis->contains_aggregate()) continue;
    if (std::find(plan.group_by.begin(), plan.group_by.end(), *axis) != plan.group_by.end()) continue;
    if (!spec.grouping.empty() && is_coordinate(*axis, schema)) {
      plan.centroids.push_back(*axis);
    } else {
      plan.group_by.push_back(*axis);
    }
  }
  return plan;
}

// ---- evaluation --------------------------------------------------------------

struct Accumulator {
  std::size_t count = 0;
  long double float_sum = 0;
  __int128 int_sum = 0;
  Value min;
  Value max;

  void add(const Value& v) {
    if (std::holds_alternative<std::monostate>(v)) return;
    ++count;
    if (auto i = std::get_if<std::int64_t>(&v)) {
      int_sum += *i;
      float_sum += static_cast<long double>(*i);
    } else if (auto d = std::get_if<double>(&v)) {
      float_sum += static_cast<long double>(*d);
    }
    if (count == 1 || compare_values(v, min) < 0) min = v;
    if (count == 1 || compare_values(v, max) > 0) max = v;
  }
};

struct AggregateSlot {
  FieldExpr field;  // AGG(attribute), or the bare attribute for a centroid
  Aggregate agg;
  std::size_t column;
  ColumnType input_type;
};

ColumnType aggregate_result_type(Aggregate agg, ColumnType input) {
  switch (agg) {
    case Aggregate::kSum: return input == ColumnType::kInt ? ColumnType::kInt : ColumnType::kFloat;
    case Aggregate::kAvg: return ColumnType::kFloat;
    case Aggregate::kMin:
    case Aggregate::kMax: return input;
  }
  return input;
}

Value finish(const Accumulator& acc, const AggregateSlot& slot) {
  if (acc.count == 0) return std::monostate{};
  switch (slot.agg) {
    case Aggregate::kSum:
      if (slot.input_type == ColumnType::kInt) {
        if (acc.int_sum > std::numeric_limits<std::int64_t>::max() ||
            acc.int_sum < std::numeric_limits<std::int64_t>::min()) {
          throw Error(ErrorCode::kTypeMismatch, "integer overflow in " + slot.field.canonical());
        }
        return static_cast<std::int64_t>(acc.int_sum);
      }
      return static_cast<double>(acc.float_sum);
    case Aggregate::kAvg:
      if (slot.input_type == ColumnType::kInt) {
        return static_cast<double>(static_cast<long double>(acc.int_sum) / static_cast<long double>(acc.count));
      }
      return static_cast<double>(acc.float_sum / static_cast<long double>(acc.count));
    case Aggregate::kMin: return acc.min;
    case Aggregate::kMax: return acc.max;
  }
  return std::monostate{};
}

Value literal_to_value(const Literal& lit, ColumnType type, const FieldExpr& field) {
  auto mismatch = [&]() -> Value {
    throw Error(ErrorCode::kTypeMismatch,
                "operand " + render_literal(lit) + " does not fit " + std::string(column_type_name(type)) + " field " +
                    field.canonical(),
                field.canonical());
  };
  switch (type) {
    case ColumnType::kInt:
    case ColumnType::kFloat:
      if (auto i = std::get_if<std::int64_t>(&lit)) return *i;
      if (auto d = std::get_if<double>(&lit)) return *d;
      return mismatch();
    case ColumnType::kDatetime:
      if (auto i = std::get_if<std::int64_t>(&lit)) return *i;
      if (auto s = std::get_if<std::string>(&lit)) {
        if (auto ms = parse_datetime_ms(*s)) return *ms;
      }
      return mismatch();
    case ColumnType::kString:
      if (auto s = std::get_if<std::string>(&lit)) return *s;
      return mismatch();
    case ColumnType::kBool:
      if (auto b = std::get_if<bool>(&lit)) return *b;
      return mismatch();
  }
  return mismatch();
}

struct BoundPredicate {
  Comparator cmp;
  std::vector<Value> operands;
  std::size_t source;  // column index (WHERE) or aggregate slot (HAVING)

  bool test(const Value& v) const {
    if (std::holds_alternative<std::monostate>(v)) return false;
    switch (cmp) {
      case Comparator::kLt: return compare_values(v, operands[0]) < 0;
      case Comparator::kLe: return compare_values(v, operands[0]) <= 0;
      case Comparator::kEq: return compare_values(v, operands[0]) == 0;
      case Comparator::kNe: return compare_values(v, operands[0]) != 0;
      case Comparator::kGe: return compare_values(v, operands[0]) >= 0;
      case Comparator::kGt: return compare_values(v, operands[0]) > 0;
      case Comparator::kIn:
        return std::any_of(operands.begin(), operands.end(),
                           [&](const Value& o) { return compare_values(v, o) == 0; });
      case Comparator::kBetween:
        return compare_values(v, operands[0]) >= 0 && compare_values(v, operands[1]) <= 0;
    }
    return false;
  }
};

BoundPredicate bind(const FilterPredicate& p, ColumnType type, std::size_t source) {
  if (!p.comparator) {
    throw Error(ErrorCode::kUnboundFilter, "filter on " + p.field.canonical() + " has no bounds", p.field.canonical());
  }
  BoundPredicate b{*p.comparator, {}, source};
  for (const auto& lit : p.operands) b.operands.push_back(literal_to_value(lit, type, p.field));
  return b;
}

void require_evaluable(const FieldExpr& f) {
  if (f.kind() == FieldKind::kComplex) {
    throw Error(ErrorCode::kUnsupportedField, "complex field " + f.canonical() + " cannot be evaluated",
                f.canonical());
  }
  if (f.kind() == FieldKind::kAggregated && !f.inner().is_simple()) {
    throw Error(ErrorCode::kUnsupportedField, "aggregate over a non-attribute in " + f.canonical(), f.canonical());
  }
}

struct KeyLess {
  bool operator()(const std::vector<Value>& a, const std::vector<Value>& b) const {
    for (std::size_t i = 0; i < a.size(); ++i) {
      int c = compare_values(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

}  // namespace

nlohmann::json encode_result_table(const ResultTable& table) {
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : table.columns) cols.push_back({{"label", c.label}, {"type", std::string(column_type_name(c.type))}});
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t i = 0; i < r.size(); ++i) row.push_back(encode_value(r[i], table.columns[i].type));
    rows.push_back(std::move(row));
  }
  return {{"columns", cols}, {"rows", rows}};
}

std::string to_sql_template(const DataSpecification& spec, const DatasetSchema& schema) {
  Plan plan = make_plan(spec, schema);
  auto join = [](const auto& items, const char* sep, auto render) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += sep;
      out += render(items[i]);
    }
    return out;
  };
  std::string sql = "SELECT ";
  sql += plan.select.empty() ? std::string("*") : join(plan.select, ", ", render_sql_field);
  sql += " FROM " + quote_ident(schema.name);
  if (!plan.where.empty()) sql += " WHERE " + join(plan.where, " AND ", render_predicate);
  if (!plan.group_by.empty()) sql += " GROUP BY " + join(plan.group_by, ", ", render_sql_field);
  if (!plan.having.empty()) sql += " HAVING " + join(plan.having, " AND ", render_predicate);
  return sql;
}

ResultTable evaluate(const Dataset& dataset, const DataSpecification& spec) {
  const DatasetSchema& schema = dataset.schema();
  Plan plan = make_plan(spec, schema);
  for (const auto& f : plan.select) require_evaluable(f);
  for (const auto& f : spec.grouping) require_evaluable(f);
  for (const auto& p : spec.filters) require_evaluable(p.field);

  std::vector<BoundPredicate> where;
  for (const auto& p : plan.where) {
    std::size_t col = schema.index_of(p.field.name());
    where.push_back(bind(p, schema.columns[col].type, col));
  }
  auto row_passes = [&](std::size_t row) {
    return std::all_of(where.begin(), where.end(),
                       [&](const BoundPredicate& b) { return b.test(dataset.column(b.source)[row]); });
  };

  ResultTable table;
  if (!plan.aggregating) {
    std::vector<std::size_t> cols;
    for (const auto& f : plan.select) {
      cols.push_back(schema.index_of(f.name()));
      table.columns.push_back({f.canonical(), schema.columns[cols.back()].type});
    }
    if (plan.select.empty()) {  // SELECT *
      for (std::size_t c = 0; c < schema.columns.size(); ++c) {
        cols.push_back(c);
        table.columns.push_back({schema.columns[c].name, schema.columns[c].type});
      }
    }
    for (std::size_t r = 0; r < dataset.row_count(); ++r) {
      if (!row_passes(r)) continue;
      std::vector<Value> out;
      out.reserve(cols.size());
      for (auto c : cols) out.push_back(dataset.column(c)[r]);
      table.rows.push_back(std::move(out));
    }
    return table;
  }

  std::vector<std::size_t> key_cols;
  for (const auto& f : plan.group_by) key_cols.push_back(schema.index_of(f.name()));

  std::vector<AggregateSlot> slots;
  auto slot_for = [&](const FieldExpr& f, Aggregate agg) -> std::size_t {
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (slots[i].field == f && slots[i].agg == agg) return i;
    }
    const FieldExpr& attr = f.is_simple() ? f : f.inner();
    std::size_t col = schema.index_of(attr.name());
    ColumnType type = schema.columns[col].type;
    if ((agg == Aggregate::kSum || agg == Aggregate::kAvg) && type != ColumnType::kInt &&
        type != ColumnType::kFloat) {
      throw Error(ErrorCode::kTypeMismatch,
                  std::string(aggregate_name(agg)) + " needs a numeric attribute, '" + attr.name() + "' is " +
                      std::string(column_type_name(type)),
                  f.canonical());
    }
    slots.push_back({f, agg, col, type});
    return slots.size() - 1;
  };

  struct OutputItem {
    enum { kKey, kSlot } source;
    std::size_t index;
  };
  std::vector<OutputItem> outputs;
  for (const auto& f : plan.select) {
    if (f.contains_aggregate()) {
      std::size_t s = slot_for(f, f.aggregate());
      outputs.push_back({OutputItem::kSlot, s});
      table.columns.push_back({f.canonical(), aggregate_result_type(slots[s].agg, slots[s].input_type)});
      continue;
    }
    auto key = std::find(plan.group_by.begin(), plan.group_by.end(), f);
    if (key != plan.group_by.end()) {
      auto k = static_cast<std::size_t>(key - plan.group_by.begin());
      outputs.push_back({OutputItem::kKey, k});
      table.columns.push_back({f.canonical(), schema.columns[key_cols[k]].type});
      continue;
    }
    if (std::find(plan.centroids.begin(), plan.centroids.end(), f) != plan.centroids.end()) {
      std::size_t s = slot_for(f, Aggregate::kAvg);
      outputs.push_back({OutputItem::kSlot, s});
      table.columns.push_back({f.canonical(), ColumnType::kFloat});
      continue;
    }
    throw Error(ErrorCode::kUngroupedField,
                "field " + f.canonical() + " is neither aggregated nor part of the grouping", f.canonical());
  }

  std::vector<BoundPredicate> having;
  for (const auto& p : plan.having) {
    std::size_t s = slot_for(p.field, p.field.aggregate());
    having.push_back(bind(p, aggregate_result_type(slots[s].agg, slots[s].input_type), s));
  }

  std::map<std::vector<Value>, std::vector<Accumulator>, KeyLess> groups;
  std::vector<Value> key(key_cols.size());
  for (std::size_t r = 0; r < dataset.row_count(); ++r) {
    if (!row_passes(r)) continue;
    for (std::size_t k = 0; k < key_cols.size(); ++k) key[k] = dataset.column(key_cols[k])[r];
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) it->second.resize(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) it->second[s].add(dataset.column(slots[s].column)[r]);
  }

  // SQL semantics: no GROUP BY means exactly one group, even over no rows.
  if (key_cols.empty() && groups.empty()) groups[{}].resize(slots.size());
  for (const auto& [group_key, accs] : groups) {
    std::vector<Value> finished;
    finished.reserve(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) finished.push_back(finish(accs[s], slots[s]));
    bool keep = std::all_of(having.begin(), having.end(),
                            [&](const BoundPredicate& b) { return b.test(finished[b.source]); });
    if (!keep) continue;
    std::vector<Value> row;
    row.reserve(outputs.size());
    for (const auto& o : outputs) row.push_back(o.source == OutputItem::kKey ? group_key[o.index] : finished[o.index]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace dataslicer
