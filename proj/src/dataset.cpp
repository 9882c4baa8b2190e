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

#include "dataslicer/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "dataslicer/error.hpp"
#include "dataslicer/io.hpp"

namespace dataslicer {

std::string_view column_type_name(ColumnType type) {
  switch (type) {
    case ColumnType::kInt: return "int";
    case ColumnType::kFloat: return "float";
    case ColumnType::kString: return "string";
    case ColumnType::kDatetime: return "datetime";
    case ColumnType::kBool: return "bool";
  }
  return "string";
}

std::string_view column_role_name(ColumnRole role) {
  switch (role) {
    case ColumnRole::kMeasure: return "measure";
    case ColumnRole::kDimension: return "dimension";
    case ColumnRole::kLatitude: return "latitude";
    case ColumnRole::kLongitude: return "longitude";
    case ColumnRole::kNone: return "none";
  }
  return "none";
}

void DatasetSchema::validate() const {
  if (name.empty()) throw Error(ErrorCode::kInvalidArgument, "schema name must not be empty");
  std::set<std::string> seen;
  int latitudes = 0;
  int longitudes = 0;
  for (const auto& c : columns) {
    if (c.name.empty()) throw Error(ErrorCode::kInvalidArgument, "column name must not be empty");
    if (!seen.insert(c.name).second) throw Error(ErrorCode::kInvalidArgument, "duplicate column '" + c.name + "'");
    latitudes += c.role == ColumnRole::kLatitude;
    longitudes += c.role == ColumnRole::kLongitude;
    if (c.generated_ones && c.type != ColumnType::kInt) {
      throw Error(ErrorCode::kInvalidArgument, "generated column '" + c.name + "' must be int");
    }
  }
  if (latitudes > 1 || longitudes > 1) {
    throw Error(ErrorCode::kInvalidArgument, "at most one latitude and one longitude column");
  }
}

const ColumnDef* DatasetSchema::find(std::string_view column) const {
  for (const auto& c : columns) {
    if (c.name == column) return &c;
  }
  return nullptr;
}

std::size_t DatasetSchema::index_of(std::string_view column) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == column) return i;
  }
  throw Error(ErrorCode::kUnresolvedField, "unknown attribute '" + std::string(column) + "' in dataset '" + name + "'",
              std::string(column));
}

DatasetSchema decode_schema(const nlohmann::json& doc) {
  auto fail = [](const std::string& where, const std::string& why) -> void {
    throw Error(ErrorCode::kFormatError, "schema " + where + ": " + why, where);
  };
  if (!doc.is_object()) fail("/", "expected an object");
  DatasetSchema schema;
  if (!doc.contains("name") || !doc["name"].is_string()) fail("/name", "missing dataset name");
  schema.name = doc["name"].get<std::string>();
  if (!doc.contains("columns") || !doc["columns"].is_array()) fail("/columns", "missing columns array");
  for (std::size_t i = 0; i < doc["columns"].size(); ++i) {
    const auto& c = doc["columns"][i];
    std::string where = "/columns/" + std::to_string(i);
    if (!c.is_object() || !c.contains("name") || !c["name"].is_string()) fail(where, "column needs a name");
    ColumnDef def;
    def.name = c["name"].get<std::string>();
    std::string type = c.value("type", "string");
    if (type == "int" || type == "integer") {
      def.type = ColumnType::kInt;
    } else if (type == "float" || type == "double" || type == "number") {
      def.type = ColumnType::kFloat;
    } else if (type == "string") {
      def.type = ColumnType::kString;
    } else if (type == "datetime") {
      def.type = ColumnType::kDatetime;
    } else if (type == "bool" || type == "boolean") {
      def.type = ColumnType::kBool;
    } else {
      fail(where + "/type", "unknown type '" + type + "'");
    }
    std::string role = c.value("role", "none");
    if (role == "measure") {
      def.role = ColumnRole::kMeasure;
    } else if (role == "dimension") {
      def.role = ColumnRole::kDimension;
    } else if (role == "latitude") {
      def.role = ColumnRole::kLatitude;
    } else if (role == "longitude") {
      def.role = ColumnRole::kLongitude;
    } else if (role == "none") {
      def.role = ColumnRole::kNone;
    } else {
      fail(where + "/role", "unknown role '" + role + "'");
    }
    if (c.contains("generated")) {
      if (c["generated"] != "ones") fail(where + "/generated", "only \"ones\" is supported");
      def.generated_ones = true;
    }
    schema.columns.push_back(std::move(def));
  }
  try {
    schema.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormatError, std::string("schema: ") + e.what(), "/columns");
  }
  return schema;
}

nlohmann::json encode_schema(const DatasetSchema& schema) {
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : schema.columns) {
    nlohmann::json col = {{"name", c.name},
                          {"type", std::string(column_type_name(c.type))},
                          {"role", std::string(column_role_name(c.role))}};
    if (c.generated_ones) col["generated"] = "ones";
    cols.push_back(std::move(col));
  }
  return {{"name", schema.name}, {"columns", cols}};
}

int compare_values(const Value& a, const Value& b) {
  bool a_null = std::holds_alternative<std::monostate>(a);
  bool b_null = std::holds_alternative<std::monostate>(b);
  if (a_null || b_null) return a_null == b_null ? 0 : (a_null ? 1 : -1);
  auto as_number = [](const Value& v) -> std::optional<long double> {
    if (auto i = std::get_if<std::int64_t>(&v)) return static_cast<long double>(*i);
    if (auto d = std::get_if<double>(&v)) return static_cast<long double>(*d);
    return std::nullopt;
  };
  auto na = as_number(a);
  auto nb = as_number(b);
  if (na && nb) {
    if (std::holds_alternative<std::int64_t>(a) && std::holds_alternative<std::int64_t>(b)) {
      auto ia = std::get<std::int64_t>(a);
      auto ib = std::get<std::int64_t>(b);
      return ia < ib ? -1 : (ia > ib ? 1 : 0);
    }
    return *na < *nb ? -1 : (*na > *nb ? 1 : 0);
  }
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  if (auto sa = std::get_if<std::string>(&a)) {
    int c = sa->compare(std::get<std::string>(b));
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  bool ba = std::get<bool>(a);
  bool bb = std::get<bool>(b);
  return ba == bb ? 0 : (ba ? 1 : -1);
}

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y += m <= 2;
}

bool read_digits(std::string_view text, std::size_t& pos, std::size_t count, int& out) {
  if (pos + count > text.size()) return false;
  out = 0;
  for (std::size_t i = 0; i < count; ++i) {
    char c = text[pos + i];
    if (c < '0' || c > '9') return false;
    out = out * 10 + (c - '0');
  }
  pos += count;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<std::int64_t> parse_datetime_ms(std::string_view text) {
  text = trim(text);
  std::size_t pos = 0;
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0, millis = 0;
  if (!read_digits(text, pos, 4, year) || pos >= text.size() || text[pos++] != '-') return std::nullopt;
  if (!read_digits(text, pos, 2, month) || pos >= text.size() || text[pos++] != '-') return std::nullopt;
  if (!read_digits(text, pos, 2, day)) return std::nullopt;
  if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;
  if (pos < text.size() && (text[pos] == 'T' || text[pos] == ' ')) {
    ++pos;
    if (!read_digits(text, pos, 2, hour) || pos >= text.size() || text[pos++] != ':') return std::nullopt;
    if (!read_digits(text, pos, 2, minute)) return std::nullopt;
    if (pos < text.size() && text[pos] == ':') {
      ++pos;
      if (!read_digits(text, pos, 2, second)) return std::nullopt;
      if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        std::string_view frac = text.substr(start, pos - start);
        if (frac.empty()) return std::nullopt;
        std::string ms(frac.substr(0, 3));
        while (ms.size() < 3) ms += '0';
        millis = std::stoi(ms);
      }
    }
    if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
  }
  if (pos < text.size() && text[pos] == 'Z') ++pos;
  if (pos != text.size()) return std::nullopt;
  std::int64_t days = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
  return ((days * 24 + hour) * 60 + minute) * 60000 + second * 1000 + millis;
}

std::string format_datetime_ms(std::int64_t ms) {
  std::int64_t days = ms >= 0 ? ms / 86400000 : -((-ms + 86399999) / 86400000);
  std::int64_t rem = ms - days * 86400000;
  std::int64_t y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  char buf[160];
  auto h = rem / 3600000;
  auto mi = (rem / 60000) % 60;
  auto s = (rem / 1000) % 60;
  auto milli = rem % 1000;
  if (milli != 0) {
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lld.%03lldZ", static_cast<long long>(y), m, d,
                  static_cast<long long>(h), static_cast<long long>(mi), static_cast<long long>(s),
                  static_cast<long long>(milli));
  } else {
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ", static_cast<long long>(y), m, d,
                  static_cast<long long>(h), static_cast<long long>(mi), static_cast<long long>(s));
  }
  return buf;
}

nlohmann::json encode_value(const Value& value, ColumnType type) {
  if (std::holds_alternative<std::monostate>(value)) return nullptr;
  if (type == ColumnType::kDatetime) {
    if (auto i = std::get_if<std::int64_t>(&value)) return format_datetime_ms(*i);
  }
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else {
          return v;
        }
      },
      value);
}

Dataset::Dataset(DatasetSchema schema, std::vector<std::vector<Value>> columns)
    : schema_(std::move(schema)), columns_(std::move(columns)) {
  if (columns_.size() != schema_.columns.size()) {
    throw Error(ErrorCode::kInvalidArgument, "column count does not match schema");
  }
  row_count_ = columns_.empty() ? 0 : columns_.front().size();
  for (const auto& c : columns_) {
    if (c.size() != row_count_) throw Error(ErrorCode::kInvalidArgument, "ragged columns");
  }
}

std::vector<std::vector<CsvField>> parse_csv(std::string_view text) {
  std::vector<std::vector<CsvField>> records;
  std::vector<CsvField> record;
  CsvField field;
  std::size_t i = 0;
  std::size_t line = 1;
  bool in_quotes = false;
  bool field_started = false;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") i = 3;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field = CsvField{};
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  while (i < text.size()) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.text += '"';
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          throw Error(ErrorCode::kFormatError, "CSV line " + std::to_string(line) + ": text after closing quote",
                      "line " + std::to_string(line));
        }
        continue;
      }
      if (c == '\n') ++line;
      field.text += c;
      ++i;
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field.quoted = true;
      field_started = true;
      ++i;
      continue;
    }
    if (c == ',') {
      end_field();
      ++i;
      continue;
    }
    if (c == '\r' || c == '\n') {
      end_record();
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      ++i;
      ++line;
      continue;
    }
    field.text += c;
    field_started = true;
    ++i;
  }
  if (in_quotes) {
    throw Error(ErrorCode::kFormatError, "CSV: unterminated quoted field", "line " + std::to_string(line));
  }
  if (field_started || !record.empty()) end_record();
  // Blank lines carry no data.
  std::erase_if(records, [](const std::vector<CsvField>& r) { return r.size() == 1 && r[0].text.empty() && !r[0].quoted; });
  return records;
}

namespace {

Value convert_cell(const CsvField& cell, const ColumnDef& col, std::size_t row) {
  auto type_error = [&]() -> Value {
    throw Error(ErrorCode::kTypeError,
                "row " + std::to_string(row) + ", column '" + col.name + "': cannot read '" + cell.text + "' as " +
                    std::string(column_type_name(col.type)),
                "row=" + std::to_string(row) + ";column=" + col.name + ";text=" + cell.text);
  };
  if (col.type == ColumnType::kString) {
    if (cell.text.empty() && !cell.quoted) return std::monostate{};
    return cell.text;
  }
  std::string_view text = trim(cell.text);
  if (text.empty()) return std::monostate{};
  switch (col.type) {
    case ColumnType::kInt: {
      std::int64_t v = 0;
      auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || p != text.data() + text.size()) return type_error();
      return v;
    }
    case ColumnType::kFloat: {
      double v = 0;
      auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || p != text.data() + text.size() || !std::isfinite(v)) return type_error();
      return v;
    }
    case ColumnType::kDatetime: {
      auto ms = parse_datetime_ms(text);
      if (!ms) return type_error();
      return *ms;
    }
    case ColumnType::kBool: {
      std::string lower(text);
      for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      if (lower == "true" || lower == "1") return true;
      if (lower == "false" || lower == "0") return false;
      return type_error();
    }
    case ColumnType::kString: break;
  }
  return type_error();
}

}  // namespace

Dataset load_dataset(std::string_view csv_text, DatasetSchema schema) {
  schema.validate();
  auto records = parse_csv(csv_text);
  if (records.empty()) throw Error(ErrorCode::kSchemaMismatch, "CSV has no header row");
  const auto& header = records.front();

  std::vector<std::size_t> source(schema.columns.size(), static_cast<std::size_t>(-1));
  std::set<std::string> seen;
  for (std::size_t h = 0; h < header.size(); ++h) {
    std::string name(trim(header[h].text));
    if (!seen.insert(name).second) throw Error(ErrorCode::kSchemaMismatch, "duplicate CSV column '" + name + "'", name);
    const ColumnDef* def = schema.find(name);
    if (!def || def->generated_ones) {
      throw Error(ErrorCode::kSchemaMismatch, "CSV column '" + name + "' is not declared in the schema", name);
    }
    source[schema.index_of(name)] = h;
  }
  for (std::size_t c = 0; c < schema.columns.size(); ++c) {
    if (!schema.columns[c].generated_ones && source[c] == static_cast<std::size_t>(-1)) {
      throw Error(ErrorCode::kSchemaMismatch, "CSV is missing column '" + schema.columns[c].name + "'",
                  schema.columns[c].name);
    }
  }

  std::size_t rows = records.size() - 1;
  std::vector<std::vector<Value>> columns(schema.columns.size());
  for (auto& col : columns) col.reserve(rows);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != header.size()) {
      throw Error(ErrorCode::kFormatError,
                  "CSV row " + std::to_string(r) + " has " + std::to_string(rec.size()) + " fields, expected " +
                      std::to_string(header.size()),
                  "row=" + std::to_string(r));
    }
    for (std::size_t c = 0; c < schema.columns.size(); ++c) {
      const auto& def = schema.columns[c];
      if (def.generated_ones) {
        columns[c].emplace_back(std::int64_t{1});
      } else {
        columns[c].push_back(convert_cell(rec[source[c]], def, r));
      }
    }
  }
  return Dataset(std::move(schema), std::move(columns));
}


Dataset load_dataset_file(const std::string& csv_path, DatasetSchema schema) {
  return load_dataset(read_text_file(csv_path), std::move(schema));
}

DatasetSchema load_schema_file(const std::string& path) {
  std::string text = read_text_file(path);
  try {
    return decode_schema(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormatError, "schema '" + path + "': " + e.what(), path);
  }
}

}  // namespace dataslicer
