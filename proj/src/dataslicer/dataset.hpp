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
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace dataslicer {

enum class ColumnType { kInt, kFloat, kString, kDatetime, kBool };
enum class ColumnRole { kMeasure, kDimension, kLatitude, kLongitude, kNone };

std::string_view column_type_name(ColumnType type);
std::string_view column_role_name(ColumnRole role);

struct ColumnDef {
  std::string name;
  ColumnType type = ColumnType::kString;
  ColumnRole role = ColumnRole::kNone;
  // Not read from the CSV: every row holds 1. Backs "number of records".
  bool generated_ones = false;

  bool is_numeric() const noexcept {
    return type == ColumnType::kInt || type == ColumnType::kFloat || type == ColumnType::kDatetime;
  }
};

struct DatasetSchema {
  std::string name;
  std::vector<ColumnDef> columns;

  // Throws Error(kInvalidArgument) on duplicate names or repeated coordinate roles.
  void validate() const;
  const ColumnDef* find(std::string_view column) const;
  std::size_t index_of(std::string_view column) const;  // throws kUnresolvedField
};

DatasetSchema decode_schema(const nlohmann::json& doc);
nlohmann::json encode_schema(const DatasetSchema& schema);

// Null is std::monostate; datetimes are milliseconds since the Unix epoch.
using Value = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

// Total order: same-kind values compare naturally, ints and doubles compare
// numerically, null sorts after everything.
int compare_values(const Value& a, const Value& b);

// Accepts YYYY-MM-DD with optional `T`/space time HH:MM[:SS[.fff]] and `Z`.
std::optional<std::int64_t> parse_datetime_ms(std::string_view text);
std::string format_datetime_ms(std::int64_t ms);

nlohmann::json encode_value(const Value& value, ColumnType type);

/// Immutable column-major table bound to a schema.
class Dataset {
 public:
  Dataset(DatasetSchema schema, std::vector<std::vector<Value>> columns);

  const DatasetSchema& schema() const noexcept { return schema_; }
  std::size_t row_count() const noexcept { return row_count_; }
  const std::vector<Value>& column(std::size_t index) const { return columns_.at(index); }

 private:
  DatasetSchema schema_;
  std::vector<std::vector<Value>> columns_;
  std::size_t row_count_ = 0;
};

// RFC 4180 records. A quoted field keeps its quotes in `quoted` so empty
// quoted strings can be told apart from missing values.
struct CsvField {
  std::string text;
  bool quoted = false;
};
std::vector<std::vector<CsvField>> parse_csv(std::string_view text);

// Throws kSchemaMismatch (header vs schema), kTypeError (row, column, text) or
// kFormatError (malformed CSV).
Dataset load_dataset(std::string_view csv_text, DatasetSchema schema);
Dataset load_dataset_file(const std::string& csv_path, DatasetSchema schema);
DatasetSchema load_schema_file(const std::string& path);

}  // namespace dataslicer
