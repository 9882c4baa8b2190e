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

#include <string>
#include <vector>

#include <json.hpp>

#include "dataslicer/dataset.hpp"
#include "dataslicer/spec.hpp"

namespace dataslicer {

struct ResultColumn {
  std::string label;
  ColumnType type;

  friend bool operator==(const ResultColumn&, const ResultColumn&) = default;
};

struct ResultTable {
  std::vector<ResultColumn> columns;
  std::vector<std::vector<Value>> rows;
};

nlohmann::json encode_result_table(const ResultTable& table);

/// Emits `SELECT ... FROM ... [WHERE ...] [GROUP BY ...] [HAVING ...]`.
///
/// Identifiers containing whitespace are double-quoted. A latitude/longitude
/// axis pair is listed latitude first. In a grouped query, bare coordinate axes
/// ride along with the grouping (they are not added to GROUP BY and evaluate
/// to the group centroid); other bare axes are appended to GROUP BY.
/// Unbound placeholder filters render as `field <op> ?`.
/// Throws kUnresolvedField.
std::string to_sql_template(const DataSpecification& spec, const DatasetSchema& schema);

/// In-memory evaluation with the semantics of `to_sql_template`: WHERE, then
/// grouping, then aggregation, then HAVING. Grouped output is ordered by group
/// key (nulls last). Throws kUnresolvedField, kTypeMismatch,
/// kUnsupportedField, kUngroupedField or kUnboundFilter.
ResultTable evaluate(const Dataset& dataset, const DataSpecification& spec);

}  // namespace dataslicer
