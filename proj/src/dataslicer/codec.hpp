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

// JSON documents shared by the graph file, session log, service and CLI.
// Decoders throw Error(kFormatError) with a JSON-pointer location in detail().

#include <string>

#include <json.hpp>

#include "dataslicer/nav_op.hpp"
#include "dataslicer/spec.hpp"

namespace dataslicer::codec {

using Json = nlohmann::json;

Json encode_literal(const Literal& value);
Literal decode_literal(const Json& doc, const std::string& where);

Json encode_field(const FieldExpr& field);
FieldExpr decode_field(const Json& doc, const std::string& where);

Json encode_predicate(const FilterPredicate& predicate);
FilterPredicate decode_predicate(const Json& doc, const std::string& where);

Json encode_spec(const DataSpecification& spec);
// Validates the specification invariants as well as the shape.
DataSpecification decode_spec(const Json& doc, const std::string& where = "");

Json encode_abstract_spec(const AbstractSpec& spec);
AbstractSpec decode_abstract_spec(const Json& doc, const std::string& where = "");

Json encode_visual(const VisualSpec& visual);
VisualSpec decode_visual(const Json& doc, const std::string& where = "");

Json encode_nav_op(const NavOp& op);
NavOp decode_nav_op(const Json& doc, const std::string& where = "");

// Parses text as JSON, mapping syntax errors to kFormatError.
Json parse_json(const std::string& text, const std::string& what);

}  // namespace dataslicer::codec
