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

#include "dataslicer/error.hpp"

namespace dataslicer {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInapplicableOp: return "InapplicableOp";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kTypeError: return "TypeError";
    case ErrorCode::kTypeMismatch: return "TypeMismatch";
    case ErrorCode::kUnresolvedField: return "UnresolvedField";
    case ErrorCode::kUnsupportedField: return "UnsupportedField";
    case ErrorCode::kUngroupedField: return "UngroupedField";
    case ErrorCode::kUnboundFilter: return "UnboundFilter";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kTaskMismatch: return "TaskMismatch";
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kUnknownGraph: return "UnknownGraph";
    case ErrorCode::kUnknownDataset: return "UnknownDataset";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kInconsistentSession: return "InconsistentSession";
    case ErrorCode::kUnknownSession: return "UnknownSession";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Internal";
}

}  // namespace dataslicer
