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

#include <stdexcept>
#include <string>
#include <string_view>

namespace dataslicer {

enum class ErrorCode {
  kInvalidArgument,
  kInapplicableOp,
  kSchemaMismatch,
  kTypeError,
  kTypeMismatch,
  kUnresolvedField,
  kUnsupportedField,
  kUngroupedField,
  kUnboundFilter,
  kFormatError,
  kTaskMismatch,
  kUnknownNode,
  kUnknownGraph,
  kUnknownDataset,
  kEmptyGraph,
  kInconsistentSession,
  kUnknownSession,
  kIoError,
  kInternal,
};

// Stable identifier used in JSON error bodies and the C API ("UnknownNode", ...).
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string detail = {})
      : std::runtime_error(std::move(message)), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace dataslicer
