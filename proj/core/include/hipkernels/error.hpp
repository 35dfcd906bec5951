/*
 * Copyright 2026 The hipkernels Authors
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
 */

#pragma once

#include <stdexcept>
#include <string>

namespace hipkernels {

/// Failure conditions reported by the library.  Every hipkernels exception
/// carries one of these codes so callers can branch without parsing text.
enum class Errc {
  // storage
  duplicate_coordinate,
  index_out_of_bounds,
  unsorted_input,
  // kernels
  mapping_out_of_range,
  // distributed operations
  not_a_permutation,
  duplicate_target,
  duplicate_index,
  dimension_mismatch,
  // file handling
  parse_error,
  unsupported_format,
  duplicate_entry,
  io_error,
  // metrics
  empty_matrix,
  // simulated runtime
  collective_mismatch,
  deadlock,
  aborted,
  // argument validation
  invalid_argument,
};

/// Stable PascalCase name for diagnostics, e.g. "DuplicateCoordinate".
/// Inline so the oracle library can format errors without linking the
/// library proper.
inline const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::duplicate_coordinate: return "DuplicateCoordinate";
    case Errc::index_out_of_bounds: return "IndexOutOfBounds";
    case Errc::unsorted_input: return "UnsortedInput";
    case Errc::mapping_out_of_range: return "MappingOutOfRange";
    case Errc::not_a_permutation: return "NotAPermutation";
    case Errc::duplicate_target: return "DuplicateTarget";
    case Errc::duplicate_index: return "DuplicateIndex";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::parse_error: return "ParseError";
    case Errc::unsupported_format: return "UnsupportedFormat";
    case Errc::duplicate_entry: return "DuplicateEntry";
    case Errc::io_error: return "IoError";
    case Errc::empty_matrix: return "EmptyMatrix";
    case Errc::collective_mismatch: return "CollectiveMismatch";
    case Errc::deadlock: return "Deadlock";
    case Errc::aborted: return "Aborted";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

/// Exception type thrown throughout the library.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hipkernels
