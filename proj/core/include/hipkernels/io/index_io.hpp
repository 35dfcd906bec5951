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

#include <filesystem>
#include <span>
#include <vector>

#include "hipkernels/types.hpp"

namespace hipkernels {

/// Reads an index vector: one 1-based integer per line, returned 0-based.
/// Every index must fall in [0, expected_range) after the shift
/// (IndexOutOfBounds otherwise); non-integer content raises ParseError
/// with the line number.  An empty file yields an empty vector.
std::vector<index_t> read_index_vector(const std::filesystem::path& path,
                                       index_t expected_range);

/// Writes the inverse format: one 1-based integer per line, LF-terminated.
void write_index_vector(std::span<const index_t> values,
                        const std::filesystem::path& path);

}  // namespace hipkernels
