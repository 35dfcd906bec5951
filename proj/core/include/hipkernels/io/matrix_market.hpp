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

#include "hipkernels/coo.hpp"
#include "hipkernels/dist.hpp"

namespace hipkernels {

/// Reads a Matrix Market coordinate file.  Accepts real, integer, and
/// pattern fields with general or symmetric symmetry; anything else
/// (array format, complex field, skew-symmetric or hermitian symmetry)
/// raises UnsupportedFormat.  File indices are 1-based and come back
/// 0-based; pattern entries get the value 1.0; symmetric files are
/// expanded to both triangles.  Malformed content raises ParseError with
/// the line and column; entries stored twice (after expansion) raise
/// DuplicateEntry.
CooMatrix read_matrix_market(const std::filesystem::path& path);

/// Writes coordinate general format, 1-based, entries sorted by
/// (column, row).  Values are printed with enough digits that reading the
/// file back reproduces them exactly.
void write_matrix_market(const CooMatrix& coo,
                         const std::filesystem::path& path);

/// Convenience overload: collects the distributed matrix first.
void write_matrix_market(const DistMatrix& dm,
                         const std::filesystem::path& path);

}  // namespace hipkernels
