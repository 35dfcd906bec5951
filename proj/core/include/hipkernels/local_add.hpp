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

#include "hipkernels/dcsc.hpp"
#include "hipkernels/types.hpp"

namespace hipkernels {

/// Elementwise combination of two blocks of equal dimensions.  The result
/// holds the union of both sparsity patterns; where the patterns overlap the
/// value is apply_addop(op, a-value, b-value), elsewhere values pass through
/// unchanged.
///
/// Throws DimensionMismatch when the blocks disagree on size.
LocalDcsc local_add(const LocalDcsc& a, const LocalDcsc& b, AddOp op);

}  // namespace hipkernels
