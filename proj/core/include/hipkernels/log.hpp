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

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace hipkernels {

enum class LogLevel { off = 0, info = 1, debug = 2 };

/// Level selected by the HIPKERNELS_LOG environment variable (off, info,
/// or debug; anything else means off).  Read once per process.
inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("HIPKERNELS_LOG");
    if (env == nullptr) return LogLevel::off;
    if (std::strcmp(env, "info") == 0) return LogLevel::info;
    if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
    return LogLevel::off;
  }();
  return level;
}

inline bool log_enabled(LogLevel level) {
  return static_cast<int>(level) <= static_cast<int>(log_level());
}

/// Writes one line to stderr when `level` is enabled.  The line is
/// assembled first so concurrent ranks do not interleave characters.
inline void log_line(LogLevel level, const std::string& message) {
  if (!log_enabled(level)) return;
  const std::string line = "[hipkernels] " + message + "\n";
  std::fwrite(line.data(), 1, line.size(), stderr);
}

}  // namespace hipkernels
