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

#include "hipkernels/io/index_io.hpp"

#include <charconv>
#include <fstream>
#include <string>

#include "hipkernels/error.hpp"

namespace hipkernels {

std::vector<index_t> read_index_vector(const std::filesystem::path& path,
                                       index_t expected_range) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::io_error, "cannot open " + path.string());
  }
  std::vector<index_t> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t begin = 0;
    std::size_t end = line.size();
    while (begin < end && (line[begin] == ' ' || line[begin] == '\t')) ++begin;
    while (end > begin && (line[end - 1] == ' ' || line[end - 1] == '\t' ||
                           line[end - 1] == '\r')) {
      --end;
    }
    if (begin == end) continue;
    index_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(line.data() + begin, line.data() + end, value);
    if (ec != std::errc() || ptr != line.data() + end) {
      throw Error(Errc::parse_error,
                  path.string() + ":" + std::to_string(lineno) +
                      ": expected one integer per line, got '" +
                      line.substr(begin, end - begin) + "'");
    }
    if (value < 1 || value > expected_range) {
      throw Error(Errc::index_out_of_bounds,
                  path.string() + ":" + std::to_string(lineno) + ": index " +
                      std::to_string(value) + " outside 1.." +
                      std::to_string(expected_range));
    }
    values.push_back(value - 1);
  }
  return values;
}

void write_index_vector(std::span<const index_t> values,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Errc::io_error, "cannot open " + path.string());
  }
  for (const index_t v : values) {
    out << (v + 1) << '\n';
  }
  out.flush();
  if (!out) {
    throw Error(Errc::io_error, "cannot write " + path.string());
  }
}

}  // namespace hipkernels
