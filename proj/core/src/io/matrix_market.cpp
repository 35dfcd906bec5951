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

#include "hipkernels/io/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "hipkernels/error.hpp"

namespace hipkernels {

namespace {

[[noreturn]] void fail_parse(const std::filesystem::path& path,
                             std::size_t line, std::size_t column,
                             const std::string& what) {
  throw Error(Errc::parse_error, path.string() + ":" + std::to_string(line) +
                                     ":" + std::to_string(column) + ": " +
                                     what);
}

[[noreturn]] void fail_format(const std::filesystem::path& path,
                              const std::string& what) {
  throw Error(Errc::unsupported_format, path.string() + ": " + what);
}

std::string to_lower(std::string s) {
  for (char& ch : s) {
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return s;
}

bool is_space(char ch) {
  return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\f' || ch == '\v';
}

/// Splits one line into whitespace-separated tokens, remembering where each
/// starts so errors can point at a column.
struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && is_space(line[pos])) ++pos;
    if (pos >= line.size()) break;
    const std::size_t begin = pos;
    while (pos < line.size() && !is_space(line[pos])) ++pos;
    tokens.push_back({line.substr(begin, pos - begin), begin + 1});
  }
  return tokens;
}

bool blank_or_comment(const std::string& line) {
  for (const char ch : line) {
    if (is_space(ch)) continue;
    return ch == '%';
  }
  return true;
}

index_t parse_index(const std::filesystem::path& path, std::size_t lineno,
                    const Token& token, const char* what) {
  index_t value = 0;
  const char* begin = token.text.data();
  const char* end = begin + token.text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    fail_parse(path, lineno, token.column,
               std::string("expected ") + what + ", got '" + token.text + "'");
  }
  return value;
}

Value parse_value(const std::filesystem::path& path, std::size_t lineno,
                  const Token& token) {
  Value value = 0.0;
  const char* begin = token.text.data();
  const char* end = begin + token.text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    fail_parse(path, lineno, token.column,
               "expected a numeric value, got '" + token.text + "'");
  }
  if (!std::isfinite(value)) {
    fail_parse(path, lineno, token.column, "value must be finite");
  }
  return value;
}

}  // namespace

CooMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::io_error, "cannot open " + path.string());
  }
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) {
    fail_parse(path, 1, 1, "missing Matrix Market banner");
  }
  ++lineno;
  const std::vector<Token> banner = tokenize(line);
  if (banner.size() < 5 || to_lower(banner[0].text) != "%%matrixmarket") {
    fail_parse(path, lineno, 1, "not a Matrix Market banner");
  }
  const std::string object = to_lower(banner[1].text);
  const std::string format = to_lower(banner[2].text);
  const std::string field = to_lower(banner[3].text);
  const std::string symmetry = to_lower(banner[4].text);
  if (object != "matrix") {
    fail_format(path, "object '" + object + "' is not supported");
  }
  if (format != "coordinate") {
    fail_format(path, "format '" + format + "' is not supported");
  }
  const bool pattern = field == "pattern";
  if (!pattern && field != "real" && field != "integer") {
    fail_format(path, "field '" + field + "' is not supported");
  }
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") {
    fail_format(path, "symmetry '" + symmetry + "' is not supported");
  }

  // Size line: first content line after the banner and comments.
  index_t nrows = 0;
  index_t ncols = 0;
  index_t declared = 0;
  bool have_sizes = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line)) continue;
    const std::vector<Token> tokens = tokenize(line);
    if (tokens.size() != 3) {
      fail_parse(path, lineno, tokens.empty() ? 1 : tokens[0].column,
                 "size line must read 'rows cols nnz'");
    }
    nrows = parse_index(path, lineno, tokens[0], "a row count");
    ncols = parse_index(path, lineno, tokens[1], "a column count");
    declared = parse_index(path, lineno, tokens[2], "an entry count");
    if (nrows < 0 || ncols < 0 || declared < 0) {
      fail_parse(path, lineno, tokens[0].column, "sizes must be nonnegative");
    }
    if (symmetric && nrows != ncols) {
      fail_parse(path, lineno, tokens[0].column,
                 "a symmetric matrix must be square");
    }
    have_sizes = true;
    break;
  }
  if (!have_sizes) {
    fail_parse(path, lineno + 1, 1, "missing size line");
  }

  CooMatrix coo;
  coo.nrows = nrows;
  coo.ncols = ncols;
  coo.entries.reserve(
      static_cast<std::size_t>(symmetric ? 2 * declared : declared));
  index_t read = 0;
  while (read < declared && std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line)) continue;
    const std::vector<Token> tokens = tokenize(line);
    const std::size_t expected = pattern ? 2 : 3;
    if (tokens.size() != expected) {
      fail_parse(path, lineno,
                 tokens.size() > expected ? tokens[expected].column : 1,
                 pattern ? "pattern entries read 'row col'"
                         : "entries read 'row col value'");
    }
    const index_t row = parse_index(path, lineno, tokens[0], "a row index");
    const index_t col = parse_index(path, lineno, tokens[1], "a column index");
    if (row < 1 || row > nrows) {
      fail_parse(path, lineno, tokens[0].column,
                 "row index " + std::to_string(row) + " outside 1.." +
                     std::to_string(nrows));
    }
    if (col < 1 || col > ncols) {
      fail_parse(path, lineno, tokens[1].column,
                 "column index " + std::to_string(col) + " outside 1.." +
                     std::to_string(ncols));
    }
    const Value val = pattern ? 1.0 : parse_value(path, lineno, tokens[2]);
    coo.entries.push_back({row - 1, col - 1, val});
    if (symmetric && row != col) {
      coo.entries.push_back({col - 1, row - 1, val});
    }
    ++read;
  }
  if (read < declared) {
    fail_parse(path, lineno + 1, 1,
               "expected " + std::to_string(declared) + " entries, found " +
                   std::to_string(read));
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!blank_or_comment(line)) {
      fail_parse(path, lineno, tokenize(line)[0].column,
                 "content past the declared entries");
    }
  }

  std::vector<std::pair<index_t, index_t>> keys;
  keys.reserve(coo.entries.size());
  for (const CooEntry& e : coo.entries) keys.push_back({e.row, e.col});
  std::sort(keys.begin(), keys.end());
  const auto dup = std::adjacent_find(keys.begin(), keys.end());
  if (dup != keys.end()) {
    throw Error(Errc::duplicate_entry,
                path.string() + ": entry (" + std::to_string(dup->first + 1) +
                    ", " + std::to_string(dup->second + 1) +
                    ") is stored twice");
  }
  return coo;
}

void write_matrix_market(const CooMatrix& coo,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Errc::io_error, "cannot open " + path.string());
  }
  std::vector<CooEntry> entries = coo.entries;
  std::sort(entries.begin(), entries.end(),
            [](const CooEntry& a, const CooEntry& b) {
              return a.col != b.col ? a.col < b.col : a.row < b.row;
            });
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << coo.nrows << ' ' << coo.ncols << ' ' << entries.size() << '\n';
  char buf[96];
  for (const CooEntry& e : entries) {
    std::snprintf(buf, sizeof buf, "%lld %lld %.17g\n",
                  static_cast<long long>(e.row + 1),
                  static_cast<long long>(e.col + 1), e.val);
    out << buf;
  }
  out.flush();
  if (!out) {
    throw Error(Errc::io_error, "cannot write " + path.string());
  }
}

void write_matrix_market(const DistMatrix& dm,
                         const std::filesystem::path& path) {
  write_matrix_market(collect(dm), path);
}

}  // namespace hipkernels
