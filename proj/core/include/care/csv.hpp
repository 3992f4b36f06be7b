// Copyright 2026 The care-dtn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal RFC 4180 CSV reading and writing.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace care::csv {

using Row = std::vector<std::string>;

struct Table {
  Row header;  // empty when read without a header
  std::vector<Row> rows;
};

/// Splits a whole document into rows. Quoted fields may contain commas,
/// doubled quotes and newlines. Blank lines are skipped.
std::vector<Row> parse(std::string_view text);

/// Reads a file. When `has_header` is true the first row becomes `header`.
Table read_file(const std::filesystem::path& path, bool has_header);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

std::string format_row(const Row& row);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Fixed precision; used where stable human-readable output matters.
std::string format_fixed(double v, int digits);

double parse_double(std::string_view field, std::string_view what);
long long parse_int(std::string_view field, std::string_view what);

/// Buffered CSV writer over an output stream.
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  void row(const Row& fields);
  template <typename... Ts>
  void values(const Ts&... vs) {
    row(Row{to_field(vs)...});
  }

 private:
  static std::string to_field(const std::string& s) { return s; }
  static std::string to_field(const char* s) { return s; }
  static std::string to_field(std::string_view s) { return std::string(s); }
  static std::string to_field(double v) { return format_double(v); }
  template <typename T>
  static std::string to_field(const T& v)
    requires std::is_integral_v<T>
  {
    return std::to_string(v);
  }

  std::ostream& out_;
};

}  // namespace care::csv
