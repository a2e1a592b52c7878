// Copyright 2026 The pairminer Authors.
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pairminer {

/// Location of a record inside a line-oriented file, for diagnostics.
struct LineContext {
  std::string file;
  std::size_t line = 0;

  [[noreturn]] void fail(const std::string& what) const;
};

/// Calls `fn` with every non-blank line of a line-delimited JSON file parsed
/// as an object. Throws InputError if the file cannot be opened and
/// ParseError for lines that are not JSON objects.
void for_each_json_line(
    const std::filesystem::path& path,
    const std::function<void(const nlohmann::json&, const LineContext&)>& fn);

/// One CSV row with its source line.
struct CsvRow {
  std::vector<std::string> cells;
  LineContext where;
};

/// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF. Returns
/// the header separately. Blank lines are skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

/// Quotes a CSV cell when needed.
std::string csv_escape(const std::string& cell);

}  // namespace pairminer

namespace pairminer {

/// Strict base-10 integer parse of a whole (trimmed) cell.
std::optional<std::int64_t> parse_integer(std::string_view text);

/// Strict floating-point parse of a whole (trimmed) cell.
std::optional<double> parse_number(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace pairminer
