/*
 * Copyright 2026 The glass authors
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

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace glass {

/// Splits one CSV record. Handles double-quoted fields with embedded commas
/// and doubled quotes; trims a trailing '\r'. Raises ErrorCode::parse on an
/// unterminated quote.
std::vector<std::string> split_csv_record(const std::string& line);

/// Streaming CSV file reader with a mandatory header row. Only the header
/// is held in memory; records are parsed on the fly, so gigabyte-scale
/// files cost nothing but the pass itself.
///
/// Lines that are empty or start with '#' are skipped. Column lookup is
/// case-insensitive. Parse failures report the 1-based line number and path.
class CsvReader {
  public:
    explicit CsvReader(const std::string& path);

    /// Index of a named header column, or nullopt.
    std::optional<std::size_t> find_column(const std::string& name) const;
    /// Same, but raises ErrorCode::parse naming the column when absent.
    std::size_t require_column(const std::string& name) const;

    const std::vector<std::string>& header() const { return header_; }
    const std::string& path() const { return path_; }

    /// Calls `fn(fields, line_number)` per record until EOF. Single pass.
    void for_each_record(const std::function<void(const std::vector<std::string>&, std::size_t)>& fn);

    /// Parses helpers with line-number-carrying errors.
    long long to_int(const std::string& field, std::size_t line_no, const std::string& what) const;
    double to_double(const std::string& field, std::size_t line_no, const std::string& what) const;

  private:
    std::string path_;
    std::vector<std::string> header_;
    std::size_t header_line_ = 0;
    bool consumed_ = false;
};

/// Entire file as a string; ErrorCode::io when unreadable.
std::string read_file(const std::string& path);

/// Writes content, creating parent directories as needed.
void write_file(const std::string& path, const std::string& content);

/// Escapes a value for CSV output if it contains a comma, quote or newline.
std::string csv_escape(const std::string& value);

/// Shortest-ish decimal form used in CSV payloads (%.12g).
std::string format_double(double v);

}  // namespace glass
