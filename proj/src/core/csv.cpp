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

#include "core/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace glass {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

std::vector<std::string> split_csv_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    std::size_t i = 0;
    const std::size_t n = line.size() && line.back() == '\r' ? line.size() - 1 : line.size();
    while (i < n) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < n && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
        ++i;
    }
    if (quoted) raise_parse("unterminated quoted CSV field");
    fields.push_back(std::move(cur));
    return fields;
}

CsvReader::CsvReader(const std::string& path) : path_(path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise_io("cannot open file: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (line.size() == 1 && line[0] == '\r') continue;
        header_ = split_csv_record(line);
        for (auto& h : header_) h = lower(h);
        header_line_ = line_no;
        return;
    }
    raise_parse(path + ": missing header row");
}

std::optional<std::size_t> CsvReader::find_column(const std::string& name) const {
    const std::string key = lower(name);
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (header_[i] == key) return i;
    return std::nullopt;
}

std::size_t CsvReader::require_column(const std::string& name) const {
    auto idx = find_column(name);
    if (!idx) raise_parse(path_ + ": missing required column '" + name + "'");
    return *idx;
}

void CsvReader::for_each_record(
    const std::function<void(const std::vector<std::string>&, std::size_t)>& fn) {
    if (consumed_) raise_invalid(path_ + ": CsvReader supports a single pass");
    consumed_ = true;
    std::ifstream in(path_, std::ios::binary);
    if (!in) raise_io("cannot open file: " + path_);
    std::string line;
    std::size_t line_no = 0;
    while (line_no < header_line_ && std::getline(in, line)) ++line_no;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (line.size() == 1 && line[0] == '\r') continue;
        std::vector<std::string> fields = split_csv_record(line);
        fn(fields, line_no);
    }
}

long long CsvReader::to_int(const std::string& field, std::size_t line_no,
                            const std::string& what) const {
    long long value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        raise_parse(path_ + ":" + std::to_string(line_no) + ": expected integer for " + what +
                    ", got '" + field + "'");
    return value;
}

double CsvReader::to_double(const std::string& field, std::size_t line_no,
                            const std::string& what) const {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || (end && *end != '\0') || errno == ERANGE)
        raise_parse(path_ + ":" + std::to_string(line_no) + ": expected number for " + what +
                    ", got '" + field + "'");
    return value;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise_io("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise_io("cannot write file: " + path);
    out << content;
    if (!out) raise_io("write failed: " + path);
}

std::string csv_escape(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace glass
