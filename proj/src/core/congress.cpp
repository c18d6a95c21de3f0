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

#include "core/congress.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "core/error.hpp"

namespace glass {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

std::string to_string(Chamber c) { return c == Chamber::house ? "house" : "senate"; }

std::optional<Chamber> try_parse_chamber(const std::string& text) {
    const std::string t = lower(text);
    if (t == "house") return Chamber::house;
    if (t == "senate") return Chamber::senate;
    return std::nullopt;
}

Chamber parse_chamber(const std::string& text) {
    auto c = try_parse_chamber(text);
    if (!c) raise_invalid("unknown chamber '" + text + "', expected house or senate");
    return *c;
}

std::string to_string(Party p) { return p == Party::dem ? "Democrat" : "Republican"; }

std::optional<Party> try_parse_party(const std::string& text) {
    const std::string t = lower(text);
    if (t == "d" || t == "dem" || t == "democrat" || t == "100") return Party::dem;
    if (t == "r" || t == "rep" || t == "republican" || t == "200") return Party::rep;
    return std::nullopt;
}

Party parse_party(const std::string& text) {
    auto p = try_parse_party(text);
    if (!p) raise_invalid("unknown party '" + text + "', expected Democrat or Republican");
    return *p;
}

std::optional<Date> try_parse_date(const std::string& text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    Date d;
    auto parse_part = [&text](std::size_t from, std::size_t len, int& out) {
        auto [ptr, ec] = std::from_chars(text.data() + from, text.data() + from + len, out);
        return ec == std::errc{} && ptr == text.data() + from + len;
    };
    if (!parse_part(0, 4, d.year) || !parse_part(5, 2, d.month) || !parse_part(8, 2, d.day))
        return std::nullopt;
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) return std::nullopt;
    return d;
}

Date parse_date(const std::string& text) {
    auto d = try_parse_date(text);
    if (!d) raise_parse("bad date '" + text + "', expected YYYY-MM-DD");
    return *d;
}

std::string to_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

}  // namespace glass
