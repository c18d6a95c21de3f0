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

#include <compare>
#include <optional>
#include <string>

namespace glass {

enum class Chamber { house, senate };

std::string to_string(Chamber c);
/// "house"/"senate", case-insensitive. Raises on anything else.
Chamber parse_chamber(const std::string& text);
/// Tolerant form used for row filtering; returns nullopt for other values
/// (e.g. executive records in mixed files).
std::optional<Chamber> try_parse_chamber(const std::string& text);

enum class Party { dem, rep };

std::string to_string(Party p);
/// Accepts d/dem/democrat/100 and r/rep/republican/200, case-insensitive.
std::optional<Party> try_parse_party(const std::string& text);
Party parse_party(const std::string& text);

/// Calendar date, compared lexicographically (y, m, d).
struct Date {
    int year = 0;
    int month = 0;
    int day = 0;
    auto operator<=>(const Date&) const = default;
};

/// ISO "YYYY-MM-DD".
std::optional<Date> try_parse_date(const std::string& text);
Date parse_date(const std::string& text);
std::string to_string(const Date& d);

}  // namespace glass
