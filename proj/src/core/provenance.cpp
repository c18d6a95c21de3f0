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

#include "core/provenance.hpp"

#include <cstdint>
#include <cstdio>

#include "core/csv.hpp"

namespace glass {

namespace {

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string to_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) { return to_hex(fnv1a(bytes)); }

std::string hash_inputs(const std::vector<std::string>& paths) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& p : paths) {
        h = fnv1a(p, h);
        h = fnv1a("\0", h);
        h = fnv1a(read_file(p), h);
    }
    return to_hex(h);
}

}  // namespace glass
