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

#include <string>
#include <vector>

namespace glass {

/// FNV-1a 64-bit digest as hex.
std::string fnv1a_hex(const std::string& bytes);

/// Combined digest over a set of input files (name and content both
/// contribute), so reports can pin exactly what they were computed from.
std::string hash_inputs(const std::vector<std::string>& paths);

}  // namespace glass
