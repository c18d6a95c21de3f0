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

#include <stdexcept>
#include <string>

namespace glass {

/// Error categories; they map 1:1 onto the C API status codes.
enum class ErrorCode {
    invalid_argument = 1,  // caller broke a precondition
    parse = 2,             // malformed input file
    data = 3,              // semantically bad data (missing leader, unknown node, ...)
    numeric = 4,           // solver failure, residual above tolerance
    io = 5,                // file system problem
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

[[noreturn]] inline void raise_invalid(const std::string& m) { raise(ErrorCode::invalid_argument, m); }
[[noreturn]] inline void raise_parse(const std::string& m) { raise(ErrorCode::parse, m); }
[[noreturn]] inline void raise_data(const std::string& m) { raise(ErrorCode::data, m); }
[[noreturn]] inline void raise_numeric(const std::string& m) { raise(ErrorCode::numeric, m); }
[[noreturn]] inline void raise_io(const std::string& m) { raise(ErrorCode::io, m); }

}  // namespace glass
