// Copyright 2026 The dfsnet Authors
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

#include <stdexcept>
#include <string>
#include <utility>

namespace dfsnet {

// Error categories; kept in sync with the status codes of the C API.
enum class ErrorCode {
    runtime = 1,
    invalid_argument = 2,
    parse = 3,
    validation = 4,
    impossible_branch = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void throw_invalid(const std::string& message) {
    throw Error(ErrorCode::invalid_argument, message);
}

[[noreturn]] inline void throw_parse(const std::string& message) {
    throw Error(ErrorCode::parse, message);
}

[[noreturn]] inline void throw_validation(const std::string& message) {
    throw Error(ErrorCode::validation, message);
}

}  // namespace dfsnet
