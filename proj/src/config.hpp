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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matrix.hpp"

namespace dfsnet {

// Human-readable nested key-value document. One statement per line:
//
//     key value value ... [{]
//       nested statements
//     [}]
//
// Values are bare tokens or double-quoted strings; '#' starts a comment.
// Complex numbers use the explicit "re+imi" form (e.g. 0.5-0.5i).
// parse_config . serialize_config . parse_config is the identity.
struct ConfigNode {
    std::string key;
    std::vector<std::string> values;
    std::vector<ConfigNode> children;
    int line = 0;
    int column = 0;

    const ConfigNode* child(std::string_view key) const;
    const ConfigNode& require_child(std::string_view key) const;
    std::vector<const ConfigNode*> children_of(std::string_view key) const;
    bool has_child(std::string_view key) const { return child(key) != nullptr; }

    const std::string& value(std::size_t i) const;
    std::size_t value_count() const { return values.size(); }

    // Typed accessors over values[i]; failures raise validation errors that
    // carry the node's line number.
    std::int64_t value_as_int(std::size_t i) const;
    std::uint64_t value_as_uint(std::size_t i) const;
    double value_as_double(std::size_t i) const;
    Complex value_as_complex(std::size_t i) const;

    // Convenience: child named `key` holding exactly one value.
    std::optional<std::string> scalar(std::string_view key) const;

    [[noreturn]] void fail(const std::string& message) const;
};

// Parses a document; the returned root has an empty key and holds the
// top-level statements as children. Errors carry line and column.
ConfigNode parse_config(std::string_view text);

std::string serialize_config(const ConfigNode& root);

// Shortest decimal text that round-trips the double exactly.
std::string format_double(double v);

// "re+imi" complex literal. significant_digits < 0 keeps full round-trip
// precision; otherwise both parts are printed with that many significant
// digits.
std::string format_complex(Complex v, int significant_digits = -1);
Complex parse_complex(std::string_view text);

double parse_double(std::string_view text);

}  // namespace dfsnet
