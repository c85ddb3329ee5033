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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <string>

#include "config.hpp"
#include "error.hpp"

using namespace dfsnet;

TEST_CASE("nested blocks, values, and comments parse") {
    const std::string text = R"(# header comment
alpha 1 two 3.5
block {
  inner {
    key "quoted value"  # trailing comment
  }
  flag
}
)";
    const ConfigNode root = parse_config(text);
    const ConfigNode& alpha = root.require_child("alpha");
    REQUIRE(alpha.values.size() == 3);
    CHECK(alpha.value_as_int(0) == 1);
    CHECK(alpha.values[1] == "two");
    CHECK(alpha.value_as_double(2) == doctest::Approx(3.5));

    const ConfigNode& inner = root.require_child("block").require_child("inner");
    CHECK(inner.require_child("key").value(0) == "quoted value");
    CHECK(root.require_child("block").has_child("flag"));
    CHECK_FALSE(root.has_child("missing"));
    CHECK_THROWS_AS(root.require_child("missing"), Error);
}

TEST_CASE("parse errors carry line positions") {
    try {
        parse_config("ok 1\nbad {\n");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::parse);
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("}"), Error);
    CHECK_THROWS_AS(parse_config("a \"unterminated\n"), Error);
}

TEST_CASE("value conversions reject mismatched text") {
    const ConfigNode root = parse_config("n meaning\nm 2 3\n");
    CHECK_THROWS_AS(root.require_child("n").value_as_int(0), Error);
    CHECK_THROWS_AS(root.require_child("n").value_as_double(0), Error);
    // scalar() requires exactly one value.
    CHECK_THROWS_AS(root.scalar("m"), Error);
    CHECK(root.scalar("n").value() == "meaning");
    CHECK_FALSE(root.scalar("absent").has_value());
}

TEST_CASE("round trip through serialize and parse is the identity") {
    const std::string text = R"(name demo
table {
  elements {
    a 1 2
    b "with space"
  }
}
list 1 2 3
)";
    const ConfigNode once = parse_config(text);
    const std::string ser = serialize_config(once);
    const ConfigNode twice = parse_config(ser);
    CHECK(serialize_config(twice) == ser);
}

TEST_CASE("complex literals cover every written form") {
    CHECK(parse_complex("1") == Complex(1.0, 0.0));
    CHECK(parse_complex("-2.5") == Complex(-2.5, 0.0));
    CHECK(parse_complex("i") == Complex(0.0, 1.0));
    CHECK(parse_complex("-i") == Complex(0.0, -1.0));
    CHECK(parse_complex("3i") == Complex(0.0, 3.0));
    CHECK(parse_complex("0+0.8i") == Complex(0.0, 0.8));
    CHECK(parse_complex("0.6-0.8i") == Complex(0.6, -0.8));
    CHECK(parse_complex("1e-3+2.5e2i") == Complex(1e-3, 2.5e2));
    CHECK(parse_complex("-1.5e-2-3e-4i") == Complex(-1.5e-2, -3e-4));
    CHECK(parse_complex("+0.5") == Complex(0.5, 0.0));
    CHECK(parse_complex("2+i") == Complex(2.0, 1.0));
    CHECK(parse_complex("2-i") == Complex(2.0, -1.0));
    CHECK_THROWS_AS(parse_complex(""), Error);
    CHECK_THROWS_AS(parse_complex("1+2j"), Error);
    CHECK_THROWS_AS(parse_complex("x"), Error);
}

TEST_CASE("complex formatting round-trips at 12 significant digits") {
    const Complex values[] = {
        {1.0, 0.0},          {0.0, 1.0},
        {-0.707106781187, 0.707106781187},
        {0.6, -0.8},         {1e-3, 2.5e2},
        {-0.0, 0.0},         {3.14159265358979, -2.71828182845905},
    };
    for (const Complex& v : values) {
        const std::string s = format_complex(v, 12);
        const Complex back = parse_complex(s);
        CHECK(std::abs(back - v) <= 1e-11 * std::max(1.0, std::abs(v)));
    }
    // Negative zero normalizes: no "-0" leaks into the text.
    CHECK(format_complex(Complex(-0.0, 0.0), 12)[0] != '-');
}

TEST_CASE("shortest round-trip double formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-0.0) == "0");
    CHECK(parse_double(format_double(0.1 + 0.2)) == 0.1 + 0.2);
    CHECK(parse_double("+1.5") == 1.5);
    CHECK_THROWS_AS(parse_double("+"), Error);
    CHECK_THROWS_AS(parse_double("1.5x"), Error);
}
