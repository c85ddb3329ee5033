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

#include "config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "error.hpp"

namespace dfsnet {

namespace {

struct Token {
    enum class Kind { Word, Open, Close, Newline, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 0;
    int column = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_spaces();
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= text_.size()) {
            t.kind = Token::Kind::End;
            return t;
        }
        const char c = text_[pos_];
        if (c == '\n') {
            advance();
            t.kind = Token::Kind::Newline;
            return t;
        }
        if (c == '{') {
            advance();
            t.kind = Token::Kind::Open;
            return t;
        }
        if (c == '}') {
            advance();
            t.kind = Token::Kind::Close;
            return t;
        }
        if (c == '"') {
            advance();
            std::string out;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\n') {
                    fail(t.line, t.column, "unterminated string");
                }
                if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
                    advance();
                }
                out.push_back(text_[pos_]);
                advance();
            }
            if (pos_ >= text_.size()) fail(t.line, t.column, "unterminated string");
            advance();  // closing quote
            t.kind = Token::Kind::Word;
            t.text = std::move(out);
            return t;
        }
        std::string out;
        while (pos_ < text_.size() && !is_break(text_[pos_])) {
            out.push_back(text_[pos_]);
            advance();
        }
        t.kind = Token::Kind::Word;
        t.text = std::move(out);
        return t;
    }

private:
    static bool is_break(char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '{' ||
               c == '}' || c == '"' || c == '#';
    }

    void skip_spaces() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(int line, int column, const std::string& message) {
        throw_parse("line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ": " + message);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { shift(); }

    ConfigNode parse_document() {
        ConfigNode root;
        root.line = 1;
        root.column = 1;
        parse_statements(root, /*top_level=*/true);
        return root;
    }

private:
    void shift() { current_ = lexer_.next(); }

    [[noreturn]] void fail(const std::string& message) {
        throw_parse("line " + std::to_string(current_.line) + ", column " +
                    std::to_string(current_.column) + ": " + message);
    }

    void parse_statements(ConfigNode& parent, bool top_level) {
        for (;;) {
            while (current_.kind == Token::Kind::Newline) shift();
            if (current_.kind == Token::Kind::End) {
                if (!top_level) fail("missing closing brace");
                return;
            }
            if (current_.kind == Token::Kind::Close) {
                if (top_level) fail("unmatched closing brace");
                shift();
                return;
            }
            if (current_.kind != Token::Kind::Word) fail("expected a statement key");

            ConfigNode node;
            node.key = current_.text;
            node.line = current_.line;
            node.column = current_.column;
            shift();
            for (;;) {
                if (current_.kind == Token::Kind::Word) {
                    node.values.push_back(current_.text);
                    shift();
                } else if (current_.kind == Token::Kind::Open) {
                    shift();
                    if (current_.kind == Token::Kind::Close) {
                        shift();  // empty block on one line
                    } else if (current_.kind == Token::Kind::Newline) {
                        parse_statements(node, /*top_level=*/false);
                    } else {
                        fail("expected newline after '{'");
                    }
                    break;
                } else if (current_.kind == Token::Kind::Newline ||
                           current_.kind == Token::Kind::End) {
                    break;
                } else {
                    fail("unexpected token in statement");
                }
            }
            parent.children.push_back(std::move(node));
        }
    }

    Lexer lexer_;
    Token current_;
};

bool needs_quotes(const std::string& s) {
    if (s.empty()) return true;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '"' || c == '{' ||
            c == '}' || c == '#') {
            return true;
        }
    }
    return false;
}

std::string quote(const std::string& s) {
    if (!needs_quotes(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void serialize_node(const ConfigNode& node, int depth, std::string& out) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += quote(node.key);
    for (const std::string& v : node.values) {
        out += ' ';
        out += quote(v);
    }
    if (!node.children.empty()) {
        out += " {\n";
        for (const ConfigNode& c : node.children) serialize_node(c, depth + 1, out);
        out.append(static_cast<std::size_t>(depth) * 2, ' ');
        out += "}\n";
    } else {
        out += '\n';
    }
}

}  // namespace

const ConfigNode* ConfigNode::child(std::string_view key) const {
    for (const ConfigNode& c : children) {
        if (c.key == key) return &c;
    }
    return nullptr;
}

const ConfigNode& ConfigNode::require_child(std::string_view key) const {
    const ConfigNode* c = child(key);
    if (!c) fail("missing required key '" + std::string(key) + "'");
    return *c;
}

std::vector<const ConfigNode*> ConfigNode::children_of(std::string_view key) const {
    std::vector<const ConfigNode*> out;
    for (const ConfigNode& c : children) {
        if (c.key == key) out.push_back(&c);
    }
    return out;
}

const std::string& ConfigNode::value(std::size_t i) const {
    if (i >= values.size()) {
        fail("key '" + key + "' is missing value " + std::to_string(i + 1));
    }
    return values[i];
}

std::int64_t ConfigNode::value_as_int(std::size_t i) const {
    const std::string& s = value(i);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        fail("'" + s + "' is not an integer");
    }
    return v;
}

std::uint64_t ConfigNode::value_as_uint(std::size_t i) const {
    const std::string& s = value(i);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        fail("'" + s + "' is not an unsigned integer");
    }
    return v;
}

double ConfigNode::value_as_double(std::size_t i) const {
    const std::string& s = value(i);
    try {
        return parse_double(s);
    } catch (const Error&) {
        fail("'" + s + "' is not a number");
    }
}

Complex ConfigNode::value_as_complex(std::size_t i) const {
    const std::string& s = value(i);
    try {
        return parse_complex(s);
    } catch (const Error&) {
        fail("'" + s + "' is not a complex number (expected re+imi)");
    }
}

std::optional<std::string> ConfigNode::scalar(std::string_view key) const {
    const ConfigNode* c = child(key);
    if (!c) return std::nullopt;
    if (c->values.size() != 1) c->fail("key '" + std::string(key) + "' takes one value");
    return c->values[0];
}

void ConfigNode::fail(const std::string& message) const {
    throw_validation("line " + std::to_string(line) + ": " + message);
}

ConfigNode parse_config(std::string_view text) {
    Parser parser(text);
    return parser.parse_document();
}

std::string serialize_config(const ConfigNode& root) {
    std::string out;
    for (const ConfigNode& c : root.children) serialize_node(c, 0, out);
    return out;
}

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw Error(ErrorCode::runtime, "number formatting failed");
    return std::string(buf, ptr);
}

namespace {

std::string format_part(double v, int significant_digits) {
    if (significant_digits < 0) return format_double(v);
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant_digits, v);
    return buf;
}

}  // namespace

std::string format_complex(Complex v, int significant_digits) {
    std::string out = format_part(v.real(), significant_digits);
    const std::string im = format_part(v.imag(), significant_digits);
    if (!im.empty() && im[0] == '-') {
        out += im;
    } else {
        out += '+';
        out += im;
    }
    out += 'i';
    return out;
}

double parse_double(std::string_view text) {
    std::string_view body = text;
    // std::from_chars rejects an explicit leading '+'.
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (body.empty() || ec != std::errc{} || ptr != body.data() + body.size()) {
        throw_parse("'" + std::string(text) + "' is not a number");
    }
    return v;
}

Complex parse_complex(std::string_view text) {
    if (text.empty()) throw_parse("empty complex literal");
    // Forms: "re", "imi", "re+imi", "re-imi". The imaginary part always ends
    // with 'i'.
    const bool has_i = text.back() == 'i' || text.back() == 'I';
    if (!has_i) {
        return Complex{parse_double(text), 0.0};
    }
    std::string_view body = text.substr(0, text.size() - 1);
    if (body.empty() || body == "+" || body == "-") {
        // "i", "+i", "-i"
        return Complex{0.0, body == "-" ? -1.0 : 1.0};
    }
    // Find the split between real and imaginary parts: the last '+'/'-' that
    // is not an exponent sign and not the leading sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        const char c = body[k];
        if (c != '+' && c != '-') continue;
        const char prev = body[k - 1];
        if (prev == 'e' || prev == 'E') continue;
        split = k;
        break;
    }
    if (split == std::string_view::npos) {
        return Complex{0.0, parse_double(body)};
    }
    const double re = parse_double(body.substr(0, split));
    std::string_view imag_part = body.substr(split);
    double im = 0.0;
    if (imag_part == "+") {
        im = 1.0;
    } else if (imag_part == "-") {
        im = -1.0;
    } else {
        im = parse_double(imag_part);
    }
    return Complex{re, im};
}

}  // namespace dfsnet
