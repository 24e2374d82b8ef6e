// Copyright 2026 The DWR Compiler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DWR_TEXT_UTIL_H
#define DWR_TEXT_UTIL_H

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dwr::text {

class ParseError : public std::invalid_argument {
   public:
    ParseError(size_t line, const std::string &message)
        : std::invalid_argument("line " + std::to_string(line) + ": " + message), line(line) {
    }
    size_t line;
};

/// Splits into lines, drops `#` comments, and tokenizes on whitespace. Calls f(line_number, tokens)
/// for each non-empty line.
template <typename F>
void for_each_line(std::string_view text, F f) {
    size_t line_number = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        line_number++;
        std::string_view line = text.substr(start, end - start);
        size_t hash = line.find('#');
        if (hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::vector<std::string> tokens;
        std::istringstream in{std::string(line)};
        std::string tok;
        while (in >> tok) {
            tokens.push_back(tok);
        }
        if (!tokens.empty()) {
            f(line_number, tokens);
        }
        start = end + 1;
    }
}

inline size_t parse_index(const std::string &tok, size_t line) {
    size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(line, "expected a non-negative integer, got '" + tok + "'");
    }
    return value;
}

}  // namespace dwr::text

#endif
