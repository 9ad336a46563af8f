// Copyright 2026 The gojun Authors.
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

#ifndef GOJUN_TEXT_HPP_
#define GOJUN_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace gojun {

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);
// Splits on runs of ASCII whitespace; no empty fields.
std::vector<std::string> split_whitespace(std::string_view s);
bool ends_with(std::string_view s, std::string_view suffix);
std::string ascii_lower(std::string_view s);

// UTF-8 code points as separate strings. Invalid bytes become single units.
std::vector<std::string> utf8_chars(std::string_view s);
std::size_t utf8_length(std::string_view s);

// Fixed-precision decimal with no locale dependence ("nan" / "inf" spelled out).
std::string format_fixed(double value, int precision = 6);

}  // namespace gojun

#endif  // GOJUN_TEXT_HPP_
