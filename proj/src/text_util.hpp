// Copyright 2026 The DischargeKit Authors.
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

#ifndef DISCHARGEKIT_TEXT_UTIL_HPP_
#define DISCHARGEKIT_TEXT_UTIL_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace dischargekit::text {

// ASCII whitespace: space, \t, \n, \v, \f, \r.
constexpr bool IsSpace(char c) {
  return c == ' ' || (c >= '\t' && c <= '\r');
}
constexpr bool IsBlank(char c) { return c == ' ' || c == '\t'; }
constexpr bool IsDigit(char c) { return c >= '0' && c <= '9'; }

std::string_view Trim(std::string_view s);

// Every whitespace run (line breaks included) becomes one space; the result
// is trimmed.
std::string CollapseWhitespace(std::string_view s);

// Splits on '\n'. A trailing newline yields a final empty line.
std::vector<std::string_view> SplitLines(std::string_view s);

bool EndsWithSentencePunct(std::string_view s);

// Non-overlapping occurrences are replaced left to right.
std::string ReplaceAll(std::string_view s, std::string_view from,
                       std::string_view to);

}  // namespace dischargekit::text

#endif  // DISCHARGEKIT_TEXT_UTIL_HPP_
