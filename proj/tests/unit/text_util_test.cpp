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


#include "text_util.hpp"

#include "doctest.h"

namespace text = dischargekit::text;

TEST_CASE("collapse turns every whitespace run into one space") {
  CHECK(text::CollapseWhitespace("  a \t\n b\r\n\nc  ") == "a b c");
  CHECK(text::CollapseWhitespace("") == "");
  CHECK(text::CollapseWhitespace(" \n\t ") == "");
  CHECK(text::CollapseWhitespace("\xc3\xa9  x") == "\xc3\xa9 x");
}

TEST_CASE("trim and split lines") {
  CHECK(text::Trim("\t x y \n") == "x y");
  auto lines = text::SplitLines("a\n\nb\n");
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "a");
  CHECK(lines[1] == "");
  CHECK(lines[2] == "b");
  CHECK(lines[3] == "");
  CHECK(text::SplitLines("").size() == 1);
}

TEST_CASE("sentence punctuation and replace") {
  CHECK(text::EndsWithSentencePunct("done."));
  CHECK(text::EndsWithSentencePunct("why?"));
  CHECK(text::EndsWithSentencePunct("yes!"));
  CHECK_FALSE(text::EndsWithSentencePunct("no"));
  CHECK_FALSE(text::EndsWithSentencePunct(""));
  CHECK(text::ReplaceAll("a<sep>b<sep>", "<sep>", " ") == "a b ");
  CHECK(text::ReplaceAll("aaa", "aa", "b") == "ba");
}
