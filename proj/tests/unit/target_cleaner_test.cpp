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


#include "target_cleaner.hpp"

#include "test_support.hpp"
#include "doctest.h"

using namespace dischargekit;

TEST_CASE("reference summaries clean byte-exact") {
  for (const char* name : {"bhc", "di"}) {
    std::string raw = dktest::ReadFixture(std::string(name) + "_raw.txt");
    std::string want = dktest::ReadFixture(std::string(name) + "_cleaned.txt");
    while (!want.empty() && want.back() == '\n') want.pop_back();
    CHECK_MESSAGE(CleanTarget(raw) == want, name);
  }
}

TEST_CASE("wrapped lines join and hard breaks stay") {
  CHECK(CleanTarget("one \ntwo\nthree") == "one two\nthree");
  CHECK(CleanTarget("a\t\nb") == "a b");
  CHECK(CleanTarget("Dear ___,\n \nYou   were\tseen.\n\n\n \nBye") ==
        "Dear ___,\n\nYou were seen.\n\nBye");
}

TEST_CASE("edges and line endings") {
  CHECK(CleanTarget("") == "");
  CHECK(CleanTarget(" \n\n \t\n") == "");
  CHECK(CleanTarget("\n\n  x  \n\n") == "x");
  CHECK(CleanTarget("a \r\nb\r\nc") == "a b\nc");
  CHECK(CleanTarget("last \n") == "last");
}

TEST_CASE("cleaning is idempotent on generated summaries") {
  dktest::Rng rng(404);
  for (int i = 0; i < 500; ++i) {
    std::string once = CleanTarget(dktest::RandomWrappedText(rng));
    REQUIRE(CleanTarget(once) == once);
  }
}
