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


#include "csv_reader.hpp"

#include "check_error.hpp"

using dischargekit::CsvEscape;
using dischargekit::CsvTable;
using dischargekit::ErrorCode;

TEST_CASE("quoted fields keep commas, quotes and line breaks") {
  CsvTable t = CsvTable::Parse(
      "id,text\r\n1,\"a, \"\"b\"\"\nc\"\r\n\r\n2,plain\n");
  REQUIRE(t.rows().size() == 2);
  CHECK(t.rows()[0][1] == "a, \"b\"\nc");
  CHECK(t.rows()[1][1] == "plain");
  CHECK(t.ColumnIndex("text") == 1);
  CHECK(t.ColumnIndex("nope") == -1);
}

TEST_CASE("byte order mark is skipped") {
  CsvTable t = CsvTable::Parse("\xEF\xBB\xBFid\n7\n");
  CHECK(t.header()[0] == "id");
}

TEST_CASE("malformed tables are rejected") {
  CHECK_DK_ERROR(CsvTable::Parse("a,b\n1\n"), ErrorCode::kMalformedRecord);
  CHECK_DK_ERROR(CsvTable::Parse("a\n\"open\n"), ErrorCode::kMalformedRecord);
}

TEST_CASE("escape round-trips through the parser") {
  for (const char* field : {"plain", "com,ma", "quo\"te", "line\nbreak", ""}) {
    CsvTable t = CsvTable::Parse("x\n" + CsvEscape(field) + "\n");
    // An empty field alone on a line reads as a blank row.
    if (std::string(field).empty()) continue;
    REQUIRE(t.rows().size() == 1);
    CHECK(t.rows()[0][0] == field);
  }
}
