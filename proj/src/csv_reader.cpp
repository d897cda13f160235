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

#include "common.hpp"

namespace dischargekit {

namespace {

std::string RecordError(size_t record, const std::string& what) {
  return "CSV record " + std::to_string(record) + ": " + what;
}

}  // namespace

CsvTable CsvTable::Parse(std::string_view data) {
  // Skip a UTF-8 byte order mark.
  if (data.substr(0, 3) == "\xEF\xBB\xBF") data.remove_prefix(3);

  std::vector<std::vector<std::string>> records;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // distinguishes "" from a missing last field
  size_t i = 0;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(row));
    row.clear();
  };

  while (i < data.size()) {
    char c = data[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < data.size() && data[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        continue;
      }
      field.push_back(c);
      ++i;
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) {
          throw Error(ErrorCode::kMalformedRecord,
                      RecordError(records.size() == 0 ? 0 : records.size() - 1,
                                  "quote inside unquoted field"));
        }
        in_quotes = true;
        field_started = true;
        ++i;
        break;
      case ',':
        end_field();
        field_started = true;
        ++i;
        break;
      case '\r':
        if (i + 1 < data.size() && data[i + 1] == '\n') ++i;
        [[fallthrough]];
      case '\n':
        end_record();
        ++i;
        break;
      default:
        field.push_back(c);
        field_started = true;
        ++i;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::kMalformedRecord,
                RecordError(records.empty() ? 0 : records.size() - 1,
                            "unterminated quoted field"));
  }
  if (field_started || !row.empty()) end_record();

  CsvTable table;
  if (records.empty()) return table;
  table.header_ = std::move(records.front());
  for (size_t r = 1; r < records.size(); ++r) {
    auto& rec = records[r];
    // Blank lines between records carry no data.
    if (rec.size() == 1 && rec[0].empty()) continue;
    if (rec.size() != table.header_.size()) {
      throw Error(ErrorCode::kMalformedRecord,
                  RecordError(table.rows_.size(),
                              "expected " + std::to_string(table.header_.size()) +
                                  " fields, found " + std::to_string(rec.size())));
    }
    table.rows_.push_back(std::move(rec));
  }
  return table;
}

int CsvTable::ColumnIndex(std::string_view name) const {
  for (size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace dischargekit
