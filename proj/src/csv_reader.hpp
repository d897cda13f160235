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

#ifndef DISCHARGEKIT_CSV_READER_HPP_
#define DISCHARGEKIT_CSV_READER_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace dischargekit {

// RFC 4180 reader: comma separated, '"' quoting with "" escapes, line breaks
// allowed inside quoted fields, CRLF or LF record terminators.
class CsvTable {
 public:
  // Throws Error(kMalformedRecord) naming the 0-based record index on an
  // unterminated quote or a row whose width differs from the header.
  static CsvTable Parse(std::string_view data);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  // -1 when absent.
  int ColumnIndex(std::string_view name) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Quotes a field when it contains a comma, quote or line break.
std::string CsvEscape(std::string_view field);

}  // namespace dischargekit

#endif  // DISCHARGEKIT_CSV_READER_HPP_
