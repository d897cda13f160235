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

#include <vector>

#include "text_util.hpp"

namespace dischargekit {

std::string CleanTarget(std::string_view raw) {
  std::vector<std::string> lines;
  std::string pending;
  bool open = false;  // pending holds a wrapped line awaiting its tail
  auto emit = [&] {
    lines.push_back(text::CollapseWhitespace(pending));
    pending.clear();
    open = false;
  };
  for (std::string_view line : text::SplitLines(raw)) {
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (text::Trim(line).empty()) {
      if (open) emit();
      // Only one blank line between paragraphs, none at the start.
      if (!lines.empty() && !lines.back().empty()) lines.emplace_back();
      continue;
    }
    pending += line;
    open = true;
    if (!text::IsBlank(line.back())) emit();
  }
  if (open) emit();
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  std::string out;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out.push_back('\n');
    out += lines[i];
  }
  return out;
}

}  // namespace dischargekit
