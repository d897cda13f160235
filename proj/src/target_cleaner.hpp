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

#ifndef DISCHARGEKIT_TARGET_CLEANER_HPP_
#define DISCHARGEKIT_TARGET_CLEANER_HPP_

#include <string>
#include <string_view>

namespace dischargekit {

// Undoes the fixed-width wrapping of a note section. A line ending in a
// space or tab was wrapped and continues on the next line; a line ending in
// visible text ends there (list items, salutations, headings). Each logical
// line has whitespace runs collapsed and is trimmed, runs of blank lines
// become one blank line, and leading and trailing blank lines are dropped.
// CRLF counts as a line break. Words and their order are unchanged.
// Idempotent.
std::string CleanTarget(std::string_view raw);

}  // namespace dischargekit

#endif  // DISCHARGEKIT_TARGET_CLEANER_HPP_
