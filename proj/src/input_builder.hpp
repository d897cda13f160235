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

#ifndef DISCHARGEKIT_INPUT_BUILDER_HPP_
#define DISCHARGEKIT_INPUT_BUILDER_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"
#include "section_extractor.hpp"
#include "tokenizer.hpp"

namespace dischargekit {

inline constexpr std::string_view kSeparator = "<sep>";
inline constexpr size_t kDefaultInputBudget = 1596;

// Prompt and per-target position of one input section.
struct PromptSpec {
  SectionKind kind;
  std::string_view prompt;
  std::optional<int> bhc_priority;  // 1..9
  std::optional<int> di_priority;   // 1..13

  std::optional<int> PriorityFor(TargetKind target) const {
    return target == TargetKind::kBriefHospitalCourse ? bhc_priority
                                                      : di_priority;
  }
};

// One row per input section, in SectionKind order.
std::span<const PromptSpec> PromptTable();

// kUnknownKind for the two target kinds.
std::string_view PromptFor(SectionKind kind);

// Sections used for a target, ordered by ascending priority.
std::vector<SectionKind> PrioritiesFor(TargetKind target);

// "<prompt> <text>" with a terminal "." added when text does not already end
// in ".", "!" or "?". Literal "<sep>" inside text is replaced by a space so
// that separators only ever appear between segments.
std::string PromptedSegment(SectionKind kind, std::string_view text);

// Prompted segments for every section of the target, in priority order,
// joined by "<sep>" (no surrounding spaces) and truncated to budget tokens.
// A separator left dangling at the end by truncation is dropped.
std::string BuildInput(const SectionSet& sections, TargetKind target,
                       const Tokenizer& tokenizer,
                       size_t budget = kDefaultInputBudget);

}  // namespace dischargekit

#endif  // DISCHARGEKIT_INPUT_BUILDER_HPP_
