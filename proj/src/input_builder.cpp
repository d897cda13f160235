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

#include "input_builder.hpp"

#include <algorithm>
#include <array>

#include "text_util.hpp"

namespace dischargekit {

namespace {

constexpr std::array<PromptSpec, kInputSectionCount> kPrompts = {{
    {SectionKind::kName, "The patient's name is provided as follows:", 1, 1},
    {SectionKind::kSex, "Gender details are as follows:", 2, 2},
    {SectionKind::kService, "The service details are as follows:", 9, 9},
    {SectionKind::kAllergies,
     "Information on any allergies is detailed as follows:", 7, 6},
    {SectionKind::kChiefComplaint,
     "The primary reason for the visit is summarized as follows:", 3, 3},
    {SectionKind::kMajorSurgicalOrInvasiveProcedure,
     "Details on any major surgeries or invasive procedures are as follows:", 8,
     7},
    {SectionKind::kHistoryOfPresentIllness,
     "An overview of the current illness's history is provided as follows:", 4,
     4},
    {SectionKind::kPastMedicalHistory,
     "A summary of the patient's past medical history is as follows:", 6, 5},
    {SectionKind::kPertinentResults,
     "Clinically significant findings impacting the treatment and diagnosis "
     "are as follows:",
     5, std::nullopt},
    {SectionKind::kMedicationsOnAdmission,
     "Medications upon admission are detailed as follows:", std::nullopt, 8},
    {SectionKind::kDischargeDiagnosis,
     "The final diagnosis at discharge is as follows:", std::nullopt, 10},
    {SectionKind::kDischargeDisposition,
     "The disposition at discharge is provided as follows:", std::nullopt, 11},
    {SectionKind::kDischargeCondition,
     "The patient's condition upon discharge is described as follows:",
     std::nullopt, 12},
    {SectionKind::kDischargeMedications,
     "Medications prescribed at discharge are as follows:", std::nullopt, 13},
}};

}  // namespace

std::span<const PromptSpec> PromptTable() { return kPrompts; }

std::string_view PromptFor(SectionKind kind) {
  for (const PromptSpec& p : kPrompts) {
    if (p.kind == kind) return p.prompt;
  }
  throw Error(ErrorCode::kUnknownKind,
              std::string(SectionName(kind)) + " has no prompt");
}

std::vector<SectionKind> PrioritiesFor(TargetKind target) {
  std::vector<const PromptSpec*> rows;
  for (const PromptSpec& p : kPrompts) {
    if (p.PriorityFor(target)) rows.push_back(&p);
  }
  std::sort(rows.begin(), rows.end(), [&](const PromptSpec* a, const PromptSpec* b) {
    return *a->PriorityFor(target) < *b->PriorityFor(target);
  });
  std::vector<SectionKind> kinds;
  for (const PromptSpec* p : rows) kinds.push_back(p->kind);
  return kinds;
}

std::string PromptedSegment(SectionKind kind, std::string_view text) {
  std::string body = text::CollapseWhitespace(
      text::ReplaceAll(text, kSeparator, " "));
  if (body.empty()) body = kUnknownSection;
  if (!text::EndsWithSentencePunct(body)) body.push_back('.');
  std::string segment(PromptFor(kind));
  segment.push_back(' ');
  segment += body;
  return segment;
}

std::string BuildInput(const SectionSet& sections, TargetKind target,
                       const Tokenizer& tokenizer, size_t budget) {
  std::string joined;
  for (SectionKind kind : PrioritiesFor(target)) {
    if (!joined.empty()) joined += kSeparator;
    joined += PromptedSegment(kind, sections.Get(kind));
  }
  std::string out = tokenizer.Truncate(joined, budget);
  // Subword tokenizers may end the budget right after a separator.
  // Dropping it can re-segment the last word, so re-check the budget.
  while (out.ends_with(kSeparator)) {
    out.resize(out.size() - kSeparator.size());
    if (tokenizer.Count(out) > budget) out = tokenizer.Truncate(out, budget);
  }
  return out;
}

}  // namespace dischargekit
