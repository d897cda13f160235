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

// Section segmentation of discharge notes.
//
// A section starts at its canonical header ("Chief Complaint:") and runs to
// the next known header or the end of the note. Headers are case-sensitive
// and anchored at the start of a line (leading blanks allowed). The
// demographic fields "Sex:", "Unit No:" and "Discharge Date:" share lines
// with other fields, so those three also match after a whitespace run.

#ifndef DISCHARGEKIT_SECTION_EXTRACTOR_HPP_
#define DISCHARGEKIT_SECTION_EXTRACTOR_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "common.hpp"

namespace dischargekit {

enum class SectionKind {
  kName,
  kSex,
  kService,
  kAllergies,
  kChiefComplaint,
  kMajorSurgicalOrInvasiveProcedure,
  kHistoryOfPresentIllness,
  kPastMedicalHistory,
  kPertinentResults,
  kMedicationsOnAdmission,
  kDischargeDiagnosis,
  kDischargeDisposition,
  kDischargeCondition,
  kDischargeMedications,
  // Targets: extractable, never part of a SectionSet.
  kBriefHospitalCourse,
  kDischargeInstructions,
};

inline constexpr size_t kInputSectionCount = 14;
inline constexpr size_t kSectionKindCount = 16;

inline constexpr std::array<SectionKind, kInputSectionCount> kInputSections = {
    SectionKind::kName,
    SectionKind::kSex,
    SectionKind::kService,
    SectionKind::kAllergies,
    SectionKind::kChiefComplaint,
    SectionKind::kMajorSurgicalOrInvasiveProcedure,
    SectionKind::kHistoryOfPresentIllness,
    SectionKind::kPastMedicalHistory,
    SectionKind::kPertinentResults,
    SectionKind::kMedicationsOnAdmission,
    SectionKind::kDischargeDiagnosis,
    SectionKind::kDischargeDisposition,
    SectionKind::kDischargeCondition,
    SectionKind::kDischargeMedications,
};

constexpr bool IsInputSection(SectionKind kind) {
  return kind != SectionKind::kBriefHospitalCourse &&
         kind != SectionKind::kDischargeInstructions;
}

SectionKind SectionForTarget(TargetKind target);

// Canonical header including the colon, e.g. "Chief Complaint:".
std::string_view HeaderFor(SectionKind kind);
// Identifier-style name, e.g. "ChiefComplaint".
std::string_view SectionName(SectionKind kind);
std::optional<SectionKind> ParseSectionName(std::string_view name);

inline constexpr std::string_view kUnknownSection = "Unknown";

// Normalized text for each of the 14 input kinds. A default-constructed set
// holds "Unknown" everywhere.
class SectionSet {
 public:
  SectionSet();

  const std::string& Get(SectionKind kind) const;
  // kUnknownKind for target kinds.
  void Set(SectionKind kind, std::string text);

  // Whether the value came from a header in the note rather than the
  // "Unknown" default.
  bool Found(SectionKind kind) const;
  void MarkFound(SectionKind kind, bool found);

 private:
  std::array<std::string, kInputSectionCount> text_;
  std::array<bool, kInputSectionCount> found_{};
};

// Removes the "Brief Hospital Course:" span (ending at "Medications on
// Admission:", else the next known header, else end of note) and the
// "Discharge Instructions:" span (ending at "Followup Instructions:" or end
// of note). Everything else is byte-preserved. Repeats until neither target
// header occurs anywhere in the result.
std::string StripTargets(std::string_view raw);

// Body of a target section as it appears in the note, or nullopt when the
// header is missing. Boundaries are the ones StripTargets uses.
std::optional<std::string> ExtractTarget(std::string_view raw,
                                         TargetKind target);

// Total: all 14 kinds are present in the result.
SectionSet ExtractSections(std::string_view raw);

// Raw body of one input kind (header to next known header), or nullopt when
// the header is absent.
std::optional<std::string_view> FindSectionBody(std::string_view raw,
                                                SectionKind kind);

// Kind-specific rule, then line breaks to spaces, space runs collapsed,
// trimmed. Idempotent for every kind.
//   Sex: "M" -> "Male", "F" -> "Female", other codes unchanged.
//   PertinentResults: StripResultTimestamps, then CanonicalizeListMarkers.
//   MedicationsOnAdmission, DischargeMedications: CanonicalizeListMarkers.
//   DischargeCondition: "Label: value" -> "Label is value".
std::string NormalizeSection(SectionKind kind, std::string_view raw_body);

// Deletes a leading "___ 08:00AM" style timestamp from every line (repeated
// while one remains at the line head). Line structure is kept.
std::string StripResultTimestamps(std::string_view body);

// Line-leading "1.", "1)" or "-" markers become "* ", and the marker line
// gains a "." unless it already ends in ".", "!" or "?". Lines already
// starting with "*" and continuation lines are left alone; bare markers are
// dropped.
std::string CanonicalizeListMarkers(std::string_view body);

// Every ':' (or run of ':') followed by whitespace or end of text becomes
// " is".
std::string RewriteConditionColons(std::string_view body);

}  // namespace dischargekit

#endif  // DISCHARGEKIT_SECTION_EXTRACTOR_HPP_
