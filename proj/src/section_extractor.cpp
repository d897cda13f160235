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

#include "section_extractor.hpp"

#include <algorithm>
#include <vector>

#include "text_util.hpp"

namespace dischargekit {

namespace {

struct KnownHeader {
  std::string_view text;
  bool matches_mid_line;
  std::optional<SectionKind> kind;
};

// Layout-only headers bound the spans of their neighbours but are never
// extracted.
constexpr KnownHeader kKnownHeaders[] = {
    {"Name:", false, SectionKind::kName},
    {"Unit No:", true, std::nullopt},
    {"Admission Date:", false, std::nullopt},
    {"Discharge Date:", true, std::nullopt},
    {"Date of Birth:", false, std::nullopt},
    {"Sex:", true, SectionKind::kSex},
    {"Service:", false, SectionKind::kService},
    {"Allergies:", false, SectionKind::kAllergies},
    {"Attending:", false, std::nullopt},
    {"Chief Complaint:", false, SectionKind::kChiefComplaint},
    {"Major Surgical or Invasive Procedure:", false,
     SectionKind::kMajorSurgicalOrInvasiveProcedure},
    {"History of Present Illness:", false,
     SectionKind::kHistoryOfPresentIllness},
    {"Past Medical History:", false, SectionKind::kPastMedicalHistory},
    {"Social History:", false, std::nullopt},
    {"Family History:", false, std::nullopt},
    {"Physical Exam:", false, std::nullopt},
    {"Physical ___:", false, std::nullopt},
    {"Pertinent Results:", false, SectionKind::kPertinentResults},
    {"Brief Hospital Course:", false, SectionKind::kBriefHospitalCourse},
    {"Medications on Admission:", false, SectionKind::kMedicationsOnAdmission},
    {"Discharge Medications:", false, SectionKind::kDischargeMedications},
    {"Discharge Disposition:", false, SectionKind::kDischargeDisposition},
    {"Facility:", false, std::nullopt},
    {"Discharge Diagnosis:", false, SectionKind::kDischargeDiagnosis},
    {"Discharge Condition:", false, SectionKind::kDischargeCondition},
    {"Discharge Instructions:", false, SectionKind::kDischargeInstructions},
    {"Followup Instructions:", false, std::nullopt},
};

struct Occurrence {
  size_t start;  // first byte of the header
  size_t end;    // one past the colon
  const KnownHeader* header;
};

bool AnchoredAtLineStart(std::string_view raw, size_t pos) {
  while (pos > 0 && text::IsBlank(raw[pos - 1])) --pos;
  return pos == 0 || raw[pos - 1] == '\n' || raw[pos - 1] == '\r';
}

bool IsHeaderAt(std::string_view raw, size_t pos, const KnownHeader& h) {
  if (AnchoredAtLineStart(raw, pos)) return true;
  return h.matches_mid_line && pos > 0 && text::IsSpace(raw[pos - 1]);
}

// Every valid header occurrence, ordered by position.
std::vector<Occurrence> FindOccurrences(std::string_view raw) {
  std::vector<Occurrence> out;
  for (const KnownHeader& h : kKnownHeaders) {
    for (size_t pos = raw.find(h.text); pos != std::string_view::npos;
         pos = raw.find(h.text, pos + 1)) {
      if (IsHeaderAt(raw, pos, h)) out.push_back({pos, pos + h.text.size(), &h});
    }
  }
  std::sort(out.begin(), out.end(), [](const Occurrence& a, const Occurrence& b) {
    return a.start < b.start;
  });
  return out;
}

size_t NextBoundary(const std::vector<Occurrence>& occ, size_t from,
                    size_t fallback) {
  for (const Occurrence& o : occ) {
    if (o.start >= from) return o.start;
  }
  return fallback;
}

const KnownHeader& HeaderEntry(SectionKind kind) {
  for (const KnownHeader& h : kKnownHeaders) {
    if (h.kind == kind) return h;
  }
  return kKnownHeaders[0];  // unreachable: every kind has an entry
}

struct Span {
  size_t header_start;
  size_t body_start;
  size_t end;
};

// Target spans are located by a plain search so that stripping leaves no
// occurrence of the header behind, wherever it sits.
std::optional<Span> FindTargetSpan(std::string_view raw, TargetKind target) {
  const SectionKind kind = SectionForTarget(target);
  const std::string_view header = HeaderFor(kind);
  const size_t pos = raw.find(header);
  if (pos == std::string_view::npos) return std::nullopt;
  const size_t body = pos + header.size();
  std::vector<Occurrence> occ = FindOccurrences(raw);

  auto first_of = [&](std::string_view boundary) -> std::optional<size_t> {
    for (const Occurrence& o : occ) {
      if (o.start >= body && o.header->text == boundary) return o.start;
    }
    return std::nullopt;
  };

  size_t end = raw.size();
  if (target == TargetKind::kBriefHospitalCourse) {
    if (auto meds = first_of("Medications on Admission:")) {
      end = *meds;
    } else {
      end = NextBoundary(occ, body, raw.size());
    }
  } else if (auto followup = first_of("Followup Instructions:")) {
    end = *followup;
  }
  return Span{pos, body, end};
}

bool IsListMarkerLine(std::string_view trimmed, size_t* marker_len) {
  if (trimmed.empty()) return false;
  size_t i = 0;
  if (trimmed[0] == '-') {
    i = 1;
  } else if (text::IsDigit(trimmed[0])) {
    while (i < trimmed.size() && text::IsDigit(trimmed[i])) ++i;
    if (i == trimmed.size() || (trimmed[i] != '.' && trimmed[i] != ')')) {
      return false;
    }
    ++i;
  } else {
    return false;
  }
  if (i < trimmed.size() && !text::IsSpace(trimmed[i])) return false;
  *marker_len = i;
  return true;
}

std::string_view TrimLeft(std::string_view s) {
  size_t b = 0;
  while (b < s.size() && text::IsSpace(s[b])) ++b;
  return s.substr(b);
}

// Length of a "___ 08:00AM" timestamp (plus trailing whitespace) at the head
// of line, or 0.
size_t TimestampPrefixLength(std::string_view line) {
  size_t i = 0;
  auto skip_space = [&] {
    size_t start = i;
    while (i < line.size() && text::IsSpace(line[i])) ++i;
    return i - start;
  };
  skip_space();
  size_t underscores = 0;
  while (i < line.size() && line[i] == '_') ++i, ++underscores;
  if (underscores < 2) return 0;
  if (skip_space() == 0) return 0;
  size_t digits = 0;
  while (i < line.size() && text::IsDigit(line[i])) ++i, ++digits;
  if (digits < 1 || digits > 2) return 0;
  if (i == line.size() || line[i] != ':') return 0;
  ++i;
  digits = 0;
  while (i < line.size() && text::IsDigit(line[i])) ++i, ++digits;
  if (digits != 2) return 0;
  skip_space();
  if (i + 2 > line.size()) return 0;
  std::string_view meridiem = line.substr(i, 2);
  if (meridiem != "AM" && meridiem != "PM") return 0;
  i += 2;
  if (i < line.size() && !text::IsSpace(line[i])) return 0;
  skip_space();
  return i;
}

}  // namespace

SectionKind SectionForTarget(TargetKind target) {
  return target == TargetKind::kBriefHospitalCourse
             ? SectionKind::kBriefHospitalCourse
             : SectionKind::kDischargeInstructions;
}

std::string_view HeaderFor(SectionKind kind) { return HeaderEntry(kind).text; }

std::string_view SectionName(SectionKind kind) {
  switch (kind) {
    case SectionKind::kName: return "Name";
    case SectionKind::kSex: return "Sex";
    case SectionKind::kService: return "Service";
    case SectionKind::kAllergies: return "Allergies";
    case SectionKind::kChiefComplaint: return "ChiefComplaint";
    case SectionKind::kMajorSurgicalOrInvasiveProcedure:
      return "MajorSurgicalOrInvasiveProcedure";
    case SectionKind::kHistoryOfPresentIllness: return "HistoryOfPresentIllness";
    case SectionKind::kPastMedicalHistory: return "PastMedicalHistory";
    case SectionKind::kPertinentResults: return "PertinentResults";
    case SectionKind::kMedicationsOnAdmission: return "MedicationsOnAdmission";
    case SectionKind::kDischargeDiagnosis: return "DischargeDiagnosis";
    case SectionKind::kDischargeDisposition: return "DischargeDisposition";
    case SectionKind::kDischargeCondition: return "DischargeCondition";
    case SectionKind::kDischargeMedications: return "DischargeMedications";
    case SectionKind::kBriefHospitalCourse: return "BriefHospitalCourse";
    case SectionKind::kDischargeInstructions: return "DischargeInstructions";
  }
  return "";
}

std::optional<SectionKind> ParseSectionName(std::string_view name) {
  for (size_t i = 0; i < kSectionKindCount; ++i) {
    auto kind = static_cast<SectionKind>(i);
    if (SectionName(kind) == name) return kind;
  }
  return std::nullopt;
}

SectionSet::SectionSet() { text_.fill(std::string(kUnknownSection)); }

const std::string& SectionSet::Get(SectionKind kind) const {
  if (!IsInputSection(kind)) {
    throw Error(ErrorCode::kUnknownKind,
                std::string(SectionName(kind)) + " is not an input section");
  }
  return text_[static_cast<size_t>(kind)];
}

void SectionSet::Set(SectionKind kind, std::string text) {
  if (!IsInputSection(kind)) {
    throw Error(ErrorCode::kUnknownKind,
                std::string(SectionName(kind)) + " is not an input section");
  }
  text_[static_cast<size_t>(kind)] = std::move(text);
}

bool SectionSet::Found(SectionKind kind) const {
  return IsInputSection(kind) && found_[static_cast<size_t>(kind)];
}

void SectionSet::MarkFound(SectionKind kind, bool found) {
  if (IsInputSection(kind)) found_[static_cast<size_t>(kind)] = found;
}

std::string StripTargets(std::string_view raw) {
  std::string text(raw);
  bool removed = true;
  while (removed) {
    removed = false;
    for (TargetKind target : kAllTargets) {
      if (auto span = FindTargetSpan(text, target)) {
        text.erase(span->header_start, span->end - span->header_start);
        removed = true;
      }
    }
  }
  return text;
}

std::optional<std::string> ExtractTarget(std::string_view raw,
                                         TargetKind target) {
  auto span = FindTargetSpan(raw, target);
  if (!span) return std::nullopt;
  return std::string(raw.substr(span->body_start, span->end - span->body_start));
}

std::optional<std::string_view> FindSectionBody(std::string_view raw,
                                                SectionKind kind) {
  std::vector<Occurrence> occ = FindOccurrences(raw);
  for (const Occurrence& o : occ) {
    if (o.header->kind == kind) {
      size_t end = NextBoundary(occ, o.end, raw.size());
      return raw.substr(o.end, end - o.end);
    }
  }
  return std::nullopt;
}

SectionSet ExtractSections(std::string_view raw) {
  std::vector<Occurrence> occ = FindOccurrences(raw);
  SectionSet sections;
  for (SectionKind kind : kInputSections) {
    for (const Occurrence& o : occ) {
      if (o.header->kind != kind) continue;
      size_t end = NextBoundary(occ, o.end, raw.size());
      std::string value = NormalizeSection(kind, raw.substr(o.end, end - o.end));
      if (!value.empty()) {
        sections.Set(kind, std::move(value));
        sections.MarkFound(kind, true);
      }
      break;
    }
  }
  return sections;
}

std::string StripResultTimestamps(std::string_view body) {
  std::string out;
  out.reserve(body.size());
  bool first = true;
  for (std::string_view line : text::SplitLines(body)) {
    if (!first) out.push_back('\n');
    first = false;
    while (size_t n = TimestampPrefixLength(line)) line.remove_prefix(n);
    out.append(line);
  }
  return out;
}

std::string CanonicalizeListMarkers(std::string_view body) {
  std::string out;
  out.reserve(body.size() + 16);
  bool first = true;
  for (std::string_view raw : text::SplitLines(body)) {
    if (!first) out.push_back('\n');
    first = false;
    std::string_view trimmed = TrimLeft(raw);
    size_t marker_len = 0;
    if (!IsListMarkerLine(trimmed, &marker_len)) {
      out.append(raw);  // "*" lines and continuations stay as they are
      continue;
    }
    std::string_view rest = text::Trim(trimmed.substr(marker_len));
    if (rest.empty()) continue;  // a bare marker carries no item
    out += "* ";
    out.append(rest);
    if (!text::EndsWithSentencePunct(rest)) out.push_back('.');
  }
  return out;
}

std::string RewriteConditionColons(std::string_view body) {
  std::string out;
  out.reserve(body.size() + 8);
  for (size_t i = 0; i < body.size(); ++i) {
    if (body[i] != ':') {
      out.push_back(body[i]);
      continue;
    }
    // A run of colons is one separator.
    size_t j = i;
    while (j < body.size() && body[j] == ':') ++j;
    if (j == body.size() || text::IsSpace(body[j])) {
      out += " is";
    } else {
      out.append(body.substr(i, j - i));
    }
    i = j - 1;
  }
  return out;
}

std::string NormalizeSection(SectionKind kind, std::string_view raw_body) {
  switch (kind) {
    case SectionKind::kSex: {
      std::string code = text::CollapseWhitespace(raw_body);
      if (code == "M") return "Male";
      if (code == "F") return "Female";
      return code;
    }
    case SectionKind::kPertinentResults: {
      auto pass = [](std::string_view s) {
        return text::CollapseWhitespace(
            CanonicalizeListMarkers(StripResultTimestamps(s)));
      };
      // Joining lines can assemble a timestamp at the head ("___ 8:00\nAM"),
      // so run again on the single-line result.
      return pass(pass(raw_body));
    }
    case SectionKind::kMedicationsOnAdmission:
    case SectionKind::kDischargeMedications:
      return text::CollapseWhitespace(CanonicalizeListMarkers(raw_body));
    case SectionKind::kDischargeCondition:
      return text::CollapseWhitespace(RewriteConditionColons(raw_body));
    default:
      return text::CollapseWhitespace(raw_body);
  }
}

}  // namespace dischargekit
