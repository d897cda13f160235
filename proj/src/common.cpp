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

#include "common.hpp"

namespace dischargekit {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kUnknownKind: return "UnknownKind";
    case ErrorCode::kVocabularyNotLoaded: return "VocabularyNotLoaded";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kAlignment: return "AlignmentError";
    case ErrorCode::kMissingMetric: return "MissingMetric";
  }
  return "Unknown";
}

std::string_view TargetKey(TargetKind target) {
  return target == TargetKind::kBriefHospitalCourse ? "bhc" : "di";
}

std::optional<TargetKind> ParseTargetKey(std::string_view key) {
  if (key == "bhc") return TargetKind::kBriefHospitalCourse;
  if (key == "di") return TargetKind::kDischargeInstructions;
  return std::nullopt;
}

}  // namespace dischargekit
