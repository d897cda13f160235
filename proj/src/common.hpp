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

#ifndef DISCHARGEKIT_COMMON_HPP_
#define DISCHARGEKIT_COMMON_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dischargekit {

// Mirrors dk_status in the C header; values must stay in sync.
enum class ErrorCode {
  kInvalidArgument = 1,
  kIo = 2,
  kMissingColumn = 3,
  kDuplicateId = 4,
  kMalformedRecord = 5,
  kEmptyCorpus = 6,
  kUnknownKind = 7,
  kVocabularyNotLoaded = 8,
  kLengthMismatch = 9,
  kAlignment = 10,
  kMissingMetric = 11,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// The two discharge-summary sections that are generated.
enum class TargetKind { kBriefHospitalCourse, kDischargeInstructions };

inline constexpr TargetKind kAllTargets[] = {TargetKind::kBriefHospitalCourse,
                                             TargetKind::kDischargeInstructions};

// "bhc" / "di", the spelling used in every file format.
std::string_view TargetKey(TargetKind target);
std::optional<TargetKind> ParseTargetKey(std::string_view key);

}  // namespace dischargekit

#endif  // DISCHARGEKIT_COMMON_HPP_
