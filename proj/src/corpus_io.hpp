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

// Corpus ingestion, dataset splitting, prepared-example files and length
// statistics.

#ifndef DISCHARGEKIT_CORPUS_IO_HPP_
#define DISCHARGEKIT_CORPUS_IO_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "common.hpp"
#include "tokenizer.hpp"

namespace dischargekit {

struct DischargeNote {
  std::string hadm_id;
  std::string note_id;
  std::string text;

  bool operator==(const DischargeNote&) const = default;
};

enum class RecordFormat { kCsv, kJsonl };

// ".csv" -> kCsv, ".jsonl"/".json" -> kJsonl; anything else is
// kInvalidArgument.
RecordFormat RecordFormatFromPath(const std::string& path);

// Reads hadm_id, note_id and text columns (CSV header or JSONL keys).
// Errors: kIo, kMissingColumn, kDuplicateId, kMalformedRecord (with record
// index; also raised for an empty text field).
std::vector<DischargeNote> LoadNotes(const std::string& path,
                                     RecordFormat format);
std::vector<DischargeNote> ParseNotes(std::string_view data,
                                      RecordFormat format);
void WriteNotesJsonl(const std::string& path,
                     const std::vector<DischargeNote>& notes);

// Reference summaries in the target-table layout.
struct TargetRecord {
  std::string hadm_id;
  std::string brief_hospital_course;
  std::string discharge_instructions;

  const std::string& Get(TargetKind target) const {
    return target == TargetKind::kBriefHospitalCourse ? brief_hospital_course
                                                      : discharge_instructions;
  }
};

// Columns hadm_id, brief_hospital_course, discharge_instructions; extra
// columns are ignored.
std::vector<TargetRecord> LoadTargets(const std::string& path,
                                      RecordFormat format);
std::vector<TargetRecord> ParseTargets(std::string_view data,
                                       RecordFormat format);

// Fraction of notes assigned to training, as an exact rational.
struct SplitSpec {
  uint64_t train_numerator = 4;
  uint64_t train_denominator = 5;
  uint64_t seed = 0;

  void Validate() const;  // kInvalidArgument unless 0 < fraction < 1
  std::string FractionString() const;  // "4/5"
};

// Parses "4/5" or "0.8" style fractions.
SplitSpec ParseFraction(std::string_view text, uint64_t seed);

struct SplitResult {
  std::vector<DischargeNote> train;
  std::vector<DischargeNote> validation;
};

// Split permutation "dk-fy64": hadm_ids are sorted bytewise, shuffled with a
// Fisher-Yates pass (i = n-1 .. 1, swap i with j drawn uniformly from [0, i])
// driven by std::mt19937_64 seeded with spec.seed, where j comes from
// UniformBelow. The first round_half_up(n * fraction) ids form the training
// set. Each partition keeps the input order of its notes, so the result
// depends only on the id set and the seed.
SplitResult SplitDataset(const std::vector<DischargeNote>& notes,
                         const SplitSpec& spec);

// Uniform integer in [0, bound) by rejection sampling on raw 64-bit engine
// output. Unlike std::uniform_int_distribution the draw sequence is fixed
// by this definition on every platform.
uint64_t UniformBelow(uint64_t bound, std::mt19937_64& engine);

uint64_t TrainCount(uint64_t n, const SplitSpec& spec);

struct LengthStats {
  size_t count = 0;
  size_t min = 0;
  size_t max = 0;
  uint64_t total = 0;
  double mean = 0.0;
  size_t bucket_width = 100;
  // (bucket lower bound, count) from the bucket holding min through the one
  // holding max, empty buckets included.
  std::vector<std::pair<size_t, size_t>> histogram;

  long MeanRounded() const;
};

// kEmptyCorpus on an empty input.
LengthStats ComputeLengthStats(const std::vector<size_t>& lengths,
                               size_t bucket_width = 100);
LengthStats CorpusStats(const std::vector<std::string>& texts,
                        const Tokenizer& tokenizer, size_t bucket_width = 100);

struct PreparedExample {
  std::string hadm_id;
  TargetKind target = TargetKind::kBriefHospitalCourse;
  std::string input_text;
  std::string target_text;

  bool operator==(const PreparedExample&) const = default;
};

// JSONL, one object per line with keys hadm_id, target ("bhc" | "di"),
// input_text, target_text, in that order.
void WritePrepared(const std::string& path,
                   const std::vector<PreparedExample>& examples);
std::string SerializePrepared(const std::vector<PreparedExample>& examples);
std::vector<PreparedExample> ReadPrepared(const std::string& path);
std::vector<PreparedExample> ParsePrepared(std::string_view data);

// One generated or reference summary, keyed by (hadm_id, target). Stored as
// JSONL with keys hadm_id, target, text. The reader also accepts the
// prepared-example layout, taking target_text when text is absent.
struct SummaryRecord {
  std::string hadm_id;
  TargetKind target = TargetKind::kBriefHospitalCourse;
  std::string text;

  bool operator==(const SummaryRecord&) const = default;
};

void WriteSummaries(const std::string& path,
                    const std::vector<SummaryRecord>& records);
std::vector<SummaryRecord> ReadSummaries(const std::string& path);
std::vector<SummaryRecord> ParseSummaries(std::string_view data);

std::string ReadFile(const std::string& path);
// Writes through a temporary file and renames it into place.
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace dischargekit

#endif  // DISCHARGEKIT_CORPUS_IO_HPP_
