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

// End-to-end stages behind the command-line verbs. Every stage validates its
// inputs completely before writing anything, and output bytes never depend on
// the thread count.

#ifndef DISCHARGEKIT_PIPELINE_HPP_
#define DISCHARGEKIT_PIPELINE_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"
#include "corpus_io.hpp"
#include "input_builder.hpp"
#include "metrics.hpp"
#include "tokenizer.hpp"

namespace dischargekit {

// Calls fn(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). The exception from the lowest failing index is rethrown
// after all workers stop.
void ParallelFor(size_t count, size_t threads,
                 const std::function<void(size_t)>& fn);

struct TokenizerConfig {
  TokenizerMode mode = TokenizerMode::kWhitespace;
  std::string vocab_path;

  Tokenizer Build() const { return Tokenizer::Create(mode, vocab_path); }
};

struct PrepareOptions {
  std::string notes_path;
  // Optional table with hadm_id, brief_hospital_course and
  // discharge_instructions; without it targets are cut from the notes.
  std::string targets_path;
  std::string output_dir;
  std::vector<TargetKind> targets = {TargetKind::kBriefHospitalCourse,
                                     TargetKind::kDischargeInstructions};
  TokenizerConfig tokenizer;
  size_t budget = kDefaultInputBudget;
  SplitSpec split;
  size_t threads = 0;
};

struct PrepareSummary {
  size_t notes = 0;
  size_t train_notes = 0;
  size_t validation_notes = 0;
  std::vector<std::string> files;  // in write order, manifest last
};

// Writes <target>_train.jsonl and <target>_validation.jsonl for each
// selected target plus manifest.json into output_dir.
PrepareSummary RunPrepare(const PrepareOptions& options);

// One prepared example for each selected target, before splitting.
std::vector<PreparedExample> PrepareNote(
    const DischargeNote& note, const TargetRecord* targets,
    const std::vector<TargetKind>& selected, const Tokenizer& tokenizer,
    size_t budget);

struct SplitOptions {
  std::string notes_path;
  std::string output_dir;
  SplitSpec split;
};

// Writes train.jsonl, validation.jsonl (note records) and manifest.json.
SplitResult RunSplit(const SplitOptions& options);

struct CleanTargetsOptions {
  std::string targets_path;
  std::string output_path;  // summary-record JSONL
  std::vector<TargetKind> targets = {TargetKind::kBriefHospitalCourse,
                                     TargetKind::kDischargeInstructions};
};

// Cleaned reference summaries, one record per (note, target).
std::vector<SummaryRecord> RunCleanTargets(const CleanTargetsOptions& options);

enum class StatsField { kInput, kTarget };

struct StatsOptions {
  // Exactly one of notes_path and prepared_path.
  std::string notes_path;
  std::string prepared_path;
  TargetKind target = TargetKind::kBriefHospitalCourse;
  StatsField field = StatsField::kInput;
  TokenizerConfig tokenizer;
  size_t bucket_width = 100;
  size_t threads = 0;
};

// Length distribution in tokens. From notes, inputs are assembled without a
// budget so the statistics describe the untruncated texts.
LengthStats RunStats(const StatsOptions& options);
std::string LengthStatsJson(const LengthStats& stats);

struct ScoreOptions {
  std::string generated_path;
  std::string references_path;
  std::string external_path;  // optional
  std::string output_json;    // optional
  std::string output_table;   // optional
  size_t threads = 0;
};

// kAlignment naming unmatched (target, hadm_id) keys when the generated and
// reference sets differ.
ScoreReport RunScore(const ScoreOptions& options);
ScoreReport ScoreSummaries(const std::vector<SummaryRecord>& generated,
                           const std::vector<SummaryRecord>& references,
                           const std::vector<ExternalScore>& external,
                           size_t threads);

}  // namespace dischargekit

#endif  // DISCHARGEKIT_PIPELINE_HPP_
