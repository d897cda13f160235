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

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "common.hpp"
#include "dischargekit/dischargekit.h"
#include "input_builder.hpp"
#include "metrics.hpp"
#include "pipeline.hpp"
#include "section_extractor.hpp"
#include "target_cleaner.hpp"
#include "tokenizer.hpp"

struct dk_tokenizer {
  dischargekit::Tokenizer impl;
};

struct dk_sections {
  dischargekit::SectionSet impl;
};

namespace {

using namespace dischargekit;

thread_local std::string g_last_error;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

dk_status Fail(dk_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body, turning exceptions into a status plus message.
template <typename Body>
dk_status Guard(Body&& body) {
  g_last_error.clear();
  try {
    body();
    return DK_OK;
  } catch (const Error& e) {
    return Fail(static_cast<dk_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(DK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(DK_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(DK_ERR_INTERNAL, "unknown error");
  }
}

void NotNull(const void* p, const char* name) {
  if (!p) throw Error(ErrorCode::kInvalidArgument, std::string(name) + " is NULL");
}

char* CopyOut(std::string_view s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

std::string Str(const char* s) { return s ? std::string(s) : std::string(); }

SectionKind ToSection(dk_section kind) {
  auto k = static_cast<int>(kind);
  if (k < 0 || k >= static_cast<int>(kSectionKindCount)) {
    throw Error(ErrorCode::kUnknownKind, "section kind " + std::to_string(k) + " is out of range");
  }
  return static_cast<SectionKind>(k);
}

TargetKind ToTarget(dk_target target) {
  switch (target) {
    case DK_TARGET_BHC:
      return TargetKind::kBriefHospitalCourse;
    case DK_TARGET_DI:
      return TargetKind::kDischargeInstructions;
    default:
      break;
  }
  throw Error(ErrorCode::kUnknownKind, "target " + std::to_string(static_cast<int>(target)) + " is out of range");
}

std::vector<TargetKind> ToTargets(unsigned mask) {
  if (mask == 0 || (mask & ~DK_TARGETS_BOTH) != 0) {
    throw Error(ErrorCode::kInvalidArgument, "target mask " + std::to_string(mask) + " is invalid");
  }
  std::vector<TargetKind> out;
  if (mask & DK_TARGETS_BHC) out.push_back(TargetKind::kBriefHospitalCourse);
  if (mask & DK_TARGETS_DI) out.push_back(TargetKind::kDischargeInstructions);
  return out;
}

TokenizerMode ToMode(dk_tokenizer_mode mode) {
  switch (mode) {
    case DK_TOKENIZER_WHITESPACE:
      return TokenizerMode::kWhitespace;
    case DK_TOKENIZER_SUBWORD:
      return TokenizerMode::kSubword;
    default:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown tokenizer mode");
}

SplitSpec ToSplit(const char* fraction, uint64_t seed) {
  return ParseFraction(fraction ? fraction : "4/5", seed);
}

dk_prf ToPrf(const PrfScore& s) { return {s.precision, s.recall, s.f1}; }

}  // namespace

extern "C" {

const char* dk_version(void) { return DISCHARGEKIT_VERSION; }

const char* dk_last_error(void) { return g_last_error.c_str(); }

const char* dk_status_name(dk_status status) {
  if (status == DK_OK) return "OK";
  if (status == DK_ERR_INTERNAL) return "InternalError";
  int code = static_cast<int>(status);
  if (code >= 1 && code <= static_cast<int>(ErrorCode::kMissingMetric)) {
    return ErrorCodeName(static_cast<ErrorCode>(code)).data();
  }
  return "UnknownStatus";
}

void dk_string_free(char* s) { std::free(s); }

dk_status dk_tokenizer_create(dk_tokenizer_mode mode, const char* vocab_path,
                              dk_tokenizer** out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = nullptr;
    *out = new dk_tokenizer{Tokenizer::Create(ToMode(mode), Str(vocab_path))};
  });
}

void dk_tokenizer_free(dk_tokenizer* tokenizer) { delete tokenizer; }

dk_status dk_tokenizer_label(const dk_tokenizer* tokenizer, char** out) {
  return Guard([&] {
    NotNull(tokenizer, "tokenizer");
    NotNull(out, "out");
    *out = CopyOut(tokenizer->impl.Label());
  });
}

dk_status dk_tokenizer_count(const dk_tokenizer* tokenizer, const char* text,
                             size_t* out) {
  return Guard([&] {
    NotNull(tokenizer, "tokenizer");
    NotNull(text, "text");
    NotNull(out, "out");
    *out = tokenizer->impl.Count(text);
  });
}

dk_status dk_tokenizer_truncate(const dk_tokenizer* tokenizer, const char* text,
                                size_t budget, char** out) {
  return Guard([&] {
    NotNull(tokenizer, "tokenizer");
    NotNull(text, "text");
    NotNull(out, "out");
    *out = CopyOut(tokenizer->impl.Truncate(text, budget));
  });
}

dk_status dk_sections_new(dk_sections** out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = new dk_sections{};
  });
}

dk_status dk_sections_extract(const char* note, dk_sections** out) {
  return Guard([&] {
    NotNull(note, "note");
    NotNull(out, "out");
    *out = nullptr;
    *out = new dk_sections{ExtractSections(note)};
  });
}

void dk_sections_free(dk_sections* sections) { delete sections; }

dk_status dk_sections_get(const dk_sections* sections, dk_section kind,
                          const char** out) {
  return Guard([&] {
    NotNull(sections, "sections");
    NotNull(out, "out");
    *out = sections->impl.Get(ToSection(kind)).c_str();
  });
}

dk_status dk_sections_set(dk_sections* sections, dk_section kind,
                          const char* text) {
  return Guard([&] {
    NotNull(sections, "sections");
    NotNull(text, "text");
    sections->impl.Set(ToSection(kind), text);
  });
}

dk_status dk_sections_found(const dk_sections* sections, dk_section kind,
                            int* out) {
  return Guard([&] {
    NotNull(sections, "sections");
    NotNull(out, "out");
    *out = sections->impl.Found(ToSection(kind)) ? 1 : 0;
  });
}

dk_status dk_strip_targets(const char* note, char** out) {
  return Guard([&] {
    NotNull(note, "note");
    NotNull(out, "out");
    *out = CopyOut(StripTargets(note));
  });
}

dk_status dk_extract_target(const char* note, dk_target target, char** out,
                            int* found) {
  return Guard([&] {
    NotNull(note, "note");
    NotNull(out, "out");
    auto body = ExtractTarget(note, ToTarget(target));
    *out = CopyOut(body ? *body : std::string());
    if (found) *found = body ? 1 : 0;
  });
}

dk_status dk_normalize_section(dk_section kind, const char* body, char** out) {
  return Guard([&] {
    NotNull(body, "body");
    NotNull(out, "out");
    *out = CopyOut(NormalizeSection(ToSection(kind), body));
  });
}

dk_status dk_clean_target(const char* raw, char** out) {
  return Guard([&] {
    NotNull(raw, "raw");
    NotNull(out, "out");
    *out = CopyOut(CleanTarget(raw));
  });
}

dk_status dk_prompt_for(dk_section kind, const char** out) {
  return Guard([&] {
    NotNull(out, "out");
    // Table entries are string literals, so data() is NUL-terminated.
    *out = PromptFor(ToSection(kind)).data();
  });
}

dk_status dk_priorities_for(dk_target target, dk_section* out, size_t capacity,
                            size_t* count) {
  return Guard([&] {
    NotNull(count, "count");
    if (capacity > 0) NotNull(out, "out");
    std::vector<SectionKind> kinds = PrioritiesFor(ToTarget(target));
    *count = kinds.size();
    for (size_t i = 0; i < kinds.size() && i < capacity; ++i) {
      out[i] = static_cast<dk_section>(kinds[i]);
    }
  });
}

dk_status dk_build_input(const dk_sections* sections, dk_target target,
                         const dk_tokenizer* tokenizer, size_t budget,
                         char** out) {
  return Guard([&] {
    NotNull(sections, "sections");
    NotNull(tokenizer, "tokenizer");
    NotNull(out, "out");
    if (budget == 0) throw Error(ErrorCode::kInvalidArgument, "budget must be positive");
    *out = CopyOut(BuildInput(sections->impl, ToTarget(target), tokenizer->impl, budget));
  });
}

dk_status dk_rouge_n(const char* candidate, const char* reference, int n,
                     dk_prf* out) {
  return Guard([&] {
    NotNull(candidate, "candidate");
    NotNull(reference, "reference");
    NotNull(out, "out");
    *out = ToPrf(RougeNScores(NormalizeTokens(candidate), NormalizeTokens(reference), n));
  });
}

dk_status dk_rouge_l(const char* candidate, const char* reference, dk_prf* out) {
  return Guard([&] {
    NotNull(candidate, "candidate");
    NotNull(reference, "reference");
    NotNull(out, "out");
    *out = ToPrf(RougeLScores(NormalizeTokens(candidate), NormalizeTokens(reference)));
  });
}

dk_status dk_bleu4(const char* const* candidates, const char* const* references,
                   size_t count, double* out) {
  return Guard([&] {
    NotNull(out, "out");
    if (count > 0) {
      NotNull(candidates, "candidates");
      NotNull(references, "references");
    }
    std::vector<std::string> cands, refs;
    for (size_t i = 0; i < count; ++i) {
      NotNull(candidates[i], "candidate");
      NotNull(references[i], "reference");
      cands.emplace_back(candidates[i]);
      refs.emplace_back(references[i]);
    }
    *out = Bleu4(cands, refs);
  });
}

dk_status dk_meteor(const char* candidate, const char* reference, double* out) {
  return Guard([&] {
    NotNull(candidate, "candidate");
    NotNull(reference, "reference");
    NotNull(out, "out");
    *out = Meteor(candidate, reference);
  });
}

dk_status dk_aggregate(const double* bhc, const double* di, double* per_metric,
                       double* overall) {
  return Guard([&] {
    NotNull(bhc, "bhc");
    NotNull(di, "di");
    NotNull(overall, "overall");
    *overall = kNaN;
    MetricReport b, d;
    b.target = TargetKind::kBriefHospitalCourse;
    d.target = TargetKind::kDischargeInstructions;
    for (Metric m : kAllMetrics) {
      auto i = static_cast<size_t>(m);
      if (!std::isnan(bhc[i])) b.Set(m, bhc[i]);
      if (!std::isnan(di[i])) d.Set(m, di[i]);
    }
    ScoreReport report = Aggregate(b, d);
    if (per_metric) {
      for (size_t i = 0; i < kMetricCount; ++i) {
        per_metric[i] = report.per_metric_overall[i].value_or(kNaN);
      }
    }
    *overall = report.RequireOverall();
  });
}

void dk_prepare_options_init(dk_prepare_options* options) {
  if (!options) return;
  *options = dk_prepare_options{};
  options->targets = DK_TARGETS_BOTH;
  options->tokenizer_mode = DK_TOKENIZER_WHITESPACE;
  options->budget = DK_DEFAULT_BUDGET;
  options->fraction = "4/5";
}

dk_status dk_run_prepare(const dk_prepare_options* options,
                         dk_prepare_summary* summary) {
  return Guard([&] {
    NotNull(options, "options");
    PrepareOptions o;
    o.notes_path = Str(options->notes_path);
    o.targets_path = Str(options->targets_path);
    o.output_dir = Str(options->output_dir);
    o.targets = ToTargets(options->targets);
    o.tokenizer = {ToMode(options->tokenizer_mode), Str(options->vocab_path)};
    o.budget = options->budget;
    o.split = ToSplit(options->fraction, options->seed);
    o.threads = options->threads;
    PrepareSummary s = RunPrepare(o);
    if (summary) *summary = {s.notes, s.train_notes, s.validation_notes};
  });
}

void dk_split_options_init(dk_split_options* options) {
  if (!options) return;
  *options = dk_split_options{};
  options->fraction = "4/5";
}

dk_status dk_run_split(const dk_split_options* options, size_t* train_count,
                       size_t* validation_count) {
  return Guard([&] {
    NotNull(options, "options");
    SplitOptions o;
    o.notes_path = Str(options->notes_path);
    o.output_dir = Str(options->output_dir);
    o.split = ToSplit(options->fraction, options->seed);
    SplitResult r = RunSplit(o);
    if (train_count) *train_count = r.train.size();
    if (validation_count) *validation_count = r.validation.size();
  });
}

void dk_clean_targets_options_init(dk_clean_targets_options* options) {
  if (!options) return;
  *options = dk_clean_targets_options{};
  options->targets = DK_TARGETS_BOTH;
}

dk_status dk_run_clean_targets(const dk_clean_targets_options* options,
                               size_t* record_count) {
  return Guard([&] {
    NotNull(options, "options");
    CleanTargetsOptions o;
    o.targets_path = Str(options->targets_path);
    o.output_path = Str(options->output_path);
    o.targets = ToTargets(options->targets);
    size_t n = RunCleanTargets(o).size();
    if (record_count) *record_count = n;
  });
}

void dk_stats_options_init(dk_stats_options* options) {
  if (!options) return;
  *options = dk_stats_options{};
  options->target = DK_TARGET_BHC;
  options->field = DK_FIELD_INPUT;
  options->tokenizer_mode = DK_TOKENIZER_WHITESPACE;
  options->bucket_width = 100;
}

dk_status dk_run_stats(const dk_stats_options* options, char** json_out) {
  return Guard([&] {
    NotNull(options, "options");
    NotNull(json_out, "json_out");
    StatsOptions o;
    o.notes_path = Str(options->notes_path);
    o.prepared_path = Str(options->prepared_path);
    o.target = ToTarget(options->target);
    if (options->field != DK_FIELD_INPUT && options->field != DK_FIELD_TARGET) {
      throw Error(ErrorCode::kInvalidArgument, "unknown stats field");
    }
    o.field = options->field == DK_FIELD_INPUT ? StatsField::kInput : StatsField::kTarget;
    o.tokenizer = {ToMode(options->tokenizer_mode), Str(options->vocab_path)};
    o.bucket_width = options->bucket_width;
    o.threads = options->threads;
    *json_out = CopyOut(LengthStatsJson(RunStats(o)));
  });
}

void dk_score_options_init(dk_score_options* options) {
  if (!options) return;
  *options = dk_score_options{};
}

dk_status dk_run_score(const dk_score_options* options, char** table_out,
                       double* overall) {
  return Guard([&] {
    NotNull(options, "options");
    if (table_out) *table_out = nullptr;
    if (overall) *overall = kNaN;
    ScoreOptions o;
    o.generated_path = Str(options->generated_path);
    o.references_path = Str(options->references_path);
    o.external_path = Str(options->external_path);
    o.output_json = Str(options->output_json);
    o.output_table = Str(options->output_table);
    o.threads = options->threads;
    ScoreReport report = RunScore(o);
    if (table_out) *table_out = CopyOut(ScoreReportTable(report));
    if (overall) *overall = report.overall.value_or(kNaN);
  });
}

}  // extern "C"
