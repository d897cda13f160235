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

/* C interface to the dischargekit library.
 *
 * Every fallible call returns a dk_status. On failure a description is
 * available from dk_last_error() on the same thread until the next call.
 * Strings returned through char** are owned by the caller and released with
 * dk_string_free(); const char* results are owned by the library. All text
 * is UTF-8 and NUL-terminated. */

#ifndef DISCHARGEKIT_DISCHARGEKIT_H_
#define DISCHARGEKIT_DISCHARGEKIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(DK_BUILDING_LIBRARY)
#define DK_API __declspec(dllexport)
#else
#define DK_API __declspec(dllimport)
#endif
#else
#define DK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dk_status {
  DK_OK = 0,
  DK_ERR_INVALID_ARGUMENT = 1,
  DK_ERR_IO = 2,
  DK_ERR_MISSING_COLUMN = 3,
  DK_ERR_DUPLICATE_ID = 4,
  DK_ERR_MALFORMED_RECORD = 5,
  DK_ERR_EMPTY_CORPUS = 6,
  DK_ERR_UNKNOWN_KIND = 7,
  DK_ERR_VOCABULARY_NOT_LOADED = 8,
  DK_ERR_LENGTH_MISMATCH = 9,
  DK_ERR_ALIGNMENT = 10,
  DK_ERR_MISSING_METRIC = 11,
  DK_ERR_INTERNAL = 99,
  DK_STATUS_MAX_ENUM = 0x7fffffff
} dk_status;

typedef enum dk_target {
  DK_TARGET_BHC = 0, /* brief hospital course */
  DK_TARGET_DI = 1,  /* discharge instructions */
  DK_TARGET_MAX_ENUM = 0x7fffffff
} dk_target;

/* Bit set of targets for the pipeline calls. */
#define DK_TARGETS_BHC 1u
#define DK_TARGETS_DI 2u
#define DK_TARGETS_BOTH 3u

typedef enum dk_section {
  DK_SECTION_NAME = 0,
  DK_SECTION_SEX = 1,
  DK_SECTION_SERVICE = 2,
  DK_SECTION_ALLERGIES = 3,
  DK_SECTION_CHIEF_COMPLAINT = 4,
  DK_SECTION_MAJOR_SURGICAL_OR_INVASIVE_PROCEDURE = 5,
  DK_SECTION_HISTORY_OF_PRESENT_ILLNESS = 6,
  DK_SECTION_PAST_MEDICAL_HISTORY = 7,
  DK_SECTION_PERTINENT_RESULTS = 8,
  DK_SECTION_MEDICATIONS_ON_ADMISSION = 9,
  DK_SECTION_DISCHARGE_DIAGNOSIS = 10,
  DK_SECTION_DISCHARGE_DISPOSITION = 11,
  DK_SECTION_DISCHARGE_CONDITION = 12,
  DK_SECTION_DISCHARGE_MEDICATIONS = 13,
  DK_SECTION_BRIEF_HOSPITAL_COURSE = 14,
  DK_SECTION_DISCHARGE_INSTRUCTIONS = 15,
  DK_SECTION_MAX_ENUM = 0x7fffffff
} dk_section;

/* The *_MAX_ENUM members only widen each enum to the full int range so that
 * out-of-range values from callers are representable; they are rejected. */
#define DK_INPUT_SECTION_COUNT 14

typedef enum dk_tokenizer_mode {
  DK_TOKENIZER_WHITESPACE = 0,
  DK_TOKENIZER_SUBWORD = 1,
  DK_TOKENIZER_MAX_ENUM = 0x7fffffff
} dk_tokenizer_mode;

/* Column order of the eight-metric overall score. */
typedef enum dk_metric {
  DK_METRIC_BLEU = 0,
  DK_METRIC_ROUGE1 = 1,
  DK_METRIC_ROUGE2 = 2,
  DK_METRIC_ROUGEL = 3,
  DK_METRIC_BERTSCORE = 4,
  DK_METRIC_METEOR = 5,
  DK_METRIC_ALIGNSCORE = 6,
  DK_METRIC_MEDCON = 7,
  DK_METRIC_MAX_ENUM = 0x7fffffff
} dk_metric;

#define DK_METRIC_COUNT 8
#define DK_DEFAULT_BUDGET 1596

DK_API const char* dk_version(void);
DK_API const char* dk_last_error(void);
DK_API const char* dk_status_name(dk_status status);
DK_API void dk_string_free(char* s);

/* Tokenizer. vocab_path is required for DK_TOKENIZER_SUBWORD and ignored
 * otherwise. */
typedef struct dk_tokenizer dk_tokenizer;

DK_API dk_status dk_tokenizer_create(dk_tokenizer_mode mode,
                                     const char* vocab_path,
                                     dk_tokenizer** out);
DK_API void dk_tokenizer_free(dk_tokenizer* tokenizer);
DK_API dk_status dk_tokenizer_label(const dk_tokenizer* tokenizer, char** out);
DK_API dk_status dk_tokenizer_count(const dk_tokenizer* tokenizer,
                                    const char* text, size_t* out);
DK_API dk_status dk_tokenizer_truncate(const dk_tokenizer* tokenizer,
                                       const char* text, size_t budget,
                                       char** out);

/* Normalized text for the 14 input sections. */
typedef struct dk_sections dk_sections;

/* Every section set to "Unknown". */
DK_API dk_status dk_sections_new(dk_sections** out);
DK_API dk_status dk_sections_extract(const char* note, dk_sections** out);
DK_API void dk_sections_free(dk_sections* sections);
/* The pointer stays valid until the section is set again or freed. */
DK_API dk_status dk_sections_get(const dk_sections* sections, dk_section kind,
                                 const char** out);
DK_API dk_status dk_sections_set(dk_sections* sections, dk_section kind,
                                 const char* text);
DK_API dk_status dk_sections_found(const dk_sections* sections,
                                   dk_section kind, int* out);

DK_API dk_status dk_strip_targets(const char* note, char** out);
/* *found is 0 and *out is an empty string when the note lacks the header. */
DK_API dk_status dk_extract_target(const char* note, dk_target target,
                                   char** out, int* found);
DK_API dk_status dk_normalize_section(dk_section kind, const char* body,
                                      char** out);
DK_API dk_status dk_clean_target(const char* raw, char** out);

DK_API dk_status dk_prompt_for(dk_section kind, const char** out);
/* Writes up to capacity kinds; *count receives the full length. */
DK_API dk_status dk_priorities_for(dk_target target, dk_section* out,
                                   size_t capacity, size_t* count);
DK_API dk_status dk_build_input(const dk_sections* sections, dk_target target,
                                const dk_tokenizer* tokenizer, size_t budget,
                                char** out);

/* Metrics. */
typedef struct dk_prf {
  double precision;
  double recall;
  double f1;
} dk_prf;

DK_API dk_status dk_rouge_n(const char* candidate, const char* reference,
                            int n, dk_prf* out);
DK_API dk_status dk_rouge_l(const char* candidate, const char* reference,
                            dk_prf* out);
DK_API dk_status dk_bleu4(const char* const* candidates,
                          const char* const* references, size_t count,
                          double* out);
DK_API dk_status dk_meteor(const char* candidate, const char* reference,
                           double* out);
/* bhc and di hold DK_METRIC_COUNT values in dk_metric order, NaN marking an
 * absent metric. per_metric (optional) receives the target means, NaN where
 * either side is absent. Returns DK_ERR_MISSING_METRIC with *overall NaN when
 * any metric is absent. */
DK_API dk_status dk_aggregate(const double* bhc, const double* di,
                              double* per_metric, double* overall);

/* Pipeline stages. Initialize option structs with the matching *_init call,
 * then override fields. Unused paths are NULL. */
typedef struct dk_prepare_options {
  const char* notes_path;
  const char* targets_path;
  const char* output_dir;
  unsigned targets; /* DK_TARGETS_* */
  dk_tokenizer_mode tokenizer_mode;
  const char* vocab_path;
  size_t budget;
  const char* fraction; /* "4/5" or "0.8" */
  uint64_t seed;
  size_t threads; /* 0 = all cores */
} dk_prepare_options;

typedef struct dk_prepare_summary {
  size_t notes;
  size_t train_notes;
  size_t validation_notes;
} dk_prepare_summary;

DK_API void dk_prepare_options_init(dk_prepare_options* options);
DK_API dk_status dk_run_prepare(const dk_prepare_options* options,
                                dk_prepare_summary* summary);

typedef struct dk_split_options {
  const char* notes_path;
  const char* output_dir;
  const char* fraction;
  uint64_t seed;
} dk_split_options;

DK_API void dk_split_options_init(dk_split_options* options);
DK_API dk_status dk_run_split(const dk_split_options* options,
                              size_t* train_count, size_t* validation_count);

typedef struct dk_clean_targets_options {
  const char* targets_path;
  const char* output_path;
  unsigned targets;
} dk_clean_targets_options;

DK_API void dk_clean_targets_options_init(dk_clean_targets_options* options);
DK_API dk_status dk_run_clean_targets(const dk_clean_targets_options* options,
                                      size_t* record_count);

typedef enum dk_stats_field {
  DK_FIELD_INPUT = 0,
  DK_FIELD_TARGET = 1,
  DK_FIELD_MAX_ENUM = 0x7fffffff
} dk_stats_field;

typedef struct dk_stats_options {
  const char* notes_path;    /* either this */
  const char* prepared_path; /* or this */
  dk_target target;
  dk_stats_field field;
  dk_tokenizer_mode tokenizer_mode;
  const char* vocab_path;
  size_t bucket_width;
  size_t threads;
} dk_stats_options;

DK_API void dk_stats_options_init(dk_stats_options* options);
/* *json_out receives the statistics as a JSON document. */
DK_API dk_status dk_run_stats(const dk_stats_options* options,
                              char** json_out);

typedef struct dk_score_options {
  const char* generated_path;
  const char* references_path;
  const char* external_path;
  const char* output_json;
  const char* output_table;
  size_t threads;
} dk_score_options;

DK_API void dk_score_options_init(dk_score_options* options);
/* Optional outputs: the report as a table, and the overall score (NaN when
 * partial). A partial report is still DK_OK. */
DK_API dk_status dk_run_score(const dk_score_options* options,
                              char** table_out, double* overall);

#ifdef __cplusplus
}
#endif

#endif /* DISCHARGEKIT_DISCHARGEKIT_H_ */
