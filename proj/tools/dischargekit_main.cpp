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

// Command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "dischargekit/dischargekit.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

const std::map<std::string, unsigned> kTargetSets = {
    {"both", DK_TARGETS_BOTH}, {"bhc", DK_TARGETS_BHC}, {"di", DK_TARGETS_DI}};
const std::map<std::string, dk_target> kTargets = {{"bhc", DK_TARGET_BHC},
                                                    {"di", DK_TARGET_DI}};
const std::map<std::string, dk_tokenizer_mode> kModes = {
    {"whitespace", DK_TOKENIZER_WHITESPACE}, {"subword", DK_TOKENIZER_SUBWORD}};
const std::map<std::string, dk_stats_field> kFields = {{"input", DK_FIELD_INPUT},
                                                        {"target", DK_FIELD_TARGET}};

const char* OrNull(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

int Report(const char* command, dk_status status) {
  if (status == DK_OK) return 0;
  std::fprintf(stderr, "dischargekit %s: %s: %s\n", command, dk_status_name(status),
               dk_last_error());
  return status == DK_ERR_INVALID_ARGUMENT ? kExitUsage : kExitData;
}

struct TokenizerFlags {
  std::string mode = "whitespace";
  std::string vocab;

  void Attach(CLI::App* cmd) {
    cmd->add_option("--tokenizer", mode, "Token counting mode")
        ->transform(CLI::IsMember({"whitespace", "subword"}))
        ->capture_default_str();
    cmd->add_option("--vocab", vocab,
                    "Subword vocabulary, one piece per line (subword mode)");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discharge-note preparation and summary scoring"};
  app.set_version_flag("--version", std::string(dk_version()));
  app.require_subcommand(1);

  // prepare
  auto* prepare = app.add_subcommand(
      "prepare", "Build (input, target) example files from raw notes");
  std::string notes, targets_file, output_dir, target_set = "both";
  std::string fraction = "4/5";
  uint64_t seed = 0;
  size_t budget = DK_DEFAULT_BUDGET, threads = 0;
  TokenizerFlags prepare_tok;
  prepare->add_option("--notes", notes, "Notes file (.csv or .jsonl)")->required();
  prepare->add_option("--targets-file", targets_file,
                      "Reference table with brief_hospital_course and "
                      "discharge_instructions columns");
  prepare->add_option("--output-dir", output_dir, "Directory for the outputs")->required();
  prepare->add_option("--targets", target_set, "Targets to prepare")
      ->transform(CLI::IsMember({"both", "bhc", "di"}))
      ->capture_default_str();
  prepare_tok.Attach(prepare);
  prepare->add_option("--budget", budget, "Input token budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  prepare->add_option("--fraction", fraction, "Training fraction, e.g. 4/5 or 0.8")
      ->capture_default_str();
  prepare->add_option("--seed", seed, "Split seed")->capture_default_str();
  prepare->add_option("--threads", threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  // split
  auto* split = app.add_subcommand("split", "Partition notes into train and validation");
  std::string split_notes, split_dir, split_fraction = "4/5";
  uint64_t split_seed = 0;
  split->add_option("--notes", split_notes, "Notes file (.csv or .jsonl)")->required();
  split->add_option("--output-dir", split_dir, "Directory for the outputs")->required();
  split->add_option("--fraction", split_fraction, "Training fraction")->capture_default_str();
  split->add_option("--seed", split_seed, "Split seed")->capture_default_str();

  // clean-targets
  auto* clean = app.add_subcommand(
      "clean-targets", "Clean reference summaries into a summary JSONL file");
  std::string clean_in, clean_out, clean_set = "both";
  clean->add_option("--targets-file", clean_in, "Reference table (.csv or .jsonl)")
      ->required();
  clean->add_option("--output", clean_out, "Output JSONL")->required();
  clean->add_option("--targets", clean_set, "Targets to clean")
      ->transform(CLI::IsMember({"both", "bhc", "di"}))
      ->capture_default_str();

  // stats
  auto* stats = app.add_subcommand("stats", "Token length statistics");
  std::string stats_notes, stats_prepared, stats_target = "bhc", stats_field = "input";
  std::string stats_out;
  size_t bucket_width = 100, stats_threads = 0;
  TokenizerFlags stats_tok;
  auto* notes_opt = stats->add_option("--notes", stats_notes,
                                      "Notes file; inputs are assembled without a budget");
  auto* prepared_opt = stats->add_option("--prepared", stats_prepared, "Prepared JSONL file");
  notes_opt->excludes(prepared_opt);
  stats->add_option("--target", stats_target, "Target")
      ->transform(CLI::IsMember({"bhc", "di"}))
      ->capture_default_str();
  stats->add_option("--field", stats_field, "Text to measure")
      ->transform(CLI::IsMember({"input", "target"}))
      ->capture_default_str();
  stats_tok.Attach(stats);
  stats->add_option("--bucket-width", bucket_width, "Histogram bucket width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  stats->add_option("--output", stats_out, "Write JSON here instead of stdout");
  stats->add_option("--threads", stats_threads, "Worker threads (0 = all cores)");

  // score
  auto* score = app.add_subcommand("score", "Score generated summaries against references");
  std::string generated, references, external, report_json, report_table;
  size_t score_threads = 0;
  score->add_option("--generated", generated, "Generated summaries JSONL")->required();
  score->add_option("--references", references,
                    "Reference summaries JSONL (summary or prepared layout)")
      ->required();
  score->add_option("--external", external,
                    "JSONL of {target, metric, value} scores merged over computed ones");
  score->add_option("--output", report_json, "Report JSON path");
  score->add_option("--table", report_table, "Report table path");
  score->add_option("--threads", score_threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*prepare) {
    dk_prepare_options o;
    dk_prepare_options_init(&o);
    o.notes_path = notes.c_str();
    o.targets_path = OrNull(targets_file);
    o.output_dir = output_dir.c_str();
    o.targets = kTargetSets.at(target_set);
    o.tokenizer_mode = kModes.at(prepare_tok.mode);
    o.vocab_path = OrNull(prepare_tok.vocab);
    o.budget = budget;
    o.fraction = fraction.c_str();
    o.seed = seed;
    o.threads = threads;
    dk_prepare_summary s;
    dk_status st = dk_run_prepare(&o, &s);
    if (st != DK_OK) return Report("prepare", st);
    std::fprintf(stderr, "prepare: %zu notes, %zu train, %zu validation -> %s\n", s.notes,
                 s.train_notes, s.validation_notes, output_dir.c_str());
    return 0;
  }

  if (*split) {
    dk_split_options o;
    dk_split_options_init(&o);
    o.notes_path = split_notes.c_str();
    o.output_dir = split_dir.c_str();
    o.fraction = split_fraction.c_str();
    o.seed = split_seed;
    size_t train = 0, validation = 0;
    dk_status st = dk_run_split(&o, &train, &validation);
    if (st != DK_OK) return Report("split", st);
    std::fprintf(stderr, "split: %zu train, %zu validation -> %s\n", train, validation,
                 split_dir.c_str());
    return 0;
  }

  if (*clean) {
    dk_clean_targets_options o;
    dk_clean_targets_options_init(&o);
    o.targets_path = clean_in.c_str();
    o.output_path = clean_out.c_str();
    o.targets = kTargetSets.at(clean_set);
    size_t records = 0;
    dk_status st = dk_run_clean_targets(&o, &records);
    if (st != DK_OK) return Report("clean-targets", st);
    std::fprintf(stderr, "clean-targets: %zu records -> %s\n", records, clean_out.c_str());
    return 0;
  }

  if (*stats) {
    dk_stats_options o;
    dk_stats_options_init(&o);
    o.notes_path = OrNull(stats_notes);
    o.prepared_path = OrNull(stats_prepared);
    o.target = kTargets.at(stats_target);
    o.field = kFields.at(stats_field);
    o.tokenizer_mode = kModes.at(stats_tok.mode);
    o.vocab_path = OrNull(stats_tok.vocab);
    o.bucket_width = bucket_width;
    o.threads = stats_threads;
    char* json = nullptr;
    dk_status st = dk_run_stats(&o, &json);
    if (st != DK_OK) return Report("stats", st);
    int rc = 0;
    if (stats_out.empty()) {
      std::fputs(json, stdout);
    } else if (std::FILE* f = std::fopen(stats_out.c_str(), "wb")) {
      std::fputs(json, f);
      std::fclose(f);
    } else {
      std::fprintf(stderr, "dischargekit stats: cannot write %s\n", stats_out.c_str());
      rc = kExitData;
    }
    dk_string_free(json);
    return rc;
  }

  if (*score) {
    dk_score_options o;
    dk_score_options_init(&o);
    o.generated_path = generated.c_str();
    o.references_path = references.c_str();
    o.external_path = OrNull(external);
    o.output_json = OrNull(report_json);
    o.output_table = OrNull(report_table);
    o.threads = score_threads;
    char* table = nullptr;
    double overall = 0.0;
    dk_status st = dk_run_score(&o, &table, &overall);
    if (st != DK_OK) return Report("score", st);
    std::fputs(table, stdout);
    dk_string_free(table);
    if (std::isnan(overall)) std::fprintf(stderr, "score: overall is partial\n");
    return 0;
  }
  return kExitUsage;
}
