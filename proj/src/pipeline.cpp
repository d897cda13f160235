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

#include "pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "section_extractor.hpp"
#include "target_cleaner.hpp"

namespace dischargekit {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr size_t kMaxListedIds = 20;

std::string ListIds(const std::vector<std::string>& ids) {
  std::string out;
  for (size_t i = 0; i < ids.size() && i < kMaxListedIds; ++i) {
    if (i > 0) out += ", ";
    out += ids[i];
  }
  if (ids.size() > kMaxListedIds) {
    out += " (+" + std::to_string(ids.size() - kMaxListedIds) + " more)";
  }
  return out;
}

void RequirePath(const std::string& path, const char* what) {
  if (path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " path is required");
  }
}

void RequireTargets(const std::vector<TargetKind>& targets) {
  if (targets.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no target selected");
  }
}

// Canonical form for comparing an output path against the inputs.
fs::path Canonical(const std::string& path) {
  std::error_code ec;
  fs::path p = fs::weakly_canonical(fs::absolute(path), ec);
  return ec ? fs::path(path) : p;
}

void EnsureOutputDir(const std::string& dir) {
  std::error_code ec;
  if (fs::exists(dir, ec) && !fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIo, dir + " exists and is not a directory");
  }
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir + ": " + ec.message());
}

// Inputs are never overwritten, even when an output name collides.
void CheckNotInput(const std::string& output,
                   const std::vector<std::string>& inputs) {
  fs::path out = Canonical(output);
  for (const std::string& in : inputs) {
    if (!in.empty() && Canonical(in) == out) {
      throw Error(ErrorCode::kInvalidArgument,
                  "output " + output + " would overwrite input " + in);
    }
  }
}

std::string JoinPath(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

json TargetList(const std::vector<TargetKind>& targets) {
  json list = json::array();
  for (TargetKind t : targets) list.push_back(std::string(TargetKey(t)));
  return list;
}

json NullableString(const std::string& s) {
  return s.empty() ? json(nullptr) : json(s);
}

json ManifestHead(const char* command) {
  json m;
  m["tool"] = "dischargekit";
  m["version"] = DISCHARGEKIT_VERSION;
  m["command"] = command;
  return m;
}

json SplitJson(const SplitSpec& spec) {
  json s;
  s["fraction"] = spec.FractionString();
  s["seed"] = spec.seed;
  s["permutation"] = "dk-fy64";
  return s;
}

struct NoteResult {
  std::vector<PreparedExample> examples;
  std::array<bool, kInputSectionCount> found{};
};

NoteResult PrepareOne(const DischargeNote& note, const TargetRecord* targets,
                      const std::vector<TargetKind>& selected,
                      const Tokenizer& tokenizer, size_t budget) {
  NoteResult result;
  SectionSet sections = ExtractSections(StripTargets(note.text));
  for (size_t k = 0; k < kInputSectionCount; ++k) {
    result.found[k] = sections.Found(kInputSections[k]);
  }
  for (TargetKind target : selected) {
    PreparedExample ex;
    ex.hadm_id = note.hadm_id;
    ex.target = target;
    ex.input_text = BuildInput(sections, target, tokenizer, budget);
    if (targets) {
      ex.target_text = CleanTarget(targets->Get(target));
    } else if (auto raw = ExtractTarget(note.text, target)) {
      ex.target_text = CleanTarget(*raw);
    }
    result.examples.push_back(std::move(ex));
  }
  return result;
}

// Runs fn over every note, attaching the note id to any module error.
template <typename Result, typename Fn>
std::vector<Result> MapNotes(const std::vector<DischargeNote>& notes,
                             size_t threads, Fn fn) {
  std::vector<Result> results(notes.size());
  ParallelFor(notes.size(), threads, [&](size_t i) {
    try {
      results[i] = fn(notes[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "note " + notes[i].hadm_id + ": " + e.what());
    }
  });
  return results;
}

std::string SummaryKey(TargetKind target, const std::string& hadm_id) {
  return std::string(TargetKey(target)) + ":" + hadm_id;
}

}  // namespace

void ParallelFor(size_t count, size_t threads,
                 const std::function<void(size_t)>& fn) {
  if (count == 0) return;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);

  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex mu;
  size_t failed_index = std::numeric_limits<size_t>::max();
  std::exception_ptr error;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < failed_index) {
          failed_index = i;
          error = std::current_exception();
        }
        failed = true;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

std::vector<PreparedExample> PrepareNote(
    const DischargeNote& note, const TargetRecord* targets,
    const std::vector<TargetKind>& selected, const Tokenizer& tokenizer,
    size_t budget) {
  return PrepareOne(note, targets, selected, tokenizer, budget).examples;
}

PrepareSummary RunPrepare(const PrepareOptions& options) {
  RequirePath(options.notes_path, "notes");
  RequirePath(options.output_dir, "output directory");
  RequireTargets(options.targets);
  if (options.budget == 0) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be positive");
  }
  options.split.Validate();
  Tokenizer tokenizer = options.tokenizer.Build();

  std::vector<DischargeNote> notes =
      LoadNotes(options.notes_path, RecordFormatFromPath(options.notes_path));
  if (notes.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, options.notes_path + " holds no notes");
  }

  std::unordered_map<std::string, TargetRecord> target_index;
  if (!options.targets_path.empty()) {
    for (TargetRecord& r : LoadTargets(options.targets_path,
                                       RecordFormatFromPath(options.targets_path))) {
      std::string id = r.hadm_id;
      target_index.emplace(std::move(id), std::move(r));
    }
    std::vector<std::string> missing;
    for (const DischargeNote& n : notes) {
      if (!target_index.count(n.hadm_id)) missing.push_back(n.hadm_id);
    }
    if (!missing.empty()) {
      throw Error(ErrorCode::kAlignment,
                  "notes without a target record: " + ListIds(missing));
    }
  }

  std::vector<std::pair<TargetKind, bool>> outputs;  // (target, is_train)
  std::vector<std::string> paths;
  for (TargetKind t : options.targets) {
    for (bool train : {true, false}) {
      outputs.emplace_back(t, train);
      paths.push_back(JoinPath(options.output_dir,
                               std::string(TargetKey(t)) +
                                   (train ? "_train.jsonl" : "_validation.jsonl")));
    }
  }
  std::string manifest_path = JoinPath(options.output_dir, "manifest.json");
  for (const std::string& p : paths) {
    CheckNotInput(p, {options.notes_path, options.targets_path, options.tokenizer.vocab_path});
  }
  CheckNotInput(manifest_path, {options.notes_path, options.targets_path, options.tokenizer.vocab_path});

  SplitResult split = SplitDataset(notes, options.split);
  std::unordered_set<std::string> train_ids;
  for (const DischargeNote& n : split.train) train_ids.insert(n.hadm_id);

  std::vector<NoteResult> results = MapNotes<NoteResult>(
      notes, options.threads, [&](const DischargeNote& note) {
        const TargetRecord* rec = nullptr;
        if (!target_index.empty()) rec = &target_index.at(note.hadm_id);
        return PrepareOne(note, rec, options.targets, tokenizer, options.budget);
      });

  EnsureOutputDir(options.output_dir);
  PrepareSummary summary;
  summary.notes = notes.size();
  summary.train_notes = split.train.size();
  summary.validation_notes = split.validation.size();

  json files = json::object();
  std::map<TargetKind, size_t> empty_targets;
  for (size_t o = 0; o < outputs.size(); ++o) {
    auto [target, train] = outputs[o];
    std::vector<PreparedExample> examples;
    for (size_t i = 0; i < notes.size(); ++i) {
      if (train_ids.count(notes[i].hadm_id) != static_cast<size_t>(train)) continue;
      for (const PreparedExample& ex : results[i].examples) {
        if (ex.target != target) continue;
        if (ex.target_text.empty()) ++empty_targets[target];
        examples.push_back(ex);
      }
    }
    WritePrepared(paths[o], examples);
    summary.files.push_back(paths[o]);
    files[fs::path(paths[o]).filename().string()] = examples.size();
  }

  json manifest = ManifestHead("prepare");
  json config;
  config["notes"] = options.notes_path;
  config["targets_file"] = NullableString(options.targets_path);
  config["output_dir"] = options.output_dir;
  config["targets"] = TargetList(options.targets);
  config["tokenizer"] = tokenizer.Label();
  config["vocab"] = NullableString(options.tokenizer.vocab_path);
  config["budget"] = options.budget;
  config["split"] = SplitJson(options.split);
  manifest["config"] = config;

  json counts;
  counts["notes"] = notes.size();
  counts["train"] = split.train.size();
  counts["validation"] = split.validation.size();
  json empties = json::object();
  for (TargetKind t : options.targets) empties[std::string(TargetKey(t))] = empty_targets[t];
  counts["empty_targets"] = empties;
  manifest["counts"] = counts;
  manifest["files"] = files;

  json hits = json::object();
  for (size_t k = 0; k < kInputSectionCount; ++k) {
    size_t found = 0;
    for (const NoteResult& r : results) found += r.found[k] ? 1 : 0;
    json h;
    h["found"] = found;
    h["rate"] = static_cast<double>(found) / static_cast<double>(notes.size());
    hits[std::string(SectionName(kInputSections[k]))] = h;
  }
  manifest["section_hit_rates"] = hits;

  WriteFile(manifest_path, manifest.dump(2) + "\n");
  summary.files.push_back(manifest_path);
  return summary;
}

SplitResult RunSplit(const SplitOptions& options) {
  RequirePath(options.notes_path, "notes");
  RequirePath(options.output_dir, "output directory");
  options.split.Validate();
  std::vector<DischargeNote> notes =
      LoadNotes(options.notes_path, RecordFormatFromPath(options.notes_path));
  std::string train_path = JoinPath(options.output_dir, "train.jsonl");
  std::string validation_path = JoinPath(options.output_dir, "validation.jsonl");
  std::string manifest_path = JoinPath(options.output_dir, "manifest.json");
  for (const std::string& p : {train_path, validation_path, manifest_path}) {
    CheckNotInput(p, {options.notes_path});
  }
  SplitResult split = SplitDataset(notes, options.split);

  EnsureOutputDir(options.output_dir);
  WriteNotesJsonl(train_path, split.train);
  WriteNotesJsonl(validation_path, split.validation);

  json manifest = ManifestHead("split");
  json config;
  config["notes"] = options.notes_path;
  config["output_dir"] = options.output_dir;
  config["split"] = SplitJson(options.split);
  manifest["config"] = config;
  json counts;
  counts["notes"] = notes.size();
  counts["train"] = split.train.size();
  counts["validation"] = split.validation.size();
  manifest["counts"] = counts;
  WriteFile(manifest_path, manifest.dump(2) + "\n");
  return split;
}

std::vector<SummaryRecord> RunCleanTargets(const CleanTargetsOptions& options) {
  RequirePath(options.targets_path, "targets");
  RequirePath(options.output_path, "output");
  RequireTargets(options.targets);
  CheckNotInput(options.output_path, {options.targets_path});
  std::vector<TargetRecord> records =
      LoadTargets(options.targets_path, RecordFormatFromPath(options.targets_path));
  std::vector<SummaryRecord> out;
  for (const TargetRecord& r : records) {
    for (TargetKind t : options.targets) {
      out.push_back({r.hadm_id, t, CleanTarget(r.Get(t))});
    }
  }
  WriteSummaries(options.output_path, out);
  return out;
}

LengthStats RunStats(const StatsOptions& options) {
  if (options.notes_path.empty() == options.prepared_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "give exactly one of a notes file and a prepared file");
  }
  if (options.bucket_width == 0) {
    throw Error(ErrorCode::kInvalidArgument, "bucket width must be positive");
  }
  Tokenizer tokenizer = options.tokenizer.Build();
  std::vector<std::string> texts;
  if (!options.prepared_path.empty()) {
    for (PreparedExample& ex : ReadPrepared(options.prepared_path)) {
      if (ex.target != options.target) continue;
      texts.push_back(std::move(options.field == StatsField::kInput ? ex.input_text
                                                                    : ex.target_text));
    }
  } else {
    std::vector<DischargeNote> notes =
        LoadNotes(options.notes_path, RecordFormatFromPath(options.notes_path));
    const std::vector<TargetKind> selected = {options.target};
    texts = MapNotes<std::string>(notes, options.threads, [&](const DischargeNote& n) {
      PreparedExample ex = PrepareOne(n, nullptr, selected, tokenizer,
                                      std::numeric_limits<size_t>::max())
                               .examples.front();
      return options.field == StatsField::kInput ? ex.input_text : ex.target_text;
    });
  }
  std::vector<size_t> lengths(texts.size());
  ParallelFor(texts.size(), options.threads,
              [&](size_t i) { lengths[i] = tokenizer.Count(texts[i]); });
  return ComputeLengthStats(lengths, options.bucket_width);
}

std::string LengthStatsJson(const LengthStats& stats) {
  json j;
  j["count"] = stats.count;
  j["min"] = stats.min;
  j["max"] = stats.max;
  j["total"] = stats.total;
  j["mean"] = stats.mean;
  j["mean_rounded"] = stats.MeanRounded();
  j["bucket_width"] = stats.bucket_width;
  json hist = json::array();
  for (auto [lower, count] : stats.histogram) hist.push_back(json::array({lower, count}));
  j["histogram"] = hist;
  return j.dump(2) + "\n";
}

ScoreReport ScoreSummaries(const std::vector<SummaryRecord>& generated,
                           const std::vector<SummaryRecord>& references,
                           const std::vector<ExternalScore>& external,
                           size_t threads) {
  auto index = [](const std::vector<SummaryRecord>& records, const char* what) {
    std::unordered_map<std::string, size_t> by_key;
    for (size_t i = 0; i < records.size(); ++i) {
      std::string key = SummaryKey(records[i].target, records[i].hadm_id);
      if (!by_key.emplace(key, i).second) {
        throw Error(ErrorCode::kDuplicateId,
                    std::string(what) + " repeats " + key);
      }
    }
    return by_key;
  };
  auto gen_index = index(generated, "generated file");
  auto ref_index = index(references, "reference file");

  std::vector<std::string> only_generated, only_reference;
  for (const SummaryRecord& r : generated) {
    std::string key = SummaryKey(r.target, r.hadm_id);
    if (!ref_index.count(key)) only_generated.push_back(key);
  }
  for (const SummaryRecord& r : references) {
    std::string key = SummaryKey(r.target, r.hadm_id);
    if (!gen_index.count(key)) only_reference.push_back(key);
  }
  if (!only_generated.empty() || !only_reference.empty()) {
    std::string msg = "generated and reference summaries do not align";
    if (!only_generated.empty()) msg += "; only generated: " + ListIds(only_generated);
    if (!only_reference.empty()) msg += "; only reference: " + ListIds(only_reference);
    throw Error(ErrorCode::kAlignment, msg);
  }

  std::vector<PairScores> scores(generated.size());
  ParallelFor(generated.size(), threads, [&](size_t i) {
    const SummaryRecord& g = generated[i];
    const SummaryRecord& r = references[ref_index.at(SummaryKey(g.target, g.hadm_id))];
    scores[i] = ScorePair(g.text, r.text);
  });

  auto report_for = [&](TargetKind target) {
    std::vector<PairScores> pairs;
    for (size_t i = 0; i < generated.size(); ++i) {
      if (generated[i].target == target) pairs.push_back(scores[i]);
    }
    if (pairs.empty()) {
      MetricReport empty;
      empty.target = target;
      return empty;
    }
    return ReduceScores(target, pairs);
  };
  return Aggregate(report_for(TargetKind::kBriefHospitalCourse),
                   report_for(TargetKind::kDischargeInstructions), external);
}

ScoreReport RunScore(const ScoreOptions& options) {
  RequirePath(options.generated_path, "generated");
  RequirePath(options.references_path, "references");
  std::vector<std::string> inputs = {options.generated_path, options.references_path,
                                     options.external_path};
  if (!options.output_json.empty()) CheckNotInput(options.output_json, inputs);
  if (!options.output_table.empty()) CheckNotInput(options.output_table, inputs);

  std::vector<SummaryRecord> generated = ReadSummaries(options.generated_path);
  std::vector<SummaryRecord> references = ReadSummaries(options.references_path);
  std::vector<ExternalScore> external;
  if (!options.external_path.empty()) external = LoadExternalScores(options.external_path);

  ScoreReport report = ScoreSummaries(generated, references, external, options.threads);
  if (!options.output_json.empty()) WriteFile(options.output_json, ScoreReportJson(report));
  if (!options.output_table.empty()) WriteFile(options.output_table, ScoreReportTable(report));
  return report;
}

}  // namespace dischargekit
