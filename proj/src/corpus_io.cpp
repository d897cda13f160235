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

#include "corpus_io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "csv_reader.hpp"
#include "json.hpp"
#include "text_util.hpp"

namespace dischargekit {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string RecordMessage(size_t index, const std::string& what) {
  return "record " + std::to_string(index) + ": " + what;
}

// Non-empty lines of a JSONL document, each parsed as an object.
std::vector<json> ParseJsonLines(std::string_view data) {
  std::vector<json> out;
  for (std::string_view line : text::SplitLines(data)) {
    if (text::Trim(line).empty()) continue;
    json value;
    try {
      value = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kMalformedRecord,
                  RecordMessage(out.size(), e.what()));
    }
    if (!value.is_object()) {
      throw Error(ErrorCode::kMalformedRecord,
                  RecordMessage(out.size(), "not a JSON object"));
    }
    out.push_back(std::move(value));
  }
  return out;
}

// Identifiers may arrive as JSON numbers; text fields must be strings.
std::string FieldAsString(const json& record, const char* key, size_t index,
                          bool allow_number) {
  auto it = record.find(key);
  if (it == record.end()) {
    throw Error(ErrorCode::kMissingColumn,
                RecordMessage(index, std::string("missing key '") + key + "'"));
  }
  if (it->is_string()) return it->get<std::string>();
  if (allow_number && it->is_number_integer()) return it->dump();
  throw Error(ErrorCode::kMalformedRecord,
              RecordMessage(index, std::string("key '") + key +
                                       "' has the wrong type"));
}

int RequireColumn(const CsvTable& table, const char* name) {
  int idx = table.ColumnIndex(name);
  if (idx < 0) {
    throw Error(ErrorCode::kMissingColumn,
                std::string("missing column '") + name + "'");
  }
  return idx;
}

std::string DumpLine(const json& value) {
  try {
    return value.dump() + "\n";
  } catch (const json::type_error& e) {
    throw Error(ErrorCode::kMalformedRecord,
                std::string("cannot serialize record: ") + e.what());
  }
}

}  // namespace

RecordFormat RecordFormatFromPath(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".csv") return RecordFormat::kCsv;
  if (ext == ".jsonl" || ext == ".json") return RecordFormat::kJsonl;
  throw Error(ErrorCode::kInvalidArgument,
              "cannot infer format of '" + path + "' (expected .csv or .jsonl)");
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorCode::kIo, "short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    throw Error(ErrorCode::kIo,
                "cannot move '" + tmp.string() + "' to '" + path +
                    "': " + ec.message());
  }
}

std::vector<DischargeNote> ParseNotes(std::string_view data,
                                      RecordFormat format) {
  std::vector<DischargeNote> notes;
  if (format == RecordFormat::kCsv) {
    CsvTable table = CsvTable::Parse(data);
    if (table.header().empty()) return notes;
    int hadm = RequireColumn(table, "hadm_id");
    int note = RequireColumn(table, "note_id");
    int body = RequireColumn(table, "text");
    for (const auto& row : table.rows()) {
      notes.push_back({row[hadm], row[note], row[body]});
    }
  } else {
    std::vector<json> records = ParseJsonLines(data);
    for (size_t i = 0; i < records.size(); ++i) {
      notes.push_back({FieldAsString(records[i], "hadm_id", i, true),
                       FieldAsString(records[i], "note_id", i, true),
                       FieldAsString(records[i], "text", i, false)});
    }
  }

  std::unordered_set<std::string_view> seen;
  for (size_t i = 0; i < notes.size(); ++i) {
    if (text::Trim(notes[i].text).empty()) {
      throw Error(ErrorCode::kMalformedRecord,
                  RecordMessage(i, "empty note text"));
    }
    if (!seen.insert(notes[i].hadm_id).second) {
      throw Error(ErrorCode::kDuplicateId,
                  RecordMessage(i, "duplicate hadm_id '" + notes[i].hadm_id + "'"));
    }
  }
  return notes;
}

std::vector<DischargeNote> LoadNotes(const std::string& path,
                                     RecordFormat format) {
  return ParseNotes(ReadFile(path), format);
}

void WriteNotesJsonl(const std::string& path,
                     const std::vector<DischargeNote>& notes) {
  std::string out;
  for (const auto& n : notes) {
    json rec;
    rec["hadm_id"] = n.hadm_id;
    rec["note_id"] = n.note_id;
    rec["text"] = n.text;
    out += DumpLine(rec);
  }
  WriteFile(path, out);
}

std::vector<TargetRecord> ParseTargets(std::string_view data,
                                       RecordFormat format) {
  std::vector<TargetRecord> targets;
  if (format == RecordFormat::kCsv) {
    CsvTable table = CsvTable::Parse(data);
    if (table.header().empty()) return targets;
    int hadm = RequireColumn(table, "hadm_id");
    int bhc = RequireColumn(table, "brief_hospital_course");
    int di = RequireColumn(table, "discharge_instructions");
    for (const auto& row : table.rows()) {
      targets.push_back({row[hadm], row[bhc], row[di]});
    }
  } else {
    std::vector<json> records = ParseJsonLines(data);
    for (size_t i = 0; i < records.size(); ++i) {
      targets.push_back(
          {FieldAsString(records[i], "hadm_id", i, true),
           FieldAsString(records[i], "brief_hospital_course", i, false),
           FieldAsString(records[i], "discharge_instructions", i, false)});
    }
  }
  std::unordered_set<std::string_view> seen;
  for (size_t i = 0; i < targets.size(); ++i) {
    if (!seen.insert(targets[i].hadm_id).second) {
      throw Error(ErrorCode::kDuplicateId,
                  RecordMessage(i, "duplicate hadm_id '" + targets[i].hadm_id + "'"));
    }
  }
  return targets;
}

std::vector<TargetRecord> LoadTargets(const std::string& path,
                                      RecordFormat format) {
  return ParseTargets(ReadFile(path), format);
}

void SplitSpec::Validate() const {
  if (train_denominator == 0 || train_numerator == 0 ||
      train_numerator >= train_denominator) {
    throw Error(ErrorCode::kInvalidArgument,
                "train fraction must lie strictly between 0 and 1, got " +
                    FractionString());
  }
}

std::string SplitSpec::FractionString() const {
  return std::to_string(train_numerator) + "/" +
         std::to_string(train_denominator);
}

SplitSpec ParseFraction(std::string_view s, uint64_t seed) {
  SplitSpec spec;
  spec.seed = seed;
  auto parse_uint = [&](std::string_view digits) -> uint64_t {
    if (digits.empty() || digits.size() > 9 ||
        !std::all_of(digits.begin(), digits.end(), text::IsDigit)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bad train fraction '" + std::string(s) + "'");
    }
    return std::stoull(std::string(digits));
  };
  if (size_t slash = s.find('/'); slash != std::string_view::npos) {
    spec.train_numerator = parse_uint(s.substr(0, slash));
    spec.train_denominator = parse_uint(s.substr(slash + 1));
  } else if (size_t dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (!whole.empty() && parse_uint(whole) != 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "train fraction must lie strictly between 0 and 1");
    }
    spec.train_numerator = parse_uint(frac);
    spec.train_denominator = 1;
    for (size_t i = 0; i < frac.size(); ++i) spec.train_denominator *= 10;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "bad train fraction '" + std::string(s) + "'");
  }
  spec.Validate();
  return spec;
}

uint64_t UniformBelow(uint64_t bound, std::mt19937_64& engine) {
  // 2^64 mod bound; draws below it would bias the modulo.
  const uint64_t threshold = (0 - bound) % bound;
  while (true) {
    uint64_t r = engine();
    if (r >= threshold) return r % bound;
  }
}

uint64_t TrainCount(uint64_t n, const SplitSpec& spec) {
  // round_half_up(n * num / den) in integers.
  return (2 * n * spec.train_numerator + spec.train_denominator) /
         (2 * spec.train_denominator);
}

SplitResult SplitDataset(const std::vector<DischargeNote>& notes,
                         const SplitSpec& spec) {
  spec.Validate();
  if (notes.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot split an empty corpus");
  }
  std::vector<std::string_view> ids;
  ids.reserve(notes.size());
  for (const auto& n : notes) ids.push_back(n.hadm_id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw Error(ErrorCode::kDuplicateId, "duplicate hadm_id in split input");
  }

  std::mt19937_64 engine(spec.seed);
  for (size_t i = ids.size() - 1; i > 0; --i) {
    size_t j = UniformBelow(i + 1, engine);
    std::swap(ids[i], ids[j]);
  }
  const uint64_t n_train = TrainCount(ids.size(), spec);
  std::unordered_set<std::string_view> train_ids(ids.begin(),
                                                 ids.begin() + n_train);

  SplitResult result;
  for (const auto& n : notes) {
    (train_ids.contains(n.hadm_id) ? result.train : result.validation)
        .push_back(n);
  }
  return result;
}

long LengthStats::MeanRounded() const { return std::lround(mean); }

LengthStats ComputeLengthStats(const std::vector<size_t>& lengths,
                               size_t bucket_width) {
  if (lengths.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no texts to measure");
  }
  if (bucket_width == 0) {
    throw Error(ErrorCode::kInvalidArgument, "bucket width must be positive");
  }
  LengthStats stats;
  stats.count = lengths.size();
  stats.bucket_width = bucket_width;
  auto [lo, hi] = std::minmax_element(lengths.begin(), lengths.end());
  stats.min = *lo;
  stats.max = *hi;
  for (size_t len : lengths) stats.total += len;
  stats.mean = static_cast<double>(stats.total) / static_cast<double>(stats.count);

  const size_t first = stats.min / bucket_width;
  const size_t last = stats.max / bucket_width;
  stats.histogram.reserve(last - first + 1);
  for (size_t b = first; b <= last; ++b) stats.histogram.emplace_back(b * bucket_width, 0);
  for (size_t len : lengths) stats.histogram[len / bucket_width - first].second++;
  return stats;
}

LengthStats CorpusStats(const std::vector<std::string>& texts,
                        const Tokenizer& tokenizer, size_t bucket_width) {
  std::vector<size_t> lengths;
  lengths.reserve(texts.size());
  for (const auto& t : texts) lengths.push_back(tokenizer.Count(t));
  return ComputeLengthStats(lengths, bucket_width);
}

std::string SerializePrepared(const std::vector<PreparedExample>& examples) {
  std::string out;
  for (const auto& ex : examples) {
    json rec;
    rec["hadm_id"] = ex.hadm_id;
    rec["target"] = TargetKey(ex.target);
    rec["input_text"] = ex.input_text;
    rec["target_text"] = ex.target_text;
    out += DumpLine(rec);
  }
  return out;
}

void WritePrepared(const std::string& path,
                   const std::vector<PreparedExample>& examples) {
  WriteFile(path, SerializePrepared(examples));
}

namespace {

TargetKind TargetField(const json& record, size_t index) {
  std::string key = FieldAsString(record, "target", index, false);
  auto target = ParseTargetKey(key);
  if (!target) {
    throw Error(ErrorCode::kMalformedRecord,
                RecordMessage(index, "unknown target '" + key + "'"));
  }
  return *target;
}

}  // namespace

std::vector<PreparedExample> ParsePrepared(std::string_view data) {
  std::vector<PreparedExample> out;
  std::vector<json> records = ParseJsonLines(data);
  for (size_t i = 0; i < records.size(); ++i) {
    out.push_back({FieldAsString(records[i], "hadm_id", i, true),
                   TargetField(records[i], i),
                   FieldAsString(records[i], "input_text", i, false),
                   FieldAsString(records[i], "target_text", i, false)});
  }
  return out;
}

std::vector<PreparedExample> ReadPrepared(const std::string& path) {
  return ParsePrepared(ReadFile(path));
}

void WriteSummaries(const std::string& path,
                    const std::vector<SummaryRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    json rec;
    rec["hadm_id"] = r.hadm_id;
    rec["target"] = TargetKey(r.target);
    rec["text"] = r.text;
    out += DumpLine(rec);
  }
  WriteFile(path, out);
}

std::vector<SummaryRecord> ParseSummaries(std::string_view data) {
  std::vector<SummaryRecord> out;
  std::vector<json> records = ParseJsonLines(data);
  for (size_t i = 0; i < records.size(); ++i) {
    const char* text_key = records[i].contains("text") ? "text" : "target_text";
    out.push_back({FieldAsString(records[i], "hadm_id", i, true),
                   TargetField(records[i], i),
                   FieldAsString(records[i], text_key, i, false)});
  }
  return out;
}

std::vector<SummaryRecord> ReadSummaries(const std::string& path) {
  return ParseSummaries(ReadFile(path));
}

}  // namespace dischargekit
