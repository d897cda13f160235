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


// Acceptance gate. Prints one PASS or FAIL line per criterion and exits
// non-zero when any criterion fails. Tolerances are fixed here and nowhere
// else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "corpus_io.hpp"
#include "csv_reader.hpp"
#include "input_builder.hpp"
#include "metrics.hpp"
#include "oracles.hpp"
#include "pipeline.hpp"
#include "section_extractor.hpp"
#include "target_cleaner.hpp"
#include "test_support.hpp"
#include "text_util.hpp"

using namespace dischargekit;

namespace {

constexpr double kOverallTolerance = 0.001;
constexpr int kIdempotenceInputs = 1000;
constexpr int kMetricPairs = 10000;
constexpr size_t kMaxSequenceLength = 8;

// Accumulates the first few failure reasons of a criterion.
class Verdict {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (reasons_.size() < 3) reasons_.push_back(what);
  }
  void Note(const std::string& s) { notes_ = s; }
  bool ok() const { return failures_ == 0 && checks_ > 0; }
  std::string Detail() const {
    std::string d = std::to_string(checks_) + " checks";
    if (!notes_.empty()) d += ", " + notes_;
    for (const auto& r : reasons_) d += "; " + r;
    return d;
  }

 private:
  size_t checks_ = 0;
  size_t failures_ = 0;
  std::string notes_;
  std::vector<std::string> reasons_;
};

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Each leaderboard row's eight values, used as per-metric overalls, must
// give back the published overall.
void AggregationFidelity(Verdict& v) {
  CsvTable table = CsvTable::Parse(dktest::ReadFixture("leaderboard.csv"));
  double worst = 0.0;
  for (const auto& row : table.rows()) {
    MetricReport bhc, di;
    for (Metric m : kAllMetrics) {
      double value = std::stod(row[table.ColumnIndex(MetricKey(m))]);
      bhc.Set(m, value);
      di.Set(m, value);
    }
    double want = std::stod(row[table.ColumnIndex("overall")]);
    double got = Aggregate(bhc, di).RequireOverall();
    worst = std::max(worst, std::abs(got - want));
    v.Expect(std::abs(got - want) <= kOverallTolerance,
             "rank " + row[0] + ": " + Fmt(got) + " vs " + Fmt(want));
  }
  v.Expect(table.rows().size() == 17, "expected 17 rows");
  v.Note(std::to_string(table.rows().size()) + " rows, max |diff| " + Fmt(worst));
}

void GoldenCleaning(Verdict& v) {
  for (const char* name : {"bhc", "di"}) {
    std::string raw = dktest::ReadFixture(std::string(name) + "_raw.txt");
    std::string want = dktest::ReadFixture(std::string(name) + "_cleaned.txt");
    std::string got = CleanTarget(raw);
    v.Expect(text::CollapseWhitespace(got) == text::CollapseWhitespace(want),
             std::string(name) + " word sequence differs");
  }
}

std::vector<std::string> SplitSegments(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t pos; (pos = s.find(kSeparator, start)) != std::string::npos;
       start = pos + kSeparator.size()) {
    out.push_back(s.substr(start, pos - start));
  }
  out.push_back(s.substr(start));
  return out;
}

// The worked examples phrase the Service prompt as "are provided as
// follows:"; the prompt table uses "are as follows:".
constexpr std::string_view kServiceVariant = "The service details are provided as follows:";

void AssemblyFixtures(Verdict& v) {
  struct Case {
    const char* file;
    TargetKind target;
    size_t segments;
  };
  for (const Case& c : {Case{"bhc_input.txt", TargetKind::kBriefHospitalCourse, 9},
                        Case{"di_input.txt", TargetKind::kDischargeInstructions, 13}}) {
    std::string expected = dktest::ReadFixture(c.file);
    while (!expected.empty() && text::IsSpace(expected.back())) expected.pop_back();
    std::vector<std::string> segments = SplitSegments(expected);
    v.Expect(segments.size() == c.segments, std::string(c.file) + ": segment count " +
                                                std::to_string(segments.size()));

    // Recover each section body from its segment, dropping the terminal
    // period so the builder has to restore it.
    SectionSet sections;
    std::vector<SectionKind> order;
    for (std::string& seg : segments) {
      if (seg.starts_with(kServiceVariant)) {
        seg = std::string(PromptFor(SectionKind::kService)) + seg.substr(kServiceVariant.size());
      }
      std::optional<SectionKind> kind;
      for (const PromptSpec& p : PromptTable()) {
        if (seg.starts_with(std::string(p.prompt) + " ")) kind = p.kind;
      }
      if (!kind) {
        v.Expect(false, std::string(c.file) + ": unknown prompt in '" + seg.substr(0, 40) + "'");
        continue;
      }
      order.push_back(*kind);
      std::string body = seg.substr(PromptFor(*kind).size() + 1);
      if (body.ends_with(".")) body.pop_back();
      sections.Set(*kind, body);
    }
    v.Expect(order == PrioritiesFor(c.target), std::string(c.file) + ": segment order");

    std::string rebuilt = text::ReplaceAll(expected, kServiceVariant,
                                           PromptFor(SectionKind::kService));
    std::string got = BuildInput(sections, c.target, Tokenizer::Whitespace());
    v.Expect(text::CollapseWhitespace(got) == text::CollapseWhitespace(rebuilt),
             std::string(c.file) + ": assembled text differs");
  }
}

void NormalizationRules(Verdict& v) {
  auto expect_eq = [&](const std::string& got, const std::string& want, const char* rule) {
    v.Expect(got == want, std::string(rule) + ": got '" + got + "'");
  };
  expect_eq(NormalizeSection(SectionKind::kSex, " M "), "Male", "sex M");
  expect_eq(NormalizeSection(SectionKind::kSex, "F"), "Female", "sex F");
  expect_eq(ExtractSections("Date of Birth:  ___   Sex:   F\n").Get(SectionKind::kSex),
            "Female", "sex in layout row");

  SectionSet empty = ExtractSections("Free text without any headers.\n");
  for (SectionKind kind : kInputSections) {
    expect_eq(empty.Get(kind), "Unknown", "unknown default");
  }
  expect_eq(ExtractSections("Allergies:\n \nChief Complaint: cough\n").Get(SectionKind::kAllergies),
            "Unknown", "empty section");

  expect_eq(NormalizeSection(SectionKind::kDischargeCondition,
                             "Mental Status: Clear and coherent.\n"
                             "Level of Consciousness: Alert and interactive.\n"
                             "Activity Status: Ambulatory - Independent."),
            "Mental Status is Clear and coherent. Level of Consciousness is Alert and "
            "interactive. Activity Status is Ambulatory - Independent.",
            "condition colon");

  expect_eq(NormalizeSection(SectionKind::kPertinentResults,
                             "___ 08:16AM BLOOD WBC-6.6 RBC-4.08\n"
                             "___ 05:40PM BLOOD Glucose-103\n"
                             "Results at ___ 08:16AM were stable."),
            "BLOOD WBC-6.6 RBC-4.08 BLOOD Glucose-103 Results at ___ 08:16AM were stable.",
            "timestamp stripping");

  expect_eq(NormalizeSection(SectionKind::kDischargeMedications,
                             "1. Acetaminophen 1000 mg PO TID \n"
                             "2. Ciprofloxacin HCl 500 mg PO Q12H \n"
                             "RX *ciprofloxacin HCl 500 mg 1 tablet(s) by mouth twice a day "
                             "Refills:*0\n- Indomethacin 25 mg PO TID"),
            "* Acetaminophen 1000 mg PO TID. * Ciprofloxacin HCl 500 mg PO Q12H. RX "
            "*ciprofloxacin HCl 500 mg 1 tablet(s) by mouth twice a day Refills:*0 "
            "* Indomethacin 25 mg PO TID.",
            "list canonicalization");

  dktest::Rng rng(20240612);
  int inputs = 0;
  for (; inputs < kIdempotenceInputs; ++inputs) {
    std::string raw = dktest::RandomSectionText(rng);
    for (SectionKind kind : kInputSections) {
      std::string once = NormalizeSection(kind, raw);
      v.Expect(NormalizeSection(kind, once) == once,
               std::string("not idempotent for ") + std::string(SectionName(kind)));
    }
  }
  v.Note(std::to_string(inputs) + " random inputs x 14 kinds");
}

void MetricOracles(Verdict& v) {
  dktest::Rng rng(7);
  int pairs = 0;
  for (; pairs < kMetricPairs; ++pairs) {
    size_t alphabet = dktest::Between(rng, 2, 6);
    Tokens c = dktest::RandomTokens(rng, dktest::Between(rng, 0, kMaxSequenceLength), alphabet);
    Tokens r = dktest::RandomTokens(rng, dktest::Between(rng, 0, kMaxSequenceLength), alphabet);
    for (int n = 1; n <= 4; ++n) {
      PrfScore got = RougeNScores(c, r, n);
      dktest::OraclePrf want = dktest::OracleRougeN(c, r, n);
      v.Expect(got.precision == want.precision && got.recall == want.recall &&
                   got.f1 == want.f1,
               "rouge-" + std::to_string(n) + " pair " + std::to_string(pairs));
    }
    PrfScore l = RougeLScores(c, r);
    dktest::OraclePrf lw = dktest::OracleRougeL(c, r);
    v.Expect(l.precision == lw.precision && l.recall == lw.recall && l.f1 == lw.f1,
             "rouge-l pair " + std::to_string(pairs));
    v.Expect(BleuFromStats(BleuPairStats(c, r)) == dktest::OracleBleu({{c, r}}),
             "bleu pair " + std::to_string(pairs));
  }

  // Identity and disjoint inputs. BLEU-4 needs at least one 4-gram.
  for (size_t len = 1; len <= kMaxSequenceLength; ++len) {
    Tokens t = dktest::RandomTokens(rng, len, 6);
    Tokens other(len, "zz");
    for (int n = 1; n <= static_cast<int>(len) && n <= 4; ++n) {
      v.Expect(RougeNScores(t, t, n).f1 == 1.0, "rouge identity");
      v.Expect(RougeNScores(t, other, n).f1 == 0.0, "rouge disjoint");
    }
    v.Expect(RougeLScores(t, t).f1 == 1.0, "rouge-l identity");
    v.Expect(RougeLScores(t, other).f1 == 0.0, "rouge-l disjoint");
    if (len >= 4) {
      v.Expect(BleuFromStats(BleuPairStats(t, t)) == 1.0, "bleu identity");
    }
    v.Expect(BleuFromStats(BleuPairStats(t, other)) == 0.0, "bleu disjoint");
  }
  v.Note(std::to_string(pairs) + " random pairs, lengths 0.." +
         std::to_string(kMaxSequenceLength));
}

std::map<std::string, std::string> Snapshot(const std::string& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    files[e.path().filename().string()] = dktest::Slurp(e.path().string());
  }
  return files;
}

void PipelineDeterminism(Verdict& v) {
  dktest::TempDir dir;
  PrepareOptions o;
  o.notes_path = dktest::FixturePath("notes.csv");
  o.targets_path = dktest::FixturePath("targets.csv");
  o.output_dir = dir.File("prepared");
  o.split.seed = 42;
  o.threads = 1;
  PrepareSummary s = RunPrepare(o);
  auto first = Snapshot(o.output_dir);
  o.threads = 0;
  RunPrepare(o);
  auto second = Snapshot(o.output_dir);
  v.Expect(first == second, "rerun changed the output bytes");
  v.Expect(first.size() == 5, "expected four data files and a manifest");
  v.Expect(s.notes == 10 && s.train_notes == 8 && s.validation_notes == 2,
           "split is not 8/2");
  for (const char* t : {"bhc", "di"}) {
    size_t train = ReadPrepared(o.output_dir + "/" + t + "_train.jsonl").size();
    size_t validation = ReadPrepared(o.output_dir + "/" + t + "_validation.jsonl").size();
    v.Expect(train == 4 * validation && train + validation == 10,
             std::string(t) + ": " + std::to_string(train) + "/" + std::to_string(validation));
  }
}

// Notes built to overflow the budget: inflated sections, long lines of
// unbroken text, literal separators and wide characters.
std::vector<DischargeNote> AdversarialNotes() {
  dktest::Rng rng(1596);
  std::vector<DischargeNote> notes;
  for (int i = 0; i < 40; ++i) {
    std::string text = dktest::RandomNote(rng, 200 + 150 * (i % 20));
    if (i % 4 == 1) {
      text += "\nHistory of Present Illness:\n";
      for (int k = 0; k < 2500; ++k) text += "<sep>";
    }
    if (i % 4 == 2) {
      text = "Past Medical History:\n" + std::string(20000, 'x') + " " +
             std::string(3000, ' ') + "\n" + text;
    }
    if (i % 4 == 3) {
      std::string wide;
      for (int k = 0; k < 3000; ++k) wide += k % 2 ? "\xc3\xa9 " : "\xe2\x82\xac";
      text = "Chief Complaint:\n" + wide + "\n" + text;
    }
    notes.push_back({std::to_string(40000000 + i), "adv-" + std::to_string(i), text});
  }
  return notes;
}

void BudgetCompliance(Verdict& v) {
  dktest::TempDir dir;
  std::vector<DischargeNote> notes = AdversarialNotes();
  WriteNotesJsonl(dir.File("adversarial.jsonl"), notes);
  size_t inputs = 0, longest = 0, truncated = 0;
  for (TokenizerMode mode : {TokenizerMode::kWhitespace, TokenizerMode::kSubword}) {
    PrepareOptions o;
    o.notes_path = dir.File("adversarial.jsonl");
    o.output_dir = dir.File(mode == TokenizerMode::kWhitespace ? "ws" : "sw");
    o.tokenizer.mode = mode;
    if (mode == TokenizerMode::kSubword) o.tokenizer.vocab_path = dktest::FixturePath("toy_vocab.txt");
    RunPrepare(o);
    Tokenizer tok = o.tokenizer.Build();
    for (const char* f : {"bhc_train.jsonl", "bhc_validation.jsonl", "di_train.jsonl",
                          "di_validation.jsonl"}) {
      for (const PreparedExample& ex : ReadPrepared(o.output_dir + "/" + f)) {
        size_t n = tok.Count(ex.input_text);
        ++inputs;
        longest = std::max(longest, n);
        truncated += n == kDefaultInputBudget;
        v.Expect(n <= kDefaultInputBudget,
                 tok.Label() + " " + ex.hadm_id + ": " + std::to_string(n) + " tokens");
      }
    }
  }
  v.Expect(truncated > 0, "no input reached the budget, so truncation was not exercised");
  v.Note(std::to_string(inputs) + " inputs, longest " + std::to_string(longest) + " tokens, " +
         std::to_string(truncated) + " at the budget");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Verdict&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"aggregation-fidelity", AggregationFidelity},
      {"golden-cleaning", GoldenCleaning},
      {"assembly-fixtures", AssemblyFixtures},
      {"normalization-rules", NormalizationRules},
      {"metric-oracles", MetricOracles},
      {"pipeline-determinism", PipelineDeterminism},
      {"budget-compliance", BudgetCompliance},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Verdict v;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.Expect(false, std::string("exception: ") + e.what());
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
    std::printf("%s %s (%s, %.0f ms)\n", v.ok() ? "PASS" : "FAIL", c.name, v.Detail().c_str(), ms);
    failed += v.ok() ? 0 : 1;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
