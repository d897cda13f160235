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

#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "corpus_io.hpp"
#include "json.hpp"
#include "porter_stemmer.hpp"
#include "text_util.hpp"

namespace dischargekit {

namespace {

struct MetricInfo {
  Metric metric;
  std::string_view key;
  std::string_view label;
  bool computed;
};

constexpr MetricInfo kMetricInfo[kMetricCount] = {
    {Metric::kBleu, "bleu", "BLEU", true},
    {Metric::kRouge1, "rouge1", "ROUGE-1", true},
    {Metric::kRouge2, "rouge2", "ROUGE-2", true},
    {Metric::kRougeL, "rougeL", "ROUGE-L", true},
    {Metric::kBertScore, "bertscore", "BERTScore", false},
    {Metric::kMeteor, "meteor", "METEOR", true},
    {Metric::kAlignScore, "alignscore", "AlignScore", false},
    {Metric::kMedcon, "medcon", "MEDCON", false},
};

const MetricInfo& Info(Metric m) { return kMetricInfo[static_cast<size_t>(m)]; }

bool IsTokenByte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

using NgramCounts = std::unordered_map<std::string, uint64_t>;

// Tokens never contain '\x1f', so it is a safe joiner.
NgramCounts CountNgrams(const Tokens& tokens, size_t n) {
  NgramCounts counts;
  if (n == 0 || tokens.size() < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (size_t k = 1; k < n; ++k) {
      key.push_back('\x1f');
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

uint64_t ClippedOverlap(const NgramCounts& candidate,
                        const NgramCounts& reference) {
  uint64_t overlap = 0;
  for (const auto& [gram, count] : candidate) {
    auto it = reference.find(gram);
    if (it != reference.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

PrfScore Prf(uint64_t overlap, uint64_t candidate_total,
             uint64_t reference_total) {
  PrfScore s;
  if (overlap == 0 || candidate_total == 0 || reference_total == 0) return s;
  s.precision = static_cast<double>(overlap) / static_cast<double>(candidate_total);
  s.recall = static_cast<double>(overlap) / static_cast<double>(reference_total);
  s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

// Chunk-minimizing search over alignments with fixed exact and stem counts.
class MeteorSearch {
 public:
  MeteorSearch(const Tokens& candidate, const Tokens& reference,
               size_t budget)
      : n_(candidate.size()), m_(reference.size()), budget_(budget) {
    std::unordered_map<std::string, int> word_ids;
    std::unordered_map<std::string, int> stem_ids;
    auto intern = [](std::unordered_map<std::string, int>& ids,
                     const std::string& s) {
      return ids.emplace(s, static_cast<int>(ids.size())).first->second;
    };
    for (const std::string& t : candidate) {
      cand_word_.push_back(intern(word_ids, t));
      cand_stem_.push_back(intern(stem_ids, PorterStem(t)));
    }
    for (const std::string& t : reference) {
      ref_word_.push_back(intern(word_ids, t));
      ref_stem_.push_back(intern(stem_ids, PorterStem(t)));
    }

    std::vector<int64_t> word_c(word_ids.size()), word_r(word_ids.size());
    for (int w : cand_word_) ++word_c[w];
    for (int w : ref_word_) ++word_r[w];
    exact_left_.resize(word_ids.size());
    for (size_t w = 0; w < word_ids.size(); ++w) {
      exact_left_[w] = std::min(word_c[w], word_r[w]);
      exact_total_ += static_cast<size_t>(exact_left_[w]);
    }

    // Words left over after exact matching, tallied per stem.
    std::vector<int> stem_of_word(word_ids.size());
    for (size_t i = 0; i < n_; ++i) stem_of_word[cand_word_[i]] = cand_stem_[i];
    for (size_t j = 0; j < m_; ++j) stem_of_word[ref_word_[j]] = ref_stem_[j];
    std::vector<int64_t> stem_c(stem_ids.size()), stem_r(stem_ids.size());
    for (size_t w = 0; w < word_ids.size(); ++w) {
      stem_c[stem_of_word[w]] += word_c[w] - exact_left_[w];
      stem_r[stem_of_word[w]] += word_r[w] - exact_left_[w];
    }
    stem_left_.resize(stem_ids.size());
    for (size_t s = 0; s < stem_ids.size(); ++s) {
      stem_left_[s] = std::min(stem_c[s], stem_r[s]);
      stem_total_ += static_cast<size_t>(stem_left_[s]);
    }

    options_.resize(n_);
    for (size_t i = 0; i < n_; ++i) {
      for (size_t j = 0; j < m_; ++j) {
        if (cand_stem_[i] == ref_stem_[j]) options_[i].push_back(j);
      }
    }
    ref_used_.assign(m_, false);
  }

  MeteorAlignment Run() {
    MeteorAlignment result;
    result.exact_matches = exact_total_;
    result.stem_matches = stem_total_;
    target_ = exact_total_ + stem_total_;
    if (target_ == 0) return result;
    best_chunks_ = Greedy();
    // A single chunk cannot be improved on.
    if (best_chunks_ > 1) Dfs(0, 0, 0, kNone, kNone);
    result.chunks = best_chunks_;
    result.optimal = !exhausted_;
    return result;
  }

 private:
  static constexpr size_t kNone = static_cast<size_t>(-1);

  // 0 = incompatible, 1 = exact, 2 = stem.
  int PairKind(size_t i, size_t j) const {
    if (ref_used_[j] || cand_stem_[i] != ref_stem_[j]) return 0;
    if (cand_word_[i] == ref_word_[j]) return exact_left_[cand_word_[i]] > 0 ? 1 : 0;
    return stem_left_[cand_stem_[i]] > 0 ? 2 : 0;
  }

  void Take(size_t i, size_t j, int kind) {
    ref_used_[j] = true;
    if (kind == 1) --exact_left_[cand_word_[i]];
    else --stem_left_[cand_stem_[i]];
  }

  void Release(size_t i, size_t j, int kind) {
    ref_used_[j] = false;
    if (kind == 1) ++exact_left_[cand_word_[i]];
    else ++stem_left_[cand_stem_[i]];
  }

  size_t Greedy() {
    std::vector<size_t> match(n_, kNone);
    std::vector<std::pair<size_t, int>> taken;
    for (int pass = 1; pass <= 2; ++pass) {
      for (size_t i = 0; i < n_; ++i) {
        if (match[i] != kNone) continue;
        for (size_t j : options_[i]) {
          if (PairKind(i, j) == pass) {
            Take(i, j, pass);
            match[i] = j;
            taken.emplace_back(i, pass);
            break;
          }
        }
      }
    }
    size_t chunks = 0;
    size_t prev_i = kNone, prev_j = kNone;
    for (size_t i = 0; i < n_; ++i) {
      if (match[i] == kNone) continue;
      if (prev_i == kNone || i != prev_i + 1 || match[i] != prev_j + 1) ++chunks;
      prev_i = i;
      prev_j = match[i];
    }
    for (auto [i, kind] : taken) Release(i, match[i], kind);
    return chunks;
  }

  void Dfs(size_t i, size_t matched, size_t chunks, size_t prev_i,
           size_t prev_j) {
    if (exhausted_ || chunks >= best_chunks_) return;
    if (matched + (n_ - i) < target_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (matched == target_) {
      best_chunks_ = chunks;
      return;
    }
    // Extending the current chunk first finds good bounds early.
    bool continues = prev_i != kNone && prev_i + 1 == i;
    if (continues && prev_j + 1 < m_) {
      size_t j = prev_j + 1;
      if (int kind = PairKind(i, j)) {
        Take(i, j, kind);
        Dfs(i + 1, matched + 1, chunks, i, j);
        Release(i, j, kind);
      }
    }
    for (size_t j : options_[i]) {
      if (continues && j == prev_j + 1) continue;
      if (int kind = PairKind(i, j)) {
        Take(i, j, kind);
        Dfs(i + 1, matched + 1, chunks + 1, i, j);
        Release(i, j, kind);
      }
    }
    Dfs(i + 1, matched, chunks, prev_i, prev_j);
  }

  size_t n_, m_;
  size_t budget_;
  std::vector<int> cand_word_, cand_stem_, ref_word_, ref_stem_;
  std::vector<int64_t> exact_left_, stem_left_;
  std::vector<std::vector<size_t>> options_;
  std::vector<bool> ref_used_;
  size_t exact_total_ = 0, stem_total_ = 0, target_ = 0;
  size_t best_chunks_ = 0;
  size_t nodes_ = 0;
  bool exhausted_ = false;
};

std::string FormatScore(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", *v);
  return buf;
}

nlohmann::ordered_json ValuesJson(
    const std::array<std::optional<double>, kMetricCount>& values) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (Metric m : kAllMetrics) {
    const auto& v = values[static_cast<size_t>(m)];
    j[std::string(MetricKey(m))] = v ? nlohmann::ordered_json(*v) : nullptr;
  }
  return j;
}

}  // namespace

std::string_view MetricKey(Metric metric) { return Info(metric).key; }
std::string_view MetricLabel(Metric metric) { return Info(metric).label; }
bool IsComputedMetric(Metric metric) { return Info(metric).computed; }

std::optional<Metric> ParseMetricKey(std::string_view key) {
  for (const MetricInfo& info : kMetricInfo) {
    if (info.key == key) return info.metric;
  }
  return std::nullopt;
}

Tokens NormalizeTokens(std::string_view text) {
  Tokens tokens;
  std::string current;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (IsTokenByte(c)) {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32) : ch);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

PrfScore RougeNScores(const Tokens& candidate, const Tokens& reference, int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "ROUGE order must be >= 1");
  auto size_n = static_cast<size_t>(n);
  NgramCounts cand = CountNgrams(candidate, size_n);
  NgramCounts ref = CountNgrams(reference, size_n);
  uint64_t cand_total = candidate.size() >= size_n ? candidate.size() - size_n + 1 : 0;
  uint64_t ref_total = reference.size() >= size_n ? reference.size() - size_n + 1 : 0;
  return Prf(ClippedOverlap(cand, ref), cand_total, ref_total);
}

double RougeN(std::string_view candidate, std::string_view reference, int n) {
  return RougeNScores(NormalizeTokens(candidate), NormalizeTokens(reference), n).f1;
}

size_t LcsLength(const Tokens& a, const Tokens& b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

PrfScore RougeLScores(const Tokens& candidate, const Tokens& reference) {
  return Prf(LcsLength(candidate, reference), candidate.size(), reference.size());
}

double RougeL(std::string_view candidate, std::string_view reference) {
  return RougeLScores(NormalizeTokens(candidate), NormalizeTokens(reference)).f1;
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (size_t k = 0; k < 4; ++k) {
    matches[k] += other.matches[k];
    totals[k] += other.totals[k];
  }
  candidate_length += other.candidate_length;
  reference_length += other.reference_length;
  return *this;
}

BleuStats BleuPairStats(const Tokens& candidate, const Tokens& reference) {
  BleuStats stats;
  for (size_t n = 1; n <= 4; ++n) {
    NgramCounts cand = CountNgrams(candidate, n);
    stats.matches[n - 1] = ClippedOverlap(cand, CountNgrams(reference, n));
    stats.totals[n - 1] = candidate.size() >= n ? candidate.size() - n + 1 : 0;
  }
  stats.candidate_length = candidate.size();
  stats.reference_length = reference.size();
  return stats;
}

double BleuFromStats(const BleuStats& stats) {
  double log_sum = 0.0;
  for (size_t k = 0; k < 4; ++k) {
    if (stats.matches[k] == 0 || stats.totals[k] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(stats.matches[k]) /
                        static_cast<double>(stats.totals[k]));
  }
  double c = static_cast<double>(stats.candidate_length);
  double r = static_cast<double>(stats.reference_length);
  double bp = stats.candidate_length < stats.reference_length ? std::exp(1.0 - r / c) : 1.0;
  return bp * std::exp(0.25 * log_sum);
}

double Bleu4(const std::vector<std::string>& candidates,
             const std::vector<std::string>& references) {
  if (candidates.size() != references.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "BLEU needs one reference per candidate (" +
                    std::to_string(candidates.size()) + " vs " +
                    std::to_string(references.size()) + ")");
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "BLEU needs at least one pair");
  }
  BleuStats total;
  for (size_t i = 0; i < candidates.size(); ++i) {
    total += BleuPairStats(NormalizeTokens(candidates[i]),
                           NormalizeTokens(references[i]));
  }
  return BleuFromStats(total);
}

MeteorAlignment AlignMeteor(const Tokens& candidate, const Tokens& reference,
                            size_t search_budget) {
  return MeteorSearch(candidate, reference, search_budget).Run();
}

double MeteorFromAlignment(const MeteorAlignment& alignment,
                           size_t candidate_length, size_t reference_length) {
  size_t m = alignment.matches();
  if (m == 0 || candidate_length == 0 || reference_length == 0) return 0.0;
  double p = static_cast<double>(m) / static_cast<double>(candidate_length);
  double r = static_cast<double>(m) / static_cast<double>(reference_length);
  double fmean = 10.0 * p * r / (r + 9.0 * p);
  double frag = static_cast<double>(alignment.chunks) / static_cast<double>(m);
  double penalty = 0.5 * frag * frag * frag;
  return fmean * (1.0 - penalty);
}

double Meteor(std::string_view candidate, std::string_view reference) {
  Tokens cand = NormalizeTokens(candidate);
  Tokens ref = NormalizeTokens(reference);
  return MeteorFromAlignment(AlignMeteor(cand, ref), cand.size(), ref.size());
}

PairScores ScorePair(std::string_view candidate, std::string_view reference) {
  Tokens cand = NormalizeTokens(candidate);
  Tokens ref = NormalizeTokens(reference);
  PairScores s;
  s.rouge1 = RougeNScores(cand, ref, 1).f1;
  s.rouge2 = RougeNScores(cand, ref, 2).f1;
  s.rougeL = RougeLScores(cand, ref).f1;
  s.meteor = MeteorFromAlignment(AlignMeteor(cand, ref), cand.size(), ref.size());
  s.bleu = BleuPairStats(cand, ref);
  return s;
}

void MetricReport::Set(Metric m, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::kMalformedRecord,
                std::string(MetricKey(m)) + " value " + std::to_string(value) +
                    " is outside [0, 1]");
  }
  values[static_cast<size_t>(m)] = value;
}

MetricReport ReduceScores(TargetKind target,
                          const std::vector<PairScores>& pairs) {
  if (pairs.empty()) {
    throw Error(ErrorCode::kEmptyCorpus,
                "no pairs to score for " + std::string(TargetKey(target)));
  }
  double r1 = 0, r2 = 0, rl = 0, met = 0;
  BleuStats bleu;
  for (const PairScores& p : pairs) {
    r1 += p.rouge1;
    r2 += p.rouge2;
    rl += p.rougeL;
    met += p.meteor;
    bleu += p.bleu;
  }
  double n = static_cast<double>(pairs.size());
  MetricReport report;
  report.target = target;
  report.sample_count = pairs.size();
  // Mean of values in [0, 1] can drift by an ulp past 1.
  auto mean = [n](double sum) { return std::clamp(sum / n, 0.0, 1.0); };
  report.Set(Metric::kBleu, std::clamp(BleuFromStats(bleu), 0.0, 1.0));
  report.Set(Metric::kRouge1, mean(r1));
  report.Set(Metric::kRouge2, mean(r2));
  report.Set(Metric::kRougeL, mean(rl));
  report.Set(Metric::kMeteor, mean(met));
  return report;
}

std::vector<ExternalScore> ParseExternalScores(std::string_view data) {
  std::vector<ExternalScore> scores;
  size_t record = 0;
  for (std::string_view line : text::SplitLines(data)) {
    if (text::Trim(line).empty()) continue;
    ++record;
    auto fail = [&](const std::string& what) {
      return Error(ErrorCode::kMalformedRecord,
                   "external score record " + std::to_string(record) + ": " + what);
    };
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw fail("not a JSON object");
    if (!j.contains("target") || !j["target"].is_string()) throw fail("missing target");
    if (!j.contains("metric") || !j["metric"].is_string()) throw fail("missing metric");
    if (!j.contains("value") || !j["value"].is_number()) throw fail("missing numeric value");
    auto target = ParseTargetKey(j["target"].get<std::string>());
    if (!target) throw fail("unknown target '" + j["target"].get<std::string>() + "'");
    auto metric = ParseMetricKey(j["metric"].get<std::string>());
    if (!metric) throw fail("unknown metric '" + j["metric"].get<std::string>() + "'");
    double value = j["value"].get<double>();
    if (!(value >= 0.0 && value <= 1.0)) throw fail("value outside [0, 1]");
    for (const ExternalScore& s : scores) {
      if (s.target == *target && s.metric == *metric) throw fail("repeated target and metric");
    }
    scores.push_back({*target, *metric, value});
  }
  return scores;
}

std::vector<ExternalScore> LoadExternalScores(const std::string& path) {
  return ParseExternalScores(ReadFile(path));
}

double ScoreReport::RequireOverall() const {
  if (overall) return *overall;
  std::string names;
  for (Metric m : missing) {
    if (!names.empty()) names += ", ";
    names += MetricKey(m);
  }
  throw Error(ErrorCode::kMissingMetric, "overall score needs " + names);
}

ScoreReport Aggregate(const MetricReport& bhc, const MetricReport& di,
                      const std::vector<ExternalScore>& external) {
  ScoreReport report;
  report.bhc = bhc;
  report.di = di;
  report.bhc.target = TargetKind::kBriefHospitalCourse;
  report.di.target = TargetKind::kDischargeInstructions;
  for (const ExternalScore& s : external) {
    (s.target == TargetKind::kBriefHospitalCourse ? report.bhc : report.di)
        .Set(s.metric, s.value);
  }
  double sum = 0.0;
  for (Metric m : kAllMetrics) {
    auto a = report.bhc.Get(m);
    auto b = report.di.Get(m);
    if (a && b) {
      double v = (*a + *b) / 2.0;
      report.per_metric_overall[static_cast<size_t>(m)] = v;
      sum += v;
    } else {
      report.missing.push_back(m);
    }
  }
  if (report.missing.empty()) report.overall = sum / static_cast<double>(kMetricCount);
  return report;
}

std::string ScoreReportJson(const ScoreReport& report) {
  nlohmann::ordered_json j;
  for (const MetricReport* r : {&report.bhc, &report.di}) {
    nlohmann::ordered_json t;
    t["sample_count"] = r->sample_count;
    t["metrics"] = ValuesJson(r->values);
    j[std::string(TargetKey(r->target))] = t;
  }
  j["per_metric_overall"] = ValuesJson(report.per_metric_overall);
  j["overall"] = report.overall ? nlohmann::ordered_json(*report.overall) : nullptr;
  j["partial"] = report.partial();
  nlohmann::ordered_json missing = nlohmann::ordered_json::array();
  for (Metric m : report.missing) missing.push_back(std::string(MetricKey(m)));
  j["missing"] = missing;
  return j.dump(2) + "\n";
}

std::string ScoreReportTable(const ScoreReport& report) {
  std::vector<std::string> header = {"Target"};
  for (Metric m : kAllMetrics) header.emplace_back(MetricLabel(m));
  header.emplace_back("Overall");

  std::vector<std::vector<std::string>> rows = {header};
  auto add_row = [&](std::string name,
                     const std::array<std::optional<double>, kMetricCount>& values,
                     const std::optional<double>& overall) {
    std::vector<std::string> row = {std::move(name)};
    for (const auto& v : values) row.push_back(FormatScore(v));
    row.push_back(FormatScore(overall));
    rows.push_back(std::move(row));
  };
  add_row("BHC", report.bhc.values, std::nullopt);
  add_row("DI", report.di.values, std::nullopt);
  add_row("Overall", report.per_metric_overall, report.overall);

  std::vector<size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += "  ";
      // First column left-aligned, numbers right-aligned.
      std::string pad(width[c] - row[c].size(), ' ');
      line += c == 0 ? row[c] + pad : pad + row[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  if (report.partial()) {
    std::string names;
    for (Metric m : report.missing) names += (names.empty() ? "" : ", ") + std::string(MetricKey(m));
    out += "partial: missing " + names + "\n";
  }
  return out;
}

}  // namespace dischargekit
