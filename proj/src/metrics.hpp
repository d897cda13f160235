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

// Reference-based summary metrics and the eight-metric overall score.
//
// All metrics work on normalized tokens: ASCII letters lowercased, text split
// at every byte that is not an ASCII letter or digit. Bytes of multi-byte
// UTF-8 sequences count as token characters.

#ifndef DISCHARGEKIT_METRICS_HPP_
#define DISCHARGEKIT_METRICS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"

namespace dischargekit {

enum class Metric {
  kBleu,
  kRouge1,
  kRouge2,
  kRougeL,
  kBertScore,
  kMeteor,
  kAlignScore,
  kMedcon,
};

inline constexpr size_t kMetricCount = 8;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics = {
    Metric::kBleu,   Metric::kRouge1,    Metric::kRouge2,
    Metric::kRougeL, Metric::kBertScore, Metric::kMeteor,
    Metric::kAlignScore, Metric::kMedcon,
};

// "bleu", "rouge1", "rouge2", "rougeL", "bertscore", "meteor", "alignscore",
// "medcon".
std::string_view MetricKey(Metric metric);
// Column heading, e.g. "ROUGE-1".
std::string_view MetricLabel(Metric metric);
std::optional<Metric> ParseMetricKey(std::string_view key);
// The five n-gram metrics computed here; the other three are merge-only.
bool IsComputedMetric(Metric metric);

using Tokens = std::vector<std::string>;

Tokens NormalizeTokens(std::string_view text);

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Clipped n-gram overlap. Zero when either side has no n-grams.
PrfScore RougeNScores(const Tokens& candidate, const Tokens& reference, int n);
double RougeN(std::string_view candidate, std::string_view reference, int n);

// Longest common subsequence based.
PrfScore RougeLScores(const Tokens& candidate, const Tokens& reference);
double RougeL(std::string_view candidate, std::string_view reference);
size_t LcsLength(const Tokens& a, const Tokens& b);

// Sufficient statistics for corpus BLEU-4. Addition is associative, so pairs
// can be tallied in any order.
struct BleuStats {
  std::array<uint64_t, 4> matches{};
  std::array<uint64_t, 4> totals{};
  uint64_t candidate_length = 0;
  uint64_t reference_length = 0;

  BleuStats& operator+=(const BleuStats& other);
};

BleuStats BleuPairStats(const Tokens& candidate, const Tokens& reference);
// Geometric mean of the four modified precisions times the brevity penalty.
// No smoothing: 0 when any order has no matches.
double BleuFromStats(const BleuStats& stats);
// kLengthMismatch when the lists differ in size, kEmptyCorpus when they
// are empty.
double Bleu4(const std::vector<std::string>& candidates,
             const std::vector<std::string>& references);

struct MeteorAlignment {
  size_t exact_matches = 0;
  size_t stem_matches = 0;
  size_t chunks = 0;
  // False when the chunk search hit its node budget; chunks is then the
  // best found rather than the proven minimum.
  bool optimal = true;

  size_t matches() const { return exact_matches + stem_matches; }
};

inline constexpr size_t kMeteorSearchBudget = 200000;

// One-to-one unigram alignment. Exact matches are maximized first, then stem
// matches among the remaining words; among alignments with those counts the
// one with the fewest chunks is chosen. A chunk is a run of matches adjacent
// in both candidate and reference.
MeteorAlignment AlignMeteor(const Tokens& candidate, const Tokens& reference,
                            size_t search_budget = kMeteorSearchBudget);
double MeteorFromAlignment(const MeteorAlignment& alignment,
                           size_t candidate_length, size_t reference_length);
double Meteor(std::string_view candidate, std::string_view reference);

// Per-pair values feeding a MetricReport.
struct PairScores {
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rougeL = 0.0;
  double meteor = 0.0;
  BleuStats bleu;
};

PairScores ScorePair(std::string_view candidate, std::string_view reference);

struct MetricReport {
  TargetKind target = TargetKind::kBriefHospitalCourse;
  size_t sample_count = 0;
  std::array<std::optional<double>, kMetricCount> values{};

  std::optional<double> Get(Metric m) const {
    return values[static_cast<size_t>(m)];
  }
  // kMalformedRecord unless value is in [0, 1].
  void Set(Metric m, double value);
};

// ROUGE and METEOR averaged over pairs, BLEU from the summed statistics.
// Sums run in index order so results do not depend on how pairs were
// scored. kEmptyCorpus on no pairs.
MetricReport ReduceScores(TargetKind target,
                          const std::vector<PairScores>& pairs);

struct ExternalScore {
  TargetKind target = TargetKind::kBriefHospitalCourse;
  Metric metric = Metric::kBertScore;
  double value = 0.0;
};

// JSONL records {"target": "bhc"|"di", "metric": <key>, "value": <real>}.
// kMalformedRecord for unknown keys, values outside [0, 1] or a repeated
// (target, metric) pair.
std::vector<ExternalScore> ParseExternalScores(std::string_view data);
std::vector<ExternalScore> LoadExternalScores(const std::string& path);

struct ScoreReport {
  MetricReport bhc;
  MetricReport di;
  std::array<std::optional<double>, kMetricCount> per_metric_overall{};
  std::optional<double> overall;
  // Metrics lacking a value for at least one target, in metric order.
  std::vector<Metric> missing;

  bool partial() const { return !overall.has_value(); }
  // kMissingMetric naming the absent metrics when partial.
  double RequireOverall() const;
};

// External values replace computed ones for the same (target, metric).
// per_metric_overall is the mean of the two targets; overall is the mean of
// all eight, or absent when any is missing.
ScoreReport Aggregate(const MetricReport& bhc, const MetricReport& di,
                      const std::vector<ExternalScore>& external = {});

std::string ScoreReportJson(const ScoreReport& report);
// Fixed-width table: one row per target plus an "Overall" row.
std::string ScoreReportTable(const ScoreReport& report);

}  // namespace dischargekit

#endif  // DISCHARGEKIT_METRICS_HPP_
