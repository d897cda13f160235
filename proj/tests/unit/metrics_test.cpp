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

#include "check_error.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace dischargekit;

namespace {

std::string Join(const Tokens& t) {
  std::string s;
  for (const auto& w : t) {
    if (!s.empty()) s += ' ';
    s += w;
  }
  return s;
}

MetricReport Report(TargetKind t, std::array<double, kMetricCount> v) {
  MetricReport r;
  r.target = t;
  for (Metric m : kAllMetrics) r.Set(m, v[static_cast<size_t>(m)]);
  return r;
}

}  // namespace

TEST_CASE("token normalization") {
  CHECK(NormalizeTokens("The  Patient's BP: 120/80, ok.") ==
        Tokens{"the", "patient", "s", "bp", "120", "80", "ok"});
  CHECK(NormalizeTokens("   ") == Tokens{});
  CHECK(NormalizeTokens("caf\xc3\xa9-AU") == Tokens{"caf\xc3\xa9", "au"});
}

TEST_CASE("metric keys round-trip") {
  for (Metric m : kAllMetrics) CHECK(ParseMetricKey(MetricKey(m)) == m);
  CHECK_FALSE(ParseMetricKey("rouge3"));
  CHECK(IsComputedMetric(Metric::kBleu));
  CHECK_FALSE(IsComputedMetric(Metric::kBertScore));
}

TEST_CASE("rouge and bleu agree with enumeration oracles") {
  dktest::Rng rng(2024);
  for (int trial = 0; trial < 3000; ++trial) {
    Tokens c = dktest::RandomTokens(rng, dktest::Between(rng, 0, 8), 4);
    Tokens r = dktest::RandomTokens(rng, dktest::Between(rng, 0, 8), 4);
    for (int n = 1; n <= 4; ++n) {
      PrfScore got = RougeNScores(c, r, n);
      dktest::OraclePrf want = dktest::OracleRougeN(c, r, n);
      REQUIRE(got.precision == want.precision);
      REQUIRE(got.recall == want.recall);
      REQUIRE(got.f1 == want.f1);
    }
    REQUIRE(LcsLength(c, r) == dktest::OracleLcs(c, r));
    PrfScore l = RougeLScores(c, r);
    REQUIRE(l.f1 == dktest::OracleRougeL(c, r).f1);
    REQUIRE(BleuFromStats(BleuPairStats(c, r)) == dktest::OracleBleu({{c, r}}));
  }
}

TEST_CASE("rouge worked example") {
  CHECK(RougeN("the cat sat", "the cat ran", 1) == doctest::Approx(2.0 / 3.0));
  CHECK(RougeN("the cat sat", "the cat ran", 2) == doctest::Approx(0.5));
  CHECK(RougeL("a b c d", "a c d b") == doctest::Approx(0.75));
  CHECK_DK_ERROR(RougeNScores({"a"}, {"a"}, 0), ErrorCode::kInvalidArgument);
}

TEST_CASE("bleu corpus statistics") {
  std::vector<std::string> refs = {"the cat sat on the mat today",
                                   "a quick brown fox jumps over it",
                                   "one two three four five"};
  CHECK(Bleu4(refs, refs) == doctest::Approx(1.0));
  CHECK(Bleu4({"a b c"}, {"a b c"}) == 0.0);  // no 4-grams
  CHECK(Bleu4({"w x y z"}, {"a b c d"}) == 0.0);
  std::vector<std::string> cands = {"the cat sat on a mat", "the quick brown fox jumps over it",
                                    "one two three four"};
  std::vector<std::pair<dktest::Seq, dktest::Seq>> corpus;
  for (size_t i = 0; i < cands.size(); ++i) {
    corpus.push_back({NormalizeTokens(cands[i]), NormalizeTokens(refs[i])});
  }
  CHECK(std::abs(Bleu4(cands, refs) - dktest::OracleBleu(corpus)) < 1e-12);
  // Pair order does not matter.
  std::vector<std::string> rc(cands.rbegin(), cands.rend()), rr(refs.rbegin(), refs.rend());
  CHECK(Bleu4(rc, rr) == Bleu4(cands, refs));
  CHECK_DK_ERROR(Bleu4({"a"}, {}), ErrorCode::kLengthMismatch);
}

TEST_CASE("brevity penalty applies only to short candidates") {
  Tokens ref = {"a", "b", "c", "d", "e", "f", "g", "h"};
  Tokens cand = {"a", "b", "c", "d", "e", "f"};
  double got = BleuFromStats(BleuPairStats(cand, ref));
  double precision = std::exp(0.25 * (std::log(6.0 / 6) + std::log(5.0 / 5) +
                                      std::log(4.0 / 4) + std::log(3.0 / 3)));
  CHECK(got == doctest::Approx(precision * std::exp(1.0 - 8.0 / 6.0)));
  Tokens longer = {"a", "b", "c", "d", "e", "f", "g", "h", "i"};
  double lp = std::exp(0.25 * (std::log(8.0 / 9) + std::log(7.0 / 8) + std::log(6.0 / 7) +
                               std::log(5.0 / 6)));
  CHECK(BleuFromStats(BleuPairStats(longer, ref)) == doctest::Approx(lp));
}

TEST_CASE("meteor worked example uses the fewest chunks") {
  MeteorAlignment a = AlignMeteor(NormalizeTokens("quick brown the fox"),
                                  NormalizeTokens("the quick brown fox"));
  CHECK(a.exact_matches == 4);
  CHECK(a.chunks == 3);
  CHECK(a.optimal);
  CHECK(Meteor("quick brown the fox", "the quick brown fox") ==
        doctest::Approx(1.0 - 0.5 * std::pow(3.0 / 4.0, 3)));
}

TEST_CASE("meteor identity and disjoint inputs") {
  for (size_t k = 1; k <= 6; ++k) {
    Tokens t;
    for (size_t i = 0; i < k; ++i) t.push_back("w" + std::to_string(i));
    CHECK(Meteor(Join(t), Join(t)) == doctest::Approx(1.0 - 0.5 / double(k * k * k)));
  }
  CHECK(Meteor("alpha beta", "gamma delta") == 0.0);
  CHECK(Meteor("", "a") == 0.0);
}

TEST_CASE("meteor stem matches count after exact ones") {
  MeteorAlignment a = AlignMeteor({"running", "cats"}, {"run", "cat", "cats"});
  CHECK(a.exact_matches == 1);
  CHECK(a.stem_matches == 1);
}

TEST_CASE("meteor agrees with an exhaustive alignment oracle") {
  dktest::Rng rng(99);
  const std::vector<std::string> words = {"run", "runs", "running", "cat", "cats",
                                          "the", "a", "walked", "walk"};
  for (int trial = 0; trial < 2000; ++trial) {
    Tokens c, r;
    size_t lc = dktest::Between(rng, 0, 7), lr = dktest::Between(rng, 0, 7);
    for (size_t i = 0; i < lc; ++i) c.push_back(dktest::Choice(rng, words));
    for (size_t i = 0; i < lr; ++i) r.push_back(dktest::Choice(rng, words));
    MeteorAlignment got = AlignMeteor(c, r);
    dktest::OracleAlignment want = dktest::OracleMeteorAlign(c, r);
    REQUIRE(got.exact_matches == want.exact);
    REQUIRE(got.matches() == want.exact + want.stem);
    REQUIRE(got.chunks == want.chunks);
    REQUIRE(MeteorFromAlignment(got, c.size(), r.size()) ==
            doctest::Approx(dktest::OracleMeteor(c, r)).epsilon(1e-12));
  }
}

TEST_CASE("meteor search budget falls back to a valid alignment") {
  Tokens c, r;
  for (int i = 0; i < 40; ++i) {
    c.push_back(i % 2 ? "a" : "b");
    r.push_back(i % 3 ? "a" : "b");
  }
  MeteorAlignment tight = AlignMeteor(c, r, 10);
  MeteorAlignment full = AlignMeteor(c, r);
  CHECK(tight.matches() == full.matches());
  CHECK(tight.chunks >= full.chunks);
  CHECK(tight.chunks >= 1);
  CHECK(tight.chunks <= tight.matches());
}

TEST_CASE("scores are whitespace invariant and bounded") {
  dktest::Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    Tokens c = dktest::RandomTokens(rng, dktest::Between(rng, 1, 10), 5);
    Tokens r = dktest::RandomTokens(rng, dktest::Between(rng, 1, 10), 5);
    std::string spaced = "  " + Join(c) + " \n\t";
    for (size_t pos; (pos = spaced.find(' ', 3)) != std::string::npos && trial % 2;) {
      spaced.replace(pos, 1, "\n\n");
    }
    PairScores a = ScorePair(Join(c), Join(r));
    PairScores b = ScorePair(spaced, Join(r));
    CHECK(a.rouge1 == b.rouge1);
    CHECK(a.rougeL == b.rougeL);
    CHECK(a.meteor == b.meteor);
    for (double v : {a.rouge1, a.rouge2, a.rougeL, a.meteor}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("reduction averages pair scores and pools bleu") {
  std::vector<PairScores> pairs = {ScorePair("a b c d e", "a b c d e"),
                                   ScorePair("x y", "a b")};
  MetricReport r = ReduceScores(TargetKind::kDischargeInstructions, pairs);
  CHECK(r.sample_count == 2);
  CHECK(*r.Get(Metric::kRouge1) == doctest::Approx(0.5));
  CHECK_FALSE(r.Get(Metric::kBertScore));
  BleuStats pooled = pairs[0].bleu;
  pooled += pairs[1].bleu;
  CHECK(*r.Get(Metric::kBleu) == BleuFromStats(pooled));
  CHECK_DK_ERROR(ReduceScores(TargetKind::kBriefHospitalCourse, {}), ErrorCode::kEmptyCorpus);
  MetricReport bad;
  CHECK_DK_ERROR(bad.Set(Metric::kBleu, 1.5), ErrorCode::kMalformedRecord);
}

TEST_CASE("aggregation averages targets then metrics") {
  std::array<double, kMetricCount> a{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  std::array<double, kMetricCount> b{0.3, 0.2, 0.1, 0.0, 0.5, 0.4, 0.3, 0.2};
  ScoreReport s = Aggregate(Report(TargetKind::kBriefHospitalCourse, a),
                            Report(TargetKind::kDischargeInstructions, b));
  for (size_t i = 0; i < kMetricCount; ++i) {
    CHECK(*s.per_metric_overall[i] == doctest::Approx((a[i] + b[i]) / 2));
  }
  CHECK(s.RequireOverall() == doctest::Approx(0.35));
  CHECK(s.missing.empty());

  ScoreReport zero = Aggregate(Report(TargetKind::kBriefHospitalCourse, {}),
                               Report(TargetKind::kDischargeInstructions, {}));
  CHECK(*zero.overall == 0.0);
}

TEST_CASE("a missing metric makes the result partial") {
  MetricReport bhc, di;
  bhc.Set(Metric::kBleu, 0.2);
  di.Set(Metric::kBleu, 0.4);
  ScoreReport s = Aggregate(bhc, di);
  CHECK(s.partial());
  CHECK(s.missing.size() == 7);
  CHECK(*s.per_metric_overall[0] == doctest::Approx(0.3));
  CHECK_DK_ERROR(s.RequireOverall(), ErrorCode::kMissingMetric);
  CHECK(ScoreReportTable(s).find("partial: missing") != std::string::npos);
  CHECK(ScoreReportJson(s).find("\"partial\": true") != std::string::npos);
}

TEST_CASE("external scores fill and override") {
  std::string data;
  const double row[] = {0.063, 0.394, 0.131, 0.252, 0.351, 0.312, 0.210, 0.276};
  for (TargetKind t : kAllTargets) {
    for (Metric m : kAllMetrics) {
      data += "{\"target\":\"" + std::string(TargetKey(t)) + "\",\"metric\":\"" +
              std::string(MetricKey(m)) + "\",\"value\":" +
              std::to_string(row[static_cast<size_t>(m)]) + "}\n";
    }
  }
  auto ext = ParseExternalScores(data);
  CHECK(ext.size() == 16);
  MetricReport computed;
  computed.Set(Metric::kBleu, 0.9);
  ScoreReport s = Aggregate(computed, computed, ext);
  CHECK(*s.bhc.Get(Metric::kBleu) == doctest::Approx(0.063));
  CHECK(std::abs(s.RequireOverall() - 0.248) <= 0.001);
  std::string table = ScoreReportTable(s);
  CHECK(table.find("BERTScore") != std::string::npos);
  CHECK(table.find("0.249") != std::string::npos);  // 0.248625 at three decimals
}

TEST_CASE("external score records are validated") {
  CHECK_DK_ERROR(ParseExternalScores("{\"target\":\"bhc\",\"metric\":\"x\",\"value\":0.1}"),
                 ErrorCode::kMalformedRecord);
  CHECK_DK_ERROR(ParseExternalScores("{\"target\":\"zz\",\"metric\":\"bleu\",\"value\":0.1}"),
                 ErrorCode::kMalformedRecord);
  CHECK_DK_ERROR(ParseExternalScores("{\"target\":\"bhc\",\"metric\":\"bleu\",\"value\":2}"),
                 ErrorCode::kMalformedRecord);
  CHECK_DK_ERROR(ParseExternalScores("{\"target\":\"bhc\",\"metric\":\"bleu\",\"value\":0.1}\n"
                                     "{\"target\":\"bhc\",\"metric\":\"bleu\",\"value\":0.2}"),
                 ErrorCode::kMalformedRecord);
  CHECK_DK_ERROR(ParseExternalScores("not json"), ErrorCode::kMalformedRecord);
}
