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

// Slow, independent reference implementations used to check the library.
// They favour obviously-correct enumeration over speed and share no code
// with src/ beyond the stemmer, which has its own word-list test.

#ifndef DISCHARGEKIT_TESTS_ORACLES_HPP_
#define DISCHARGEKIT_TESTS_ORACLES_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dktest {

using Seq = std::vector<std::string>;

struct OraclePrf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Clipped n-gram overlap by pairwise comparison of every n-gram.
uint64_t OracleOverlap(const Seq& candidate, const Seq& reference, size_t n);
OraclePrf OracleRougeN(const Seq& candidate, const Seq& reference, size_t n);
// Longest common subsequence by enumerating every subsequence of the
// shorter side (lengths up to ~16).
size_t OracleLcs(const Seq& a, const Seq& b);
OraclePrf OracleRougeL(const Seq& candidate, const Seq& reference);
double OracleBleu(const std::vector<std::pair<Seq, Seq>>& corpus);

struct OracleAlignment {
  size_t exact = 0;
  size_t stem = 0;
  size_t chunks = 0;
};

// Every one-to-one matching of stem-equal words is enumerated; the winner
// has the most exact pairs, then the most pairs, then the fewest chunks.
OracleAlignment OracleMeteorAlign(const Seq& candidate, const Seq& reference);
double OracleMeteor(const Seq& candidate, const Seq& reference);

// Line-by-line std::regex removal of leading "___ 08:00AM" stamps.
std::string OracleStripTimestamps(const std::string& body);

// Segments by scanning the whole vocabulary at every position.
std::vector<std::string> OracleSegment(const std::string& text,
                                       const std::vector<std::string>& vocab);

// Validation ids for the "dk-fy64" split, computed from first principles.
std::vector<std::string> OracleValidationIds(std::vector<std::string> ids,
                                             uint64_t numerator,
                                             uint64_t denominator,
                                             uint64_t seed);

}  // namespace dktest

#endif  // DISCHARGEKIT_TESTS_ORACLES_HPP_
