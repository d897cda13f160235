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

#include "porter_stemmer.hpp"

#include <algorithm>

namespace dischargekit {

namespace {

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : b_(word) {}

  std::string Run() {
    if (b_.size() <= 2) return b_;
    Step1a();
    Step1b();
    Step1c();
    Step2();
    Step3();
    Step4();
    Step5a();
    Step5b();
    return b_;
  }

 private:
  bool IsConsonant(size_t i) const {
    switch (b_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 || !IsConsonant(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0, len).
  int Measure(size_t len) const {
    int m = 0;
    size_t i = 0;
    while (i < len && IsConsonant(i)) ++i;
    while (i < len) {
      while (i < len && !IsConsonant(i)) ++i;
      if (i >= len) break;
      while (i < len && IsConsonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool HasVowel(size_t len) const {
    for (size_t i = 0; i < len; ++i) {
      if (!IsConsonant(i)) return true;
    }
    return false;
  }

  bool EndsDoubleConsonant(size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && IsConsonant(len - 1);
  }

  // *o: stem ends consonant-vowel-consonant, last consonant not w, x or y.
  bool EndsCvc(size_t len) const {
    if (len < 3) return false;
    if (!IsConsonant(len - 3) || IsConsonant(len - 2) || !IsConsonant(len - 1))
      return false;
    char c = b_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool Ends(std::string_view s) const { return std::string_view(b_).ends_with(s); }

  size_t StemLen(std::string_view suffix) const { return b_.size() - suffix.size(); }

  void Replace(std::string_view suffix, std::string_view with) {
    b_.resize(StemLen(suffix));
    b_ += with;
  }

  // Longest matching suffix wins; its condition alone decides.
  template <size_t N>
  void ApplyLongest(const Rule (&rules)[N], int min_measure) {
    const Rule* best = nullptr;
    for (const Rule& r : rules) {
      if (Ends(r.suffix) && (!best || r.suffix.size() > best->suffix.size()))
        best = &r;
    }
    if (best && Measure(StemLen(best->suffix)) > min_measure)
      Replace(best->suffix, best->replacement);
  }

  void Step1a() {
    if (Ends("sses")) {
      Replace("sses", "ss");
    } else if (Ends("ies")) {
      Replace("ies", "i");
    } else if (Ends("ss")) {
    } else if (Ends("s")) {
      Replace("s", "");
    }
  }

  void Step1b() {
    if (Ends("eed")) {
      if (Measure(StemLen("eed")) > 0) Replace("eed", "ee");
      return;
    }
    std::string_view removed;
    if (Ends("ed") && HasVowel(StemLen("ed"))) {
      removed = "ed";
    } else if (Ends("ing") && HasVowel(StemLen("ing"))) {
      removed = "ing";
    } else {
      return;
    }
    Replace(removed, "");
    if (Ends("at") || Ends("bl") || Ends("iz")) {
      b_ += 'e';
    } else if (EndsDoubleConsonant(b_.size())) {
      char c = b_.back();
      if (c != 'l' && c != 's' && c != 'z') b_.pop_back();
    } else if (Measure(b_.size()) == 1 && EndsCvc(b_.size())) {
      b_ += 'e';
    }
  }

  void Step1c() {
    if (Ends("y") && HasVowel(StemLen("y"))) b_.back() = 'i';
  }

  void Step2() {
    static constexpr Rule kRules[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
        {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
        {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
        {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
        {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
        {"iviti", "ive"},   {"biliti", "ble"},
    };
    ApplyLongest(kRules, 0);
  }

  void Step3() {
    static constexpr Rule kRules[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    };
    ApplyLongest(kRules, 0);
  }

  void Step4() {
    static constexpr Rule kRules[] = {
        {"al", ""},  {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
        {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
        {"ent", ""}, {"ion", ""},  {"ou", ""},   {"ism", ""}, {"ate", ""},
        {"iti", ""}, {"ous", ""},  {"ive", ""},  {"ize", ""},
    };
    const Rule* best = nullptr;
    for (const Rule& r : kRules) {
      if (Ends(r.suffix) && (!best || r.suffix.size() > best->suffix.size()))
        best = &r;
    }
    if (!best) return;
    size_t stem = StemLen(best->suffix);
    if (best->suffix == "ion" &&
        (stem == 0 || (b_[stem - 1] != 's' && b_[stem - 1] != 't')))
      return;
    if (Measure(stem) > 1) b_.resize(stem);
  }

  void Step5a() {
    if (!Ends("e")) return;
    size_t stem = StemLen("e");
    int m = Measure(stem);
    if (m > 1 || (m == 1 && !EndsCvc(stem))) b_.resize(stem);
  }

  void Step5b() {
    if (Measure(b_.size()) > 1 && EndsDoubleConsonant(b_.size()) &&
        b_.back() == 'l')
      b_.pop_back();
  }

  std::string b_;
};

}  // namespace

std::string PorterStem(std::string_view word) {
  if (!std::all_of(word.begin(), word.end(),
                   [](char c) { return c >= 'a' && c <= 'z'; }))
    return std::string(word);
  return Stemmer(word).Run();
}

}  // namespace dischargekit
