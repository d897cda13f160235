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

#include "tokenizer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "text_util.hpp"

namespace dischargekit {

namespace {

size_t Utf8SequenceLength(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;  // stray continuation byte
}

}  // namespace

Vocabulary Vocabulary::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kVocabularyNotLoaded,
                "cannot open vocabulary file '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str());
}

Vocabulary Vocabulary::Parse(std::string_view data) {
  std::vector<std::string> entries;
  for (std::string_view line : text::SplitLines(data)) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    size_t tab = line.find('\t');
    std::string_view piece = line.substr(0, tab);
    if (tab != std::string_view::npos) {
      std::string_view rank = text::Trim(line.substr(tab + 1));
      if (rank.empty() ||
          !std::all_of(rank.begin(), rank.end(), text::IsDigit)) {
        throw Error(ErrorCode::kMalformedRecord,
                    "vocabulary line " + std::to_string(entries.size()) +
                        ": rank must be a non-negative integer");
      }
    }
    if (piece.empty()) continue;
    if (std::any_of(piece.begin(), piece.end(), text::IsSpace)) {
      throw Error(ErrorCode::kMalformedRecord,
                  "vocabulary entry '" + std::string(piece) +
                      "' contains whitespace");
    }
    entries.emplace_back(piece);
  }
  return FromEntries(std::move(entries));
}

Vocabulary Vocabulary::FromEntries(std::vector<std::string> entries) {
  Vocabulary v;
  v.entries_.reserve(entries.size());
  for (auto& e : entries) {
    if (e.empty() || !v.index_.insert(e).second) continue;
    v.max_piece_bytes_ = std::max(v.max_piece_bytes_, e.size());
    v.entries_.push_back(std::move(e));
  }
  return v;
}

bool Vocabulary::Contains(std::string_view piece) const {
  return index_.contains(piece);
}

Tokenizer Tokenizer::Whitespace() {
  return Tokenizer(TokenizerMode::kWhitespace, nullptr);
}

Tokenizer Tokenizer::Subword(Vocabulary vocabulary) {
  return Tokenizer(TokenizerMode::kSubword,
                   std::make_shared<const Vocabulary>(std::move(vocabulary)));
}

Tokenizer Tokenizer::Create(TokenizerMode mode, const std::string& vocab_path) {
  if (mode == TokenizerMode::kWhitespace) return Whitespace();
  if (vocab_path.empty()) {
    throw Error(ErrorCode::kVocabularyNotLoaded,
                "subword tokenizer requires a vocabulary file");
  }
  return Subword(Vocabulary::Load(vocab_path));
}

std::string Tokenizer::Label() const {
  if (mode_ == TokenizerMode::kWhitespace) return "whitespace";
  return "subword(" + std::to_string(vocabulary_->size()) + " entries)";
}

void Tokenizer::SegmentWord(std::string_view text, size_t begin, size_t end,
                            std::vector<TokenSpan>& out) const {
  const Vocabulary& vocab = *vocabulary_;
  size_t pos = begin;
  while (pos < end) {
    size_t longest = std::min(vocab.max_piece_bytes(), end - pos);
    size_t take = 0;
    for (size_t len = longest; len > 0; --len) {
      if (vocab.Contains(text.substr(pos, len))) {
        take = len;
        break;
      }
    }
    if (take == 0) {
      take = std::min(Utf8SequenceLength(static_cast<unsigned char>(text[pos])),
                      end - pos);
    }
    out.push_back({pos, pos + take});
    pos += take;
  }
}

std::vector<TokenSpan> Tokenizer::Spans(std::string_view text) const {
  std::vector<TokenSpan> spans;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text::IsSpace(text[i])) ++i;
    if (i == text.size()) break;
    size_t start = i;
    while (i < text.size() && !text::IsSpace(text[i])) ++i;
    if (mode_ == TokenizerMode::kWhitespace) {
      spans.push_back({start, i});
    } else {
      SegmentWord(text, start, i, spans);
    }
  }
  return spans;
}

std::vector<std::string> Tokenizer::Tokenize(std::string_view text) const {
  std::vector<std::string> tokens;
  for (const TokenSpan& s : Spans(text)) {
    tokens.emplace_back(text.substr(s.begin, s.end - s.begin));
  }
  return tokens;
}

size_t Tokenizer::Count(std::string_view text) const {
  return Spans(text).size();
}

std::string Tokenizer::Truncate(std::string_view text, size_t budget) const {
  std::vector<TokenSpan> spans = Spans(text);
  if (spans.size() <= budget) return std::string(text);
  if (budget == 0) return {};
  return std::string(text.substr(0, spans[budget - 1].end));
}

}  // namespace dischargekit
