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

#ifndef DISCHARGEKIT_TOKENIZER_HPP_
#define DISCHARGEKIT_TOKENIZER_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace dischargekit {

// Half-open byte range of one token inside the tokenized text.
struct TokenSpan {
  size_t begin = 0;
  size_t end = 0;

  bool operator==(const TokenSpan&) const = default;
};

// Plain-text subword vocabulary: one entry per line, optionally followed by a
// tab and an integer rank. Blank lines are ignored; a later duplicate keeps
// the first occurrence.
class Vocabulary {
 public:
  static Vocabulary Load(const std::string& path);
  static Vocabulary Parse(std::string_view data);
  static Vocabulary FromEntries(std::vector<std::string> entries);

  bool Contains(std::string_view piece) const;
  size_t size() const { return entries_.size(); }
  size_t max_piece_bytes() const { return max_piece_bytes_; }
  const std::vector<std::string>& entries() const { return entries_; }

 private:
  struct PieceHash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> entries_;
  std::unordered_set<std::string, PieceHash, std::equal_to<>> index_;
  size_t max_piece_bytes_ = 0;
};

enum class TokenizerMode { kWhitespace, kSubword };

// Counts and truncates text in a configurable token unit. Whitespace mode
// splits on whitespace runs with punctuation kept attached. Subword mode
// first splits on whitespace, then segments each word greedily by the
// longest vocabulary entry that is a prefix of the remaining bytes; a
// position no entry covers yields a one-code-point token.
//
// Immutable after construction and safe to share across threads.
class Tokenizer {
 public:
  static Tokenizer Whitespace();
  static Tokenizer Subword(Vocabulary vocabulary);
  // kVocabularyNotLoaded when mode is kSubword and vocab_path is empty.
  static Tokenizer Create(TokenizerMode mode, const std::string& vocab_path);

  TokenizerMode mode() const { return mode_; }
  // "whitespace" or "subword(<n> entries)".
  std::string Label() const;

  std::vector<TokenSpan> Spans(std::string_view text) const;
  std::vector<std::string> Tokenize(std::string_view text) const;
  size_t Count(std::string_view text) const;

  // Longest prefix of text that ends on a token boundary and holds at most
  // budget tokens. Text already within budget is returned unchanged.
  std::string Truncate(std::string_view text, size_t budget) const;

 private:
  Tokenizer(TokenizerMode mode, std::shared_ptr<const Vocabulary> vocabulary)
      : mode_(mode), vocabulary_(std::move(vocabulary)) {}

  void SegmentWord(std::string_view text, size_t begin, size_t end,
                   std::vector<TokenSpan>& out) const;

  TokenizerMode mode_;
  std::shared_ptr<const Vocabulary> vocabulary_;
};

}  // namespace dischargekit

#endif  // DISCHARGEKIT_TOKENIZER_HPP_
