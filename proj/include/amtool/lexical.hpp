// Copyright 2026 The amtool Authors
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

#ifndef AMTOOL_LEXICAL_HPP_
#define AMTOOL_LEXICAL_HPP_

#include <map>
#include <string>
#include <string_view>

namespace amtool {

// Placeholder used for the lexical node's label inside delexicalized supertags.
inline constexpr std::string_view kLexMarker = "--LEX--";

// Hand-written lemma rewrites that let more labels be expressed relative to
// the word: weekday/month abbreviations and adverb -> adjective.
class ModifiedLemmaRules {
 public:
  static const ModifiedLemmaRules& Default();

  void AddExact(std::string lemma, std::string modified);
  void set_adverb_to_adjective(bool on) { adverb_to_adjective_ = on; }

  // `pos` may be empty (unknown); adverb rewriting then applies to any
  // "-ly" lemma, otherwise only to RB* tags.
  std::string Apply(const std::string& lemma, const std::string& pos = "") const;

 private:
  std::map<std::string, std::string> exact_;
  bool adverb_to_adjective_ = true;
};

// Template over $LEMMA$, $FORM$ and $MODLEMMA$; a literal '$' is written "$$".
struct LexPattern {
  std::string text;

  friend bool operator==(const LexPattern&, const LexPattern&) = default;
};

// Replaces the longest word-bounded occurrence of the lemma, form or
// modified lemma with its placeholder (ties: lemma, form, modified lemma).
// Labels without such an occurrence stay literal.
LexPattern Delexicalize(const std::string& label, const std::string& form,
                        const std::string& lemma, const std::string& modified_lemma);

std::string Relexicalize(const LexPattern& pattern, const std::string& form,
                         const std::string& lemma, const std::string& modified_lemma);

// Convenience overloads that derive the modified lemma with `rules`.
LexPattern Delexicalize(const std::string& label, const std::string& form,
                        const std::string& lemma, const std::string& pos,
                        const ModifiedLemmaRules& rules);
std::string Relexicalize(const LexPattern& pattern, const std::string& form,
                         const std::string& lemma, const std::string& pos,
                         const ModifiedLemmaRules& rules);

bool HasPlaceholder(const LexPattern& pattern);

// Lexical-node test: label (minus leading '_') shares a case-insensitive
// prefix of at least `min_prefix` characters with the form, lemma or
// modified lemma.
bool LabelSimilarToWord(const std::string& label, const std::string& form,
                        const std::string& lemma, const std::string& modified_lemma,
                        size_t min_prefix = 3);

}  // namespace amtool

#endif  // AMTOOL_LEXICAL_HPP_
