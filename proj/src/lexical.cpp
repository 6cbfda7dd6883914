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

#include "amtool/lexical.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace amtool {

namespace {

constexpr std::string_view kLemma = "$LEMMA$";
constexpr std::string_view kForm = "$FORM$";
constexpr std::string_view kModLemma = "$MODLEMMA$";

bool IsAlnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string Escape(std::string_view literal) {
  std::string out;
  for (char c : literal) {
    if (c == '$') out += '$';
    out += c;
  }
  return out;
}

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

const ModifiedLemmaRules& ModifiedLemmaRules::Default() {
  static const ModifiedLemmaRules rules = [] {
    ModifiedLemmaRules r;
    const std::array<std::pair<const char*, const char*>, 19> abbreviations = {{
        {"Monday", "Mon"},     {"Tuesday", "Tue"},   {"Wednesday", "Wed"},
        {"Thursday", "Thu"},   {"Friday", "Fri"},    {"Saturday", "Sat"},
        {"Sunday", "Sun"},     {"January", "Jan"},   {"February", "Feb"},
        {"March", "Mar"},      {"April", "Apr"},     {"June", "Jun"},
        {"July", "Jul"},       {"August", "Aug"},    {"September", "Sep"},
        {"October", "Oct"},    {"November", "Nov"},  {"December", "Dec"},
        {"percent", "%"},
    }};
    for (const auto& [lemma, modified] : abbreviations) r.AddExact(lemma, modified);
    return r;
  }();
  return rules;
}

void ModifiedLemmaRules::AddExact(std::string lemma, std::string modified) {
  exact_[std::move(lemma)] = std::move(modified);
}

std::string ModifiedLemmaRules::Apply(const std::string& lemma, const std::string& pos) const {
  if (auto it = exact_.find(lemma); it != exact_.end()) return it->second;
  const bool adverb = pos.empty() || pos == "_" || pos.starts_with("RB");
  if (adverb_to_adjective_ && adverb && lemma.size() > 4 && lemma.ends_with("ly")) {
    if (lemma.ends_with("ily")) return lemma.substr(0, lemma.size() - 3) + "y";
    if (lemma.ends_with("ably") || lemma.ends_with("ibly")) {
      return lemma.substr(0, lemma.size() - 1) + "e";
    }
    return lemma.substr(0, lemma.size() - 2);
  }
  return lemma;
}

LexPattern Delexicalize(const std::string& label, const std::string& form,
                        const std::string& lemma, const std::string& modified_lemma) {
  const std::array<std::pair<std::string_view, const std::string*>, 3> candidates = {{
      {kLemma, &lemma}, {kForm, &form}, {kModLemma, &modified_lemma}}};
  size_t best_pos = std::string::npos;
  size_t best_len = 0;
  std::string_view best_placeholder;
  for (const auto& [placeholder, word] : candidates) {
    if (word->empty() || word->size() <= best_len) continue;
    for (size_t at = label.find(*word); at != std::string::npos; at = label.find(*word, at + 1)) {
      const size_t end = at + word->size();
      const bool left_ok = at == 0 || !IsAlnum(label[at - 1]);
      const bool right_ok = end == label.size() || !IsAlnum(label[end]);
      if (left_ok && right_ok) {
        best_pos = at;
        best_len = word->size();
        best_placeholder = placeholder;
        break;
      }
    }
  }
  if (best_pos == std::string::npos) return LexPattern{Escape(label)};
  return LexPattern{Escape(std::string_view(label).substr(0, best_pos)) +
                    std::string(best_placeholder) +
                    Escape(std::string_view(label).substr(best_pos + best_len))};
}

std::string Relexicalize(const LexPattern& pattern, const std::string& form,
                         const std::string& lemma, const std::string& modified_lemma) {
  const std::string& p = pattern.text;
  std::string out;
  for (size_t i = 0; i < p.size();) {
    if (p[i] != '$') {
      out += p[i++];
      continue;
    }
    std::string_view rest = std::string_view(p).substr(i);
    if (rest.starts_with("$$")) {
      out += '$';
      i += 2;
    } else if (rest.starts_with(kLemma)) {
      out += lemma;
      i += kLemma.size();
    } else if (rest.starts_with(kForm)) {
      out += form;
      i += kForm.size();
    } else if (rest.starts_with(kModLemma)) {
      out += modified_lemma;
      i += kModLemma.size();
    } else {
      out += p[i++];
    }
  }
  return out;
}

LexPattern Delexicalize(const std::string& label, const std::string& form,
                        const std::string& lemma, const std::string& pos,
                        const ModifiedLemmaRules& rules) {
  return Delexicalize(label, form, lemma, rules.Apply(lemma, pos));
}

std::string Relexicalize(const LexPattern& pattern, const std::string& form,
                         const std::string& lemma, const std::string& pos,
                         const ModifiedLemmaRules& rules) {
  return Relexicalize(pattern, form, lemma, rules.Apply(lemma, pos));
}

bool HasPlaceholder(const LexPattern& pattern) {
  const std::string& p = pattern.text;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] != '$') continue;
    std::string_view rest = std::string_view(p).substr(i);
    if (rest.starts_with("$$")) {
      ++i;
      continue;
    }
    if (rest.starts_with(kLemma) || rest.starts_with(kForm) || rest.starts_with(kModLemma)) {
      return true;
    }
  }
  return false;
}

bool LabelSimilarToWord(const std::string& label, const std::string& form,
                        const std::string& lemma, const std::string& modified_lemma,
                        size_t min_prefix) {
  std::string core = Lower(label);
  while (!core.empty() && core.front() == '_') core.erase(core.begin());
  for (const std::string* word : {&form, &lemma, &modified_lemma}) {
    std::string w = Lower(*word);
    if (w.empty()) continue;
    size_t common = 0;
    while (common < w.size() && common < core.size() && w[common] == core[common]) ++common;
    if (common >= min_prefix) return true;
    if (common == w.size() && (core.size() == w.size() || !IsAlnum(core[w.size()]))) return true;
  }
  return false;
}

}  // namespace amtool
