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

// Edge-grouping and source-naming tables, one per graphbank.
#ifndef AMTOOL_HEURISTICS_HPP_
#define AMTOOL_HEURISTICS_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "amtool/algebra.hpp"

namespace amtool {

enum class Bank { kDM, kPAS, kPSD, kEDS };

std::string_view BankName(Bank bank);
Bank ParseBank(std::string_view name);

// Glob with `*` matching any (possibly empty) substring. On success the
// text matched by the first `*` is stored in `capture`.
bool GlobMatch(std::string_view pattern, std::string_view text, std::string* capture = nullptr);

struct HeuristicRule {
  std::string pattern;
  bool to_origin = true;
  // May contain `*`, replaced by the pattern's first wildcard capture.
  std::string source;
  OpKind op = OpKind::kApp;
  friend bool operator==(const HeuristicRule&, const HeuristicRule&) = default;
};

enum class CoordinationMode { kNone, kEdgeLabel, kCommonArgument };

struct PatternConfig {
  CoordinationMode coordination = CoordinationMode::kNone;
  std::string coordination_label;         // glob, for kEdgeLabel
  std::vector<std::string> raising_labels;  // globs
  std::string comparative_label;          // empty = none
  friend bool operator==(const PatternConfig&, const PatternConfig&) = default;
};

struct RuleMatch {
  size_t index;
  bool to_origin;
  std::string source;
  OpKind op;
};

struct HeuristicTable {
  Bank bank = Bank::kDM;
  std::vector<HeuristicRule> rules;
  std::set<std::string> target_override_labels;
  bool word_order_disambiguation = false;
  PatternConfig patterns;

  // First matching rule; nullopt if no rule matches.
  std::optional<RuleMatch> Match(const std::string& label) const;
  friend bool operator==(const HeuristicTable&, const HeuristicTable&) = default;
};

// Default op kind for a source name: argument-like sources apply,
// modifier-like sources modify.
OpKind DefaultOpKind(std::string_view source);

HeuristicTable ParseHeuristicTable(std::string_view text);
std::string FormatHeuristicTable(const HeuristicTable& table);

const HeuristicTable& BuiltinTable(Bank bank);
std::string_view BuiltinTableText(Bank bank);

HeuristicTable RandomizeTable(const std::set<std::string>& labels, uint64_t seed,
                              const HeuristicTable& base);

}  // namespace amtool

#endif  // AMTOOL_HEURISTICS_HPP_
