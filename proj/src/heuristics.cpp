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

#include "amtool/heuristics.hpp"

#include <random>
#include <sstream>

#include "amtool/error.hpp"

namespace amtool {

namespace builtin {
extern const std::string_view k_dm;
extern const std::string_view k_pas;
extern const std::string_view k_psd;
extern const std::string_view k_eds;
}  // namespace builtin

std::string_view BankName(Bank bank) {
  switch (bank) {
    case Bank::kDM: return "DM";
    case Bank::kPAS: return "PAS";
    case Bank::kPSD: return "PSD";
    case Bank::kEDS: return "EDS";
  }
  return "DM";
}

Bank ParseBank(std::string_view name) {
  std::string upper;
  for (char c : name) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "DM") return Bank::kDM;
  if (upper == "PAS") return Bank::kPAS;
  if (upper == "PSD") return Bank::kPSD;
  if (upper == "EDS") return Bank::kEDS;
  throw Error(ErrorCode::kSyntax, "unknown graphbank '" + std::string(name) + "'");
}

bool GlobMatch(std::string_view pattern, std::string_view text, std::string* capture) {
  // Iterative matcher; the first `*` capture is the shortest that
  // still lets the whole pattern match.
  const size_t star = pattern.find('*');
  if (star == std::string_view::npos) return pattern == text;
  std::string_view prefix = pattern.substr(0, star);
  std::string_view rest = pattern.substr(star + 1);
  if (!text.starts_with(prefix)) return false;
  for (size_t len = 0; prefix.size() + len <= text.size(); ++len) {
    if (GlobMatch(rest, text.substr(prefix.size() + len))) {
      if (capture != nullptr) *capture = std::string(text.substr(prefix.size(), len));
      return true;
    }
  }
  return false;
}

std::optional<RuleMatch> HeuristicTable::Match(const std::string& label) const {
  for (size_t i = 0; i < rules.size(); ++i) {
    std::string capture;
    if (!GlobMatch(rules[i].pattern, label, &capture)) continue;
    std::string source = rules[i].source;
    if (size_t p = source.find('*'); p != std::string::npos) source.replace(p, 1, capture);
    if (!IsValidSourceName(source)) {
      throw Error(ErrorCode::kUnmatchedLabel,
                  "rule '" + rules[i].pattern + "' yields invalid source '" + source + "'");
    }
    return RuleMatch{i, rules[i].to_origin, source, rules[i].op};
  }
  return std::nullopt;
}

OpKind DefaultOpKind(std::string_view source) {
  static const std::set<std::string_view> kMod = {"M", "D", "comp", "poss", "coord", "pnct"};
  std::string_view base = source;
  while (!base.empty() && std::isdigit(static_cast<unsigned char>(base.back()))) {
    base.remove_suffix(1);
  }
  return kMod.contains(base) ? OpKind::kMod : OpKind::kApp;
}

namespace {

std::vector<std::string> Words(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

HeuristicTable ParseHeuristicTable(std::string_view text) {
  HeuristicTable table;
  size_t pos = 0;
  size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kSyntax, "table line " + std::to_string(line_no) + ": " + what);
  };
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto words = Words(line);
    if (words.empty() || words[0].starts_with("#")) continue;
    if (words[0].starts_with("@")) {
      const std::string key = words[0].substr(1);
      std::vector<std::string> args(words.begin() + 1, words.end());
      if (key == "bank" && args.size() == 1) {
        table.bank = ParseBank(args[0]);
      } else if (key == "coordination" && !args.empty()) {
        if (args[0] == "none" && args.size() == 1) {
          table.patterns.coordination = CoordinationMode::kNone;
        } else if (args[0] == "common-argument" && args.size() == 1) {
          table.patterns.coordination = CoordinationMode::kCommonArgument;
        } else if (args[0] == "edge-label" && args.size() == 2) {
          table.patterns.coordination = CoordinationMode::kEdgeLabel;
          table.patterns.coordination_label = args[1];
        } else {
          fail("bad @coordination");
        }
      } else if (key == "raising") {
        table.patterns.raising_labels = args;
      } else if (key == "comparative" && args.size() == 1) {
        table.patterns.comparative_label = args[0];
      } else if (key == "target-override") {
        table.target_override_labels.insert(args.begin(), args.end());
      } else if (key == "word-order" && args.empty()) {
        table.word_order_disambiguation = true;
      } else {
        fail("unknown directive '" + words[0] + "'");
      }
      continue;
    }
    if (words.size() != 4) fail("expected 4 fields");
    HeuristicRule rule;
    rule.pattern = words[0];
    if (words[1] != "origin" && words[1] != "target") fail("side must be origin or target");
    rule.to_origin = words[1] == "origin";
    rule.source = words[2];
    if (words[3] != "app" && words[3] != "mod") fail("op must be app or mod");
    rule.op = words[3] == "app" ? OpKind::kApp : OpKind::kMod;
    table.rules.push_back(rule);
  }
  return table;
}

std::string FormatHeuristicTable(const HeuristicTable& table) {
  std::string out = "@bank " + std::string(BankName(table.bank)) + "\n";
  switch (table.patterns.coordination) {
    case CoordinationMode::kNone:
      out += "@coordination none\n";
      break;
    case CoordinationMode::kEdgeLabel:
      out += "@coordination edge-label " + table.patterns.coordination_label + "\n";
      break;
    case CoordinationMode::kCommonArgument:
      out += "@coordination common-argument\n";
      break;
  }
  if (!table.patterns.raising_labels.empty()) {
    out += "@raising";
    for (const auto& l : table.patterns.raising_labels) out += " " + l;
    out += "\n";
  }
  if (!table.patterns.comparative_label.empty()) {
    out += "@comparative " + table.patterns.comparative_label + "\n";
  }
  if (table.word_order_disambiguation) out += "@word-order\n";
  if (!table.target_override_labels.empty()) {
    out += "@target-override";
    for (const auto& l : table.target_override_labels) out += " " + l;
    out += "\n";
  }
  for (const auto& r : table.rules) {
    out += r.pattern + "\t" + (r.to_origin ? "origin" : "target") + "\t" + r.source + "\t" +
           (r.op == OpKind::kApp ? "app" : "mod") + "\n";
  }
  return out;
}

std::string_view BuiltinTableText(Bank bank) {
  switch (bank) {
    case Bank::kDM: return builtin::k_dm;
    case Bank::kPAS: return builtin::k_pas;
    case Bank::kPSD: return builtin::k_psd;
    case Bank::kEDS: return builtin::k_eds;
  }
  return builtin::k_dm;
}

const HeuristicTable& BuiltinTable(Bank bank) {
  static const HeuristicTable kTables[] = {
      ParseHeuristicTable(builtin::k_dm), ParseHeuristicTable(builtin::k_pas),
      ParseHeuristicTable(builtin::k_psd), ParseHeuristicTable(builtin::k_eds)};
  return kTables[static_cast<int>(bank)];
}

HeuristicTable RandomizeTable(const std::set<std::string>& labels, uint64_t seed,
                              const HeuristicTable& base) {
  static const std::vector<std::string> kPool = {"S",    "O",     "O2",   "O3", "OO",
                                                 "M",    "D",     "comp", "poss",
                                                 "coord", "pnct", "op"};
  std::mt19937_64 rng(seed);
  HeuristicTable table = base;
  table.rules.clear();
  for (const auto& label : labels) {
    HeuristicRule rule;
    rule.pattern = label;
    rule.to_origin = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    rule.source = kPool[std::uniform_int_distribution<size_t>(0, kPool.size() - 1)(rng)];
    rule.op = DefaultOpKind(rule.source);
    // Labels are literal here; a '*' in a label would act as a wildcard.
    table.rules.push_back(rule);
  }
  table.rules.push_back({"*", true, "M", OpKind::kMod});
  return table;
}

}  // namespace amtool
