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

#ifndef AMTOOL_ALGEBRA_HPP_
#define AMTOOL_ALGEBRA_HPP_

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "amtool/asgraph.hpp"
#include "amtool/graph.hpp"
#include "amtool/lexical.hpp"
#include "amtool/request_type.hpp"

namespace amtool {

enum class OpKind { kApp, kMod, kIgnore, kRoot };

// Label of a dependency edge: APP_s, MOD_s, IGNORE or ROOT.
struct Operation {
  OpKind kind = OpKind::kIgnore;
  std::string source;

  static Operation App(std::string s) { return {OpKind::kApp, std::move(s)}; }
  static Operation Mod(std::string s) { return {OpKind::kMod, std::move(s)}; }
  static Operation Ignore() { return {OpKind::kIgnore, {}}; }
  static Operation Root() { return {OpKind::kRoot, {}}; }

  std::string ToString() const;
  // Throws kSyntax.
  static Operation Parse(const std::string& text);

  friend auto operator<=>(const Operation&, const Operation&) = default;
};

// Type-level counterparts of Apply/Modify; they throw the same errors.
RequestType ApplyType(const std::string& source, const RequestType& head, const RequestType& arg);
RequestType ModifyType(const std::string& source, const RequestType& head,
                       const RequestType& modifier);

// Fills head's `source` node with arg's root. Same-named sources unify;
// sources only the argument has become sources of the result.
// Throws kMissingSource, kTypeMismatch, kLabelConflict.
AsGraph Apply(const std::string& source, const AsGraph& head, const AsGraph& arg);

// Attaches the modifier's `source` node at head's root; the modifier's root
// marker is dropped. Throws kMissingSource, kNonEmptyRequest,
// kUnmatchedModifierSource, kTypeMismatch, kLabelConflict.
AsGraph Modify(const std::string& source, const AsGraph& head, const AsGraph& modifier);

struct AmToken {
  std::string form;
  std::string lemma = "_";
  std::string pos = "_";
  std::string ne = "_";
  // nullopt is the empty supertag (no semantic contribution).
  std::optional<AsGraph> supertag;
  std::optional<LexPattern> lex_label;
  int head = 0;
  Operation edge = Operation::Ignore();
};

// Tokens are 1-based in `tokens[i - 1]`; head 0 is the artificial root.
struct AmDepTree {
  std::string id;
  std::string text;
  std::vector<AmToken> tokens;

  size_t size() const { return tokens.size(); }
  const AmToken& at(int index) const { return tokens.at(static_cast<size_t>(index - 1)); }
  AmToken& at(int index) { return tokens.at(static_cast<size_t>(index - 1)); }
  std::vector<int> Children(int index) const;
  // Index of the token attached with ROOT, or 0.
  int RootChild() const;

  // Structural invariants; throws kMalformedTree.
  void Validate() const;

  // The token's supertag with the lexical marker replaced by its
  // relexicalized label.
  std::optional<AsGraph> Constant(int index) const;
};

// Final type of the ROOT child's subtree, computed over types only.
// Throws kIllTyped (with token and operation) or kMalformedTree.
RequestType CheckWellTyped(const AmDepTree& tree);
bool IsWellTyped(const AmDepTree& tree);

struct EvaluateOptions {
  // When set, admissible child orders are explored in shuffled order.
  std::mt19937_64* shuffle = nullptr;
};

struct Evaluation {
  SemGraph graph;
  // Every node of `graph` -> the token whose constant contributed it.
  Alignment alignment;
};

// Bottom-up evaluation. Throws kIllTyped, kMalformedTree and algebra errors
// (prefixed with the offending token).
Evaluation Evaluate(const AmDepTree& tree, const EvaluateOptions& options = {});

struct ChildType {
  Operation op;
  RequestType type;
};

// Searches an order in which every child operation is defined starting
// from `initial`. Returns the order and the final type, or nullopt.
std::optional<std::pair<std::vector<size_t>, RequestType>> FindAdmissibleOrder(
    const RequestType& initial, const std::vector<ChildType>& children,
    std::mt19937_64* shuffle = nullptr);

}  // namespace amtool

#endif  // AMTOOL_ALGEBRA_HPP_
