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

// Graph -> AM dependency tree.
#ifndef AMTOOL_DECOMPOSITION_HPP_
#define AMTOOL_DECOMPOSITION_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "amtool/algebra.hpp"
#include "amtool/graph.hpp"
#include "amtool/heuristics.hpp"
#include "amtool/lexical.hpp"

namespace amtool {

enum class NonDecomposableReason {
  kMultipleRootsNeeded,
  kUnmatchedReentrancy,
  kNotATree,
  kIllTyped,
  kRoundTripMismatch,
};

std::string_view ReasonName(NonDecomposableReason reason);

class NonDecomposable : public std::runtime_error {
 public:
  NonDecomposable(NonDecomposableReason reason, const std::string& detail)
      : std::runtime_error(detail), reason_(reason) {}
  NonDecomposableReason reason() const { return reason_; }

 private:
  NonDecomposableReason reason_;
};

struct GroupedEdge {
  Edge edge;
  std::string owner;
  std::string open;
  std::string source;
  OpKind op = OpKind::kApp;
  size_t rule = 0;
  bool internal = false;
};

struct EdgeGrouping {
  std::vector<GroupedEdge> edges;
};

// Throws Error(kUnmatchedLabel) when a label matches no rule.
EdgeGrouping GroupEdges(const SemGraph& graph, const HeuristicTable& table);

// Marks token-internal edges and gives every open slot of a token a
// distinct source name.
void AssignSources(EdgeGrouping& grouping, const Alignment& alignment,
                   const HeuristicTable& table);

// Per-token constants with flat types. Tokens without nodes are absent.
// Throws NonDecomposable(kMultipleRootsNeeded).
std::map<int, AsGraph> BuildConstants(const SemGraph& graph, const EdgeGrouping& grouping,
                                      const Alignment& alignment);

// Source renamings of `constant`, most preferred first.
std::vector<AsGraph> EnumerateVariants(const AsGraph& constant);

struct DecompositionInput {
  std::string id;
  std::string text;
  SemGraph graph;  // exactly one root
  Alignment alignment;
  std::vector<AmToken> tokens;  // form/lemma/pos/ne are used
};

struct DecomposeOptions {
  size_t variant_cap = 1000;
  const ModifiedLemmaRules* lemma_rules = nullptr;  // default rules if null
};

struct DecompositionResult {
  std::optional<AmDepTree> tree;
  NonDecomposableReason reason = NonDecomposableReason::kNotATree;
  std::string detail;
  bool ok() const { return tree.has_value(); }
};

DecompositionResult Decompose(const DecompositionInput& input, const HeuristicTable& table,
                              const DecomposeOptions& options = {});

// Renames node ids to n0, n1, ... in serialization order.
AsGraph CanonicalizeIds(const AsGraph& graph);

}  // namespace amtool

#endif  // AMTOOL_DECOMPOSITION_HPP_
