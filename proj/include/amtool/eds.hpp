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

// EDS instances in a line-based text format, and the span handling that
// turns them into token-aligned graphs and back.
//
//   #id 20001
//   #text The cat sleeps.
//   top e3
//   x1:_the_q<0:3>
//   x2:_cat_n_1<4:7>
//   e3:_sleep_v_1<8:15>
//   x1 BV x2
//   e3 ARG1 x2
//
// Instances are separated by blank lines. A constant argument follows the
// span as ("value").
#ifndef AMTOOL_EDS_HPP_
#define AMTOOL_EDS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amtool/decomposition.hpp"
#include "amtool/graph.hpp"
#include "amtool/lexical.hpp"

namespace amtool {

struct EdsNode {
  std::string id;
  std::string label;
  int begin = 0;
  int end = 0;
  std::optional<std::string> carg;
  friend bool operator==(const EdsNode&, const EdsNode&) = default;
};

struct EdsEdge {
  std::string from;
  std::string role;
  std::string to;
  friend bool operator==(const EdsEdge&, const EdsEdge&) = default;
};

struct EdsInstance {
  std::string id;
  std::string text;
  std::string top;
  std::vector<EdsNode> nodes;
  std::vector<EdsEdge> edges;

  const EdsNode* Find(const std::string& node_id) const;
  // Spans inside the text, top present, edge endpoints present.
  void Validate() const;
  friend bool operator==(const EdsInstance&, const EdsInstance&) = default;
};

std::vector<EdsInstance> ReadEds(std::string_view text);
std::string WriteEds(const std::vector<EdsInstance>& instances);

// Character offsets, end exclusive.
struct EdsToken {
  std::string form;
  int begin = 0;
  int end = 0;
  friend bool operator==(const EdsToken&, const EdsToken&) = default;
};

// Whitespace tokenization; hyphenated words are split and the hyphen
// dropped; leading brackets/quotes and trailing punctuation become tokens
// of their own.
std::vector<EdsToken> TokenizeEds(std::string_view text);

// Tokens (1-based) whose characters overlap [begin, end).
std::vector<int> OverlappingTokens(const std::vector<EdsToken>& tokens, int begin, int end);

bool IsPunctuation(const EdsToken& token);
// Overlapping tokens, ignoring punctuation unless the span holds nothing
// else.
std::vector<int> SpanTokens(const std::vector<EdsToken>& tokens, int begin, int end);
// The token's span widened over directly attached punctuation.
std::pair<int, int> AtomicSpan(const std::vector<EdsToken>& tokens, int token);

// Node -> token. Nodes spanning one token go to it. Nodes spanning several
// are handled left to right and go to the leftmost token of an already
// aligned neighbour inside their span, else to the leftmost token of the
// span. Throws kUnalignableNode.
Alignment AssignEdsSpans(const EdsInstance& eds, const std::vector<EdsToken>& tokens);

inline constexpr std::string_view kComplexSuffix = "@@C";
inline constexpr std::string_view kCargEdge = "carg";

struct EdsOptions {
  bool delete_hndl = true;
};

// Parser tokens: the form, lowercased as lemma.
std::vector<AmToken> EdsAmTokens(const std::vector<EdsToken>& tokens);

struct PreparedEds {
  DecompositionInput input;
  std::vector<EdsToken> tokens;
  int deleted_hndl = 0;
};

// Graph for decomposition: labels of nodes spanning several tokens get the
// complex suffix; each constant argument becomes a node "<id>.carg" behind
// a carg edge; lemmas are lowercased forms.
PreparedEds PrepareEds(const EdsInstance& eds, const EdsOptions& options = {});

// R-HNDL / L-HNDL edges whose removal keeps the graph as connected as it
// was. Returns the number removed.
int DeleteHandleEdges(SemGraph& graph);

struct RestoreOptions {
  // Complex nodes without children take their token's span instead of
  // failing.
  bool token_fallback = false;
};

// Plain graph view for graph-level metrics: one node per EDS node labeled
// with its predicate, constant arguments as "<id>.carg" children behind a
// carg edge, root = top. Spans are not represented.
SemGraph EdsToGraph(const EdsInstance& eds);

// Inverse of PrepareEds for a predicted graph. Throws kChildlessComplexNode.
EdsInstance RestoreSpans(const SemGraph& graph, const Alignment& alignment,
                         const std::vector<EdsToken>& tokens, const RestoreOptions& options = {});

}  // namespace amtool

#endif  // AMTOOL_EDS_HPP_
