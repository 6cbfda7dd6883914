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

// SemEval 2015 SDP format and the DM/PAS/PSD graph transforms.
#ifndef AMTOOL_SDP_HPP_
#define AMTOOL_SDP_HPP_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "amtool/algebra.hpp"
#include "amtool/graph.hpp"

namespace amtool {

struct SdpToken {
  std::string form;
  std::string lemma;
  std::string pos;
  bool top = false;
  bool pred = false;
  std::string frame = "_";
  std::vector<std::string> args;  // one cell per predicate column
  friend bool operator==(const SdpToken&, const SdpToken&) = default;
};

struct SdpInstance {
  std::string id;
  std::vector<SdpToken> tokens;
  friend bool operator==(const SdpInstance&, const SdpInstance&) = default;
};

inline constexpr std::string_view kSdpHeader = "#SDP 2015";

// The "#SDP 2015" header line is optional on input and always written.
std::vector<SdpInstance> ReadSdp(std::string_view text);
std::string WriteSdp(const std::vector<SdpInstance>& instances);

// Node ids are token indices; labels are word forms; roots are the tops.
SemGraph SdpToGraph(const SdpInstance& instance);
Alignment SdpAlignment(const SemGraph& graph);

// Rebuilds an instance from a graph. Forms, lemmas, POS and frames come
// from `base`; tops are the graph roots.
SdpInstance GraphToSdp(const SemGraph& graph, const Alignment& alignment, const SdpInstance& base);

inline constexpr std::string_view kArtificialLabel = "ART-ROOT";
inline constexpr std::string_view kArtRootEdge = "ART-ROOT";
inline constexpr std::string_view kArtTopEdge = "ART-TOP";

struct SdpRecord {
  bool artificial = false;
  std::vector<std::string> tops;
  std::vector<Node> dropped;  // single-node components without a top
};

struct PreprocessedSdp {
  SemGraph graph;  // exactly one root
  Alignment alignment;
  std::vector<AmToken> tokens;  // plus the artificial token when one was added
  SdpRecord record;
};

// Picks the attachment node of a component without a top.
using HeadSelector =
    std::function<std::string(const SemGraph& graph, const std::vector<std::string>& component)>;

std::vector<AmToken> SdpTokens(const SdpInstance& instance);
PreprocessedSdp PreprocessSdp(const SemGraph& graph, const std::vector<AmToken>& tokens,
                              const HeadSelector& head = {});
// Exact inverse given the record.
SemGraph InvertPreprocessSdp(const SemGraph& graph, const SdpRecord& record);
// Inverse for predicted graphs: drops the artificial node and reads tops
// from its edges.
SemGraph InvertPreprocessSdp(const SemGraph& graph, const Alignment& alignment, int artificial_token);

struct CoordinationRewrite {
  SemGraph graph;
  bool ambiguous = false;
  std::string detail;
  int rewritten = 0;
};

CoordinationRewrite RewritePsdCoordination(const SemGraph& graph);
SemGraph RevertPsdCoordination(const SemGraph& graph);

}  // namespace amtool

#endif  // AMTOOL_SDP_HPP_
