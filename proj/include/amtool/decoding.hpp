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

// Two-stage decoding: a maximum spanning arborescence for the unlabeled
// tree, then the best well-typed supertag and operation assignment for that
// fixed tree shape.
#ifndef AMTOOL_DECODING_HPP_
#define AMTOOL_DECODING_HPP_

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amtool/algebra.hpp"

namespace amtool {

struct Sentence {
  std::string id;
  std::string text;
  std::vector<AmToken> tokens;  // form/lemma/pos/ne are read
  size_t size() const { return tokens.size(); }
};

// Scores of arcs head -> dependent for heads 0..n and dependents 1..n.
class ArcScores {
 public:
  explicit ArcScores(int n = 0, double fill = 0.0)
      : n_(n), scores_(static_cast<size_t>((n + 1) * (n + 1)), fill) {}
  int n() const { return n_; }
  double at(int head, int dep) const { return scores_[Index(head, dep)]; }
  void set(int head, int dep, double score) { scores_[Index(head, dep)] = score; }

 private:
  size_t Index(int head, int dep) const { return static_cast<size_t>(head * (n_ + 1) + dep); }
  int n_;
  std::vector<double> scores_;
};

struct SupertagCandidate {
  std::optional<AsGraph> graph;  // nullopt is the empty supertag
  std::optional<LexPattern> lex;
  double score = 0;
};

// Per token (index 0 is token 1), sorted by descending score.
using SupertagCandidates = std::vector<std::vector<SupertagCandidate>>;

// Operation scores for one (head, dependent) pair; operations that are not
// listed score `fallback`.
struct LabelScores {
  std::map<Operation, double> scores;
  double fallback = -1e9;
  double Score(const Operation& op) const {
    auto it = scores.find(op);
    return it == scores.end() ? fallback : it->second;
  }
};

class ScoreModel {
 public:
  virtual ~ScoreModel() = default;
  virtual SupertagCandidates Supertags(const Sentence& sentence, size_t k) const = 0;
  virtual ArcScores Arcs(const Sentence& sentence) const = 0;
  virtual LabelScores Labels(const Sentence& sentence, int head, int dep) const = 0;
};

// heads[d] for d = 1..n (heads[0] unused). Ties prefer the smaller head.
std::vector<int> MaxArborescence(const ArcScores& scores);
double TreeScore(const ArcScores& scores, const std::vector<int>& heads);

struct DecodeOptions {
  size_t k = 6;
  // States kept per candidate and node; 0 keeps all.
  size_t beam = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct Decoded {
  AmDepTree tree;
  double score = 0;
};

using LabelScorer = std::function<LabelScores(int head, int dep)>;

// Best well-typed assignment for the fixed tree `heads`. The first k
// non-empty candidates of each token are used, plus its first empty
// candidate if listed. nullopt when no well-typed assignment exists.
// Throws kTimeout past the deadline.
std::optional<Decoded> FixedTreeDecode(const Sentence& sentence, const std::vector<int>& heads,
                                       const SupertagCandidates& candidates, const LabelScorer& labels,
                                       const DecodeOptions& options = {});

// Objective of a complete tree under the same scores (for comparisons).
double AssignmentScore(const AmDepTree& tree, const std::vector<int>& candidate_index,
                       const SupertagCandidates& candidates, const LabelScorer& labels);

struct ParseConfig {
  size_t k = 6;
  double time_budget_secs = 60;
  size_t beam = 0;
};

struct ParseResult {
  std::optional<AmDepTree> tree;  // absent for the dummy graph
  Evaluation evaluation;
  size_t k_used = 0;
  std::vector<std::string> log;
};

// Retries with k-1, k-2, ... when decoding fails or runs out of time; at
// k = 0 the result is a one-node graph on the first token.
ParseResult Parse(const Sentence& sentence, const ScoreModel& model, const ParseConfig& config = {});

}  // namespace amtool

#endif  // AMTOOL_DECODING_HPP_
