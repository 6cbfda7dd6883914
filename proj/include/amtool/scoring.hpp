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

#ifndef AMTOOL_SCORING_HPP_
#define AMTOOL_SCORING_HPP_

#include <map>
#include <string>
#include <vector>

#include "amtool/decoding.hpp"

namespace amtool {

// Tokens of a tree with supertags, heads and edges cleared.
Sentence SentenceOf(const AmDepTree& tree);

// Scores 0 for the gold supertags, arcs and labels of a known sentence and
// -1000 for everything else. Sentences are looked up by id.
class OracleModel : public ScoreModel {
 public:
  static constexpr double kWrong = -1000;

  explicit OracleModel(const std::vector<AmDepTree>& gold);

  // All three throw kUnknownSentence for an id that is not in the corpus or
  // whose token count differs.
  SupertagCandidates Supertags(const Sentence& sentence, size_t k) const override;
  ArcScores Arcs(const Sentence& sentence) const override;
  LabelScores Labels(const Sentence& sentence, int head, int dep) const override;

 private:
  const AmDepTree& Gold(const Sentence& sentence) const;
  std::map<std::string, AmDepTree> gold_;
};

// "root" for head 0, otherwise the signed distance bucket of dep - head:
// +1 +2 +3 +4-6 +7+ and the negative counterparts.
std::string DistanceBucket(int head, int dep);

// Add-alpha smoothed relative frequencies with back-off.
//   supertag | (lemma, pos)  ->  supertag | pos  ->  supertag
//   operation | (head pos, dep pos, bucket)  ->  operation | bucket  ->  operation
//   arc exists | (head pos, dep pos, bucket)  ->  arc | bucket  ->  arc
// A condition that was never observed falls through to the next level.
// Scores are natural-log probabilities.
class CountModel : public ScoreModel {
 public:
  static constexpr int kFormatVersion = 1;
  static constexpr const char* kRootPos = "<root>";

  // Throws kEmptyCorpus when the corpus has no tokens; alpha must be > 0.
  static CountModel Train(const std::vector<AmDepTree>& corpus, double alpha = 0.1);

  SupertagCandidates Supertags(const Sentence& sentence, size_t k) const override;
  ArcScores Arcs(const Sentence& sentence) const override;
  LabelScores Labels(const Sentence& sentence, int head, int dep) const override;

  // Log-probabilities over the whole vocabulary, keyed by vocabulary index
  // (supertags) or operation text (labels).
  std::vector<double> SupertagLogProbs(const std::string& lemma, const std::string& pos) const;
  std::map<std::string, double> LabelLogProbs(const std::string& head_pos, const std::string& dep_pos,
                                              const std::string& bucket) const;
  // log P(arc) and log P(no arc).
  std::pair<double, double> ArcLogProbs(const std::string& head_pos, const std::string& dep_pos,
                                        const std::string& bucket) const;

  size_t supertag_vocabulary_size() const { return tags_.size(); }
  double alpha() const { return alpha_; }

  // Versioned text format; Load throws kSyntax.
  std::string Save() const;
  static CountModel Load(const std::string& text);

 private:
  struct Tag {
    std::optional<AsGraph> graph;
    std::optional<LexPattern> lex;
  };
  using Counts = std::map<size_t, long long>;  // outcome index -> count

  size_t TagIndex(const std::string& key, const Tag& tag);
  size_t OpIndex(const std::string& op);
  static std::vector<double> Smoothed(const Counts& counts, size_t vocabulary, double alpha);
  const Counts* TagCounts(const std::string& lemma, const std::string& pos) const;
  const Counts* OpCounts(const std::string& head_pos, const std::string& dep_pos, const std::string& bucket) const;
  const Counts* ArcCounts(const std::string& head_pos, const std::string& dep_pos, const std::string& bucket) const;
  std::string PosOf(const Sentence& sentence, int index) const;

  double alpha_ = 0.1;
  std::vector<Tag> tags_;
  std::vector<std::string> tag_keys_;
  std::map<std::string, size_t> tag_index_;
  std::vector<std::string> ops_;
  std::map<std::string, size_t> op_index_;
  // Condition strings are tab-joined; "" is the unconditioned level.
  std::map<std::string, Counts> tag_lemma_, tag_pos_, op_full_, op_bucket_, arc_full_, arc_bucket_;
  Counts tag_all_, op_all_, arc_all_;  // arcs: index 1 = exists, 0 = not
};

}  // namespace amtool

#endif  // AMTOOL_SCORING_HPP_
