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

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "amtool/asgraph.hpp"
#include "amtool/decoding.hpp"
#include "amtool/error.hpp"
#include "support/decoder_oracles.hpp"

namespace amtool {
namespace {

using namespace amtool::testing;

TEST(MaxArborescenceTest, MatchesBruteForce) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> score(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    ArcScores w(n);
    for (int h = 0; h <= n; ++h)
      for (int d = 1; d <= n; ++d) w.set(h, d, score(rng));
    auto heads = MaxArborescence(w);
    ASSERT_TRUE(IsTree(heads)) << trial;
    EXPECT_NEAR(TreeScore(w, heads), BruteForceTree(w), 1e-9) << trial;
  }
}

TEST(MaxArborescenceTest, SingleToken) {
  ArcScores w(1, 3.0);
  EXPECT_EQ(MaxArborescence(w), (std::vector<int>{0, 0}));
}

TEST(MaxArborescenceTest, TiesPreferSmallerHead) {
  ArcScores w(4, 1.0);
  EXPECT_EQ(MaxArborescence(w), (std::vector<int>{0, 0, 0, 0, 0}));
}

TEST(MaxArborescenceTest, BreaksCycle) {
  // 1 and 2 prefer each other; the root arc into 2 is cheaper to take.
  ArcScores w(2, -10);
  w.set(1, 2, 5);
  w.set(2, 1, 5);
  w.set(0, 1, -3);
  w.set(0, 2, 1);
  EXPECT_EQ(MaxArborescence(w), (std::vector<int>{0, 2, 0}));
}

TEST(FixedTreeDecodeTest, MatchesBruteForce) {
  std::mt19937_64 rng(5);
  int found = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    const size_t k = 1 + static_cast<size_t>(trial % 3);
    Problem p = RandomProblem(rng, n, k);
    auto expected = BruteForceDecode(p);
    DecodeOptions opts;
    opts.k = k;
    auto got = FixedTreeDecode(p.sentence, p.heads, p.candidates, p.Scorer(), opts);
    ASSERT_EQ(got.has_value(), expected.has_value()) << trial;
    if (!got) continue;
    ++found;
    EXPECT_NEAR(got->score, *expected, 1e-9) << trial;
    EXPECT_TRUE(IsWellTyped(got->tree)) << trial;
    EXPECT_NEAR(AssignmentScore(got->tree, CandidateIndex(got->tree, p.candidates), p.candidates, p.Scorer()),
                got->score, 1e-9)
        << trial;
    for (int d = 1; d <= n; ++d) EXPECT_EQ(got->tree.at(d).head, p.heads[static_cast<size_t>(d)]);
  }
  EXPECT_GT(found, 30);
}

TEST(FixedTreeDecodeTest, BeamNeverBeatsExact) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    Problem p = RandomProblem(rng, 2 + trial % 3, 3);
    DecodeOptions exact;
    exact.k = 3;
    DecodeOptions beam = exact;
    beam.beam = 1;
    auto a = FixedTreeDecode(p.sentence, p.heads, p.candidates, p.Scorer(), exact);
    auto b = FixedTreeDecode(p.sentence, p.heads, p.candidates, p.Scorer(), beam);
    if (b) {
      ASSERT_TRUE(a);
      EXPECT_LE(b->score, a->score + 1e-9);
      EXPECT_TRUE(IsWellTyped(b->tree));
    }
  }
}

TEST(FixedTreeDecodeTest, MonotoneInK) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    Problem p = RandomProblem(rng, 3, 3);
    std::optional<double> prev;
    for (size_t k = 0; k <= 3; ++k) {
      DecodeOptions opts;
      opts.k = k;
      auto got = FixedTreeDecode(p.sentence, p.heads, p.candidates, p.Scorer(), opts);
      if (k == 0) EXPECT_FALSE(got);
      if (prev) {
        ASSERT_TRUE(got);
        EXPECT_GE(got->score, *prev - 1e-9);
      }
      if (got) prev = got->score;
    }
  }
}

TEST(FixedTreeDecodeTest, Deterministic) {
  std::mt19937_64 rng(3);
  Problem p = RandomProblem(rng, 4, 3);
  DecodeOptions opts;
  opts.k = 3;
  auto a = FixedTreeDecode(p.sentence, p.heads, p.candidates, p.Scorer(), opts);
  auto b = FixedTreeDecode(p.sentence, p.heads, p.candidates, p.Scorer(), opts);
  ASSERT_EQ(a.has_value(), b.has_value());
  if (a) {
    for (int d = 1; d <= 4; ++d) {
      EXPECT_EQ(a->tree.at(d).edge, b->tree.at(d).edge);
      EXPECT_EQ(a->tree.at(d).supertag.has_value(), b->tree.at(d).supertag.has_value());
    }
  }
}

TEST(FixedTreeDecodeTest, PastDeadlineThrows) {
  std::mt19937_64 rng(1);
  Problem p = RandomProblem(rng, 2, 1);
  DecodeOptions opts;
  opts.deadline = std::chrono::steady_clock::now();
  try {
    FixedTreeDecode(p.sentence, p.heads, p.candidates, p.Scorer(), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTimeout);
  }
}

// ---- full parse ----------------------------------------------------------

// "cat wants eat": want takes cat as S and eat as O[S].
class ChainModel : public ScoreModel {
 public:
  explicit ChainModel(bool broken = false) : broken_(broken) {}
  SupertagCandidates Supertags(const Sentence&, size_t k) const override {
    SupertagCandidates out(3);
    out[0] = {{ParseAsGraph(broken_ ? "(c / cat :ARG0 (x<X>))" : "(c / cat)"), std::nullopt, 0}};
    out[1] = {{ParseAsGraph("(w / want :ARG0 (s<S>) :ARG1 (o<O[S]>))"), std::nullopt, 0},
              {ParseAsGraph("(w / want :ARG0 (s<S>))"), std::nullopt, -1}};
    out[2] = {{ParseAsGraph("(e / eat :ARG0 (s<S>))"), std::nullopt, 0}};
    for (auto& list : out) {
      if (list.size() > k) list.resize(k);
      list.push_back({std::nullopt, std::nullopt, -2});
    }
    return out;
  }
  ArcScores Arcs(const Sentence&) const override {
    ArcScores w(3, -5);
    w.set(0, 2, 1);
    w.set(2, 1, 1);
    w.set(2, 3, 1);
    return w;
  }
  LabelScores Labels(const Sentence&, int, int) const override {
    LabelScores ls;
    ls.fallback = -1;
    ls.scores[Operation::Ignore()] = -1;
    return ls;
  }

 private:
  bool broken_;
};

Sentence ChainSentence() {
  Sentence s;
  s.id = "s1";
  for (const char* w : {"cat", "wants", "eat"}) {
    AmToken t;
    t.form = w;
    t.lemma = w;
    s.tokens.push_back(t);
  }
  return s;
}

TEST(ParseTest, WantEatChain) {
  ParseResult r = Parse(ChainSentence(), ChainModel());
  ASSERT_TRUE(r.tree);
  EXPECT_EQ(r.k_used, 6u);
  EXPECT_EQ(r.tree->at(1).edge, Operation::App("S"));
  EXPECT_EQ(r.tree->at(3).edge, Operation::App("O"));
  EXPECT_EQ(r.tree->at(2).edge, Operation::Root());
  const SemGraph& g = r.evaluation.graph;
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.edges().size(), 3u);
  // want's ARG0 and eat's ARG0 are the same node, aligned to "cat".
  std::string cat;
  for (const auto& [node, tok] : r.evaluation.alignment)
    if (tok == 1) cat = node;
  int into_cat = 0;
  for (const auto& e : g.edges())
    if (e.to == cat && e.label == "ARG0") ++into_cat;
  EXPECT_EQ(into_cat, 2);
}

TEST(ParseTest, IllTypedModelFallsBackToOneNode) {
  ParseResult r = Parse(ChainSentence(), ChainModel(true));
  EXPECT_FALSE(r.tree);
  EXPECT_EQ(r.k_used, 0u);
  EXPECT_EQ(r.evaluation.graph.size(), 1u);
  EXPECT_EQ(r.evaluation.graph.Label("1"), std::optional<std::string>("cat"));
  EXPECT_FALSE(r.log.empty());
}

TEST(ParseTest, ZeroBudgetFallsBack) {
  ParseConfig config;
  config.time_budget_secs = 0;
  ParseResult r = Parse(ChainSentence(), ChainModel(), config);
  EXPECT_FALSE(r.tree);
  EXPECT_EQ(r.k_used, 0u);
  EXPECT_EQ(r.log.size(), 7u);
}

TEST(ParseTest, SmallerKStillTypes) {
  ParseConfig config;
  config.k = 1;
  ParseResult r = Parse(ChainSentence(), ChainModel(), config);
  ASSERT_TRUE(r.tree);
  EXPECT_EQ(r.k_used, 1u);
}

}  // namespace
}  // namespace amtool
