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

#include <random>

#include "amtool/error.hpp"
#include "amtool/metrics.hpp"
#include "support/random_graphs.hpp"

namespace amtool {
namespace {

using testing::RandomGraph;

SemGraph Chain(const std::vector<std::string>& labels, bool reversed = false) {
  SemGraph g;
  for (size_t i = 0; i < labels.size(); ++i) g.AddNode("n" + std::to_string(i), labels[i]);
  for (size_t i = 0; i + 1 < labels.size(); ++i) {
    if (reversed) {
      g.AddEdge("n" + std::to_string(i + 1), "n" + std::to_string(i), "ARG1");
    } else {
      g.AddEdge("n" + std::to_string(i), "n" + std::to_string(i + 1), "ARG1");
    }
  }
  g.AddRoot(reversed ? "n" + std::to_string(labels.size() - 1) : "n0");
  return g;
}

// Independent oracle: enumerate every partial injective mapping and count
// matching triples written as strings.
int64_t BruteForceMatched(const SemGraph& p, const SemGraph& g) {
  std::set<std::string> gold;
  for (const auto& n : g.nodes()) gold.insert("inst " + n.id + " " + n.label.value_or(""));
  for (const auto& e : g.edges()) gold.insert("rel " + e.from + " " + e.label + " " + e.to);
  for (const auto& r : g.roots()) gold.insert("top " + r);
  std::vector<std::string> gids;
  for (const auto& n : g.nodes()) gids.push_back(n.id);
  std::map<std::string, std::string> map;
  std::set<std::string> used;
  int64_t best = 0;
  auto count = [&] {
    int64_t s = 0;
    for (const auto& n : p.nodes()) {
      if (map.contains(n.id) && gold.contains("inst " + map[n.id] + " " + n.label.value_or(""))) ++s;
    }
    for (const auto& e : p.edges()) {
      if (map.contains(e.from) && map.contains(e.to) &&
          gold.contains("rel " + map[e.from] + " " + e.label + " " + map[e.to])) {
        ++s;
      }
    }
    for (const auto& r : p.roots()) {
      if (map.contains(r) && gold.contains("top " + map[r])) ++s;
    }
    return s;
  };
  const auto& pn = p.nodes();
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == pn.size()) {
      best = std::max(best, count());
      return;
    }
    self(self, i + 1);  // unmapped
    for (const auto& j : gids) {
      if (used.contains(j)) continue;
      used.insert(j);
      map[pn[i].id] = j;
      self(self, i + 1);
      map.erase(pn[i].id);
      used.erase(j);
    }
  };
  rec(rec, 0);
  return best;
}

TEST(Prf, Identity) {
  PRF p = PRF::FromCounts(9, 10, 9);
  EXPECT_DOUBLE_EQ(p.precision, 1.0);
  EXPECT_DOUBLE_EQ(p.recall, 0.9);
  EXPECT_DOUBLE_EQ(p.f1, 2 * 0.9 / 1.9);
  EXPECT_EQ(PRF::FromCounts(0, 0, 0).f1, 0.0);
  EXPECT_EQ(PRF::FromCounts(1, 2, 3).Format("x"), "x 0.3333 0.5000 0.4000 1 2 3");
}

TEST(Smatch, SelfIsOne) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    SemGraph g = RandomGraph(rng, 10);
    EXPECT_DOUBLE_EQ(Smatch(g, g).f1, 1.0);
  }
}

TEST(Smatch, CatVsDog) {
  SemGraph a;
  a.AddNode("x", "cat");
  a.AddRoot("x");
  SemGraph b;
  b.AddNode("y", "dog");
  b.AddRoot("y");
  PRF p = Smatch(a, b);
  // Only the TOP triple matches; no instance overlap.
  EXPECT_EQ(p.matched, 1);
  EXPECT_EQ(p.gold, 2);
}

TEST(SmatchExact, IdenticalChain) {
  auto g = Chain({"a", "b", "c"});
  EXPECT_DOUBLE_EQ(SmatchExact(g, g).f1, 1.0);
}

TEST(SmatchExact, ChainVsReversedChain) {
  // a->b->c against c->b->a: the identity keeps three instances only;
  // reversing the mapping keeps both relations, the top and the middle
  // instance, which is the optimum of 4.
  auto a = Chain({"a", "b", "c"});
  auto b = Chain({"a", "b", "c"}, true);
  PRF p = SmatchExact(a, b);
  EXPECT_EQ(p.matched, BruteForceMatched(a, b));
  EXPECT_EQ(p.matched, 4);
  EXPECT_EQ(p.gold, 6);
}

TEST(SmatchExact, MatchesBruteForce) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 150; ++i) {
    SemGraph a = RandomGraph(rng, 5);
    SemGraph b = RandomGraph(rng, 5);
    EXPECT_EQ(SmatchExact(a, b).matched, BruteForceMatched(a, b));
  }
}

TEST(SmatchExact, TooLarge) {
  std::mt19937_64 rng(3);
  SemGraph a;
  for (int i = 0; i < 9; ++i) a.AddNode("n" + std::to_string(i), "x");
  a.AddRoot("n0");
  try {
    SmatchExact(a, a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
}

TEST(Smatch, HillClimbingNeverExceedsExact) {
  std::mt19937_64 rng(4);
  int equal = 0;
  for (int i = 0; i < 200; ++i) {
    SemGraph a = RandomGraph(rng, 6);
    SemGraph b = RandomGraph(rng, 6);
    const int64_t exact = SmatchExact(a, b).matched;
    const int64_t hill = Smatch(a, b, {5, static_cast<uint64_t>(i)}).matched;
    EXPECT_LE(hill, exact);
    equal += hill == exact;
  }
  EXPECT_EQ(equal, 200);
}

TEST(Smatch, Deterministic) {
  std::mt19937_64 rng(5);
  SemGraph a = RandomGraph(rng, 12);
  SemGraph b = RandomGraph(rng, 12);
  EXPECT_EQ(Smatch(a, b, {5, 9}).matched, Smatch(a, b, {5, 9}).matched);
}

EdsInstance FourNodes() {
  EdsInstance e;
  e.id = "1";
  e.text = "the big cat sleeps";
  e.top = "e";
  e.nodes = {{"q", "_the_q", 0, 3, {}}, {"a", "_big_a_1", 4, 7, {}}, {"x", "_cat_n_1", 8, 11, {}},
             {"e", "_sleep_v_1", 12, 18, {}}};
  e.edges = {{"q", "BV", "x"}, {"a", "ARG1", "x"}, {"e", "ARG1", "x"}};
  return e;
}

TEST(Edm, Identical) {
  auto s = Edm(FourNodes(), FourNodes());
  EXPECT_DOUBLE_EQ(s.all.f1, 1.0);
  EXPECT_DOUBLE_EQ(s.nodes.f1, 1.0);
  EXPECT_DOUBLE_EQ(s.edges.f1, 1.0);
}

TEST(Edm, ShiftedSpanLosesNodeAndIncidentEdges) {
  auto pred = FourNodes();
  pred.nodes[2].begin = 9;  // cat
  auto s = Edm(FourNodes(), pred);
  EXPECT_EQ(s.nodes.matched, 3);
  EXPECT_EQ(s.edges.matched, 0);
}

TEST(Edm, HandCountedFixture) {
  auto pred = FourNodes();
  pred.nodes[1].label = "_large_a_1";         // node miss
  pred.edges[2].role = "ARG2";                 // edge miss
  pred.edges.push_back({"e", "ARG2", "q"});    // spurious edge
  auto s = Edm(FourNodes(), pred);
  // nodes 3/4 both ways; edges gold 3, pred 4, matched 2; all 5 of 7 vs 8.
  EXPECT_EQ(s.nodes.matched, 3);
  EXPECT_EQ(s.edges.matched, 2);
  EXPECT_EQ(s.edges.pred, 4);
  EXPECT_EQ(s.all.matched, 5);
  EXPECT_EQ(s.all.gold, 7);
  EXPECT_EQ(s.all.pred, 8);
  EXPECT_NEAR(s.all.precision, 5.0 / 8, 1e-12);
  EXPECT_NEAR(s.all.recall, 5.0 / 7, 1e-12);
}

SdpInstance TenEdges() {
  SdpInstance inst;
  inst.id = "1";
  // Token 1 is the only predicate; it governs tokens 2..10 and is top, so
  // nine role tuples plus one top tuple.
  for (int i = 1; i <= 10; ++i) {
    SdpToken t;
    t.form = t.lemma = "w" + std::to_string(i);
    t.pos = "NN";
    t.top = i == 1;
    t.pred = i == 1;
    inst.tokens.push_back(t);
  }
  for (int i = 0; i < 10; ++i) inst.tokens[static_cast<size_t>(i)].args = {i == 0 ? "_" : "ARG" + std::to_string(i % 3)};
  return inst;
}

TEST(SdpF, GoldVsGold) {
  EXPECT_DOUBLE_EQ(SdpLabeledF({TenEdges()}, {TenEdges()}).f1, 1.0);
}

TEST(SdpF, DropOneOfTen) {
  auto pred = TenEdges();
  pred.tokens[4].args[0] = "_";
  PRF p = SdpLabeledF({TenEdges()}, {pred});
  EXPECT_DOUBLE_EQ(p.recall, 0.9);
  EXPECT_DOUBLE_EQ(p.precision, 1.0);
}

TEST(SdpF, HandCounted) {
  auto pred = TenEdges();
  pred.tokens[0].top = false;
  pred.tokens[1].top = true;       // top moved: 1 miss, 1 spurious
  pred.tokens[2].args[0] = "BV";   // relabel: 1 miss, 1 spurious
  PRF p = SdpLabeledF({TenEdges()}, {pred});
  EXPECT_EQ(p.matched, 8);
  EXPECT_EQ(p.gold, 10);
  EXPECT_EQ(p.pred, 10);
}

TEST(SdpF, FramesOptional) {
  auto pred = TenEdges();
  pred.tokens[0].frame = "v:x";
  EXPECT_DOUBLE_EQ(SdpLabeledF({TenEdges()}, {pred}).f1, 1.0);
  EXPECT_LT(SdpLabeledF({TenEdges()}, {pred}, {true}).f1, 1.0);
}

TEST(SdpF, IdMismatch) {
  auto pred = TenEdges();
  pred.id = "2";
  EXPECT_THROW(SdpLabeledF({TenEdges()}, {pred}), Error);
}

TEST(DecomposabilityStats, TwoAdversarialOfTwenty) {
  std::vector<DecompositionInput> corpus;
  for (int i = 0; i < 20; ++i) {
    DecompositionInput in;
    for (int k = 0; k < 4; ++k) {
      AmToken t;
      t.form = t.lemma = "w";
      in.tokens.push_back(t);
      in.graph.AddNode(std::to_string(k + 1), "w");
      in.alignment[std::to_string(k + 1)] = k + 1;
    }
    for (int k = 1; k < 4; ++k) in.graph.AddEdge(std::to_string(k), std::to_string(k + 1), "ARG1");
    if (i < 2) in.graph.AddEdge("4", "1", "ARG1");  // cycle
    in.graph.AddRoot("1");
    corpus.push_back(in);
  }
  auto r = DecomposabilityStats(corpus, BuiltinTable(Bank::kDM));
  EXPECT_DOUBLE_EQ(r.NonDecomposablePercent(), 10.0);
  EXPECT_EQ(r.reasons[NonDecomposableReason::kUnmatchedReentrancy], 2u);
  corpus.erase(corpus.begin(), corpus.begin() + 2);
  EXPECT_DOUBLE_EQ(DecomposabilityStats(corpus, BuiltinTable(Bank::kDM)).NonDecomposablePercent(), 0.0);
}

}  // namespace
}  // namespace amtool
