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
#include <random>

#include "amtool/algebra.hpp"
#include "amtool/amconll.hpp"
#include "amtool/decomposition.hpp"
#include "amtool/error.hpp"
#include "amtool/heuristics.hpp"
#include "amtool/sdp.hpp"
#include "support/fixtures.hpp"
#include "support/random_am.hpp"

namespace amtool {
namespace {

using testing::WordGraph;

const GroupedEdge& Find(const EdgeGrouping& g, const std::string& from, const std::string& label) {
  for (const auto& e : g.edges) {
    if (e.edge.from == from && e.edge.label == label) return e;
  }
  throw std::runtime_error("no edge");
}

DecompositionInput TheCatSleeps() {
  return WordGraph({"the", "cat", "sleeps"}, {{1, 2, "BV"}, {3, 2, "ARG1"}}, 3);
}

TEST(GroupEdges, DmDeterminerGoesWithOrigin) {
  auto in = TheCatSleeps();
  auto g = GroupEdges(in.graph, BuiltinTable(Bank::kDM));
  const auto& bv = Find(g, "1", "BV");
  EXPECT_EQ(bv.owner, "1");
  EXPECT_EQ(bv.open, "2");
  EXPECT_EQ(bv.source, "D");
  EXPECT_EQ(bv.op, OpKind::kMod);
}

TEST(GroupEdges, PsdActorGoesWithOrigin) {
  auto in = WordGraph({"John", "sleeps"}, {{2, 1, "ACT-arg"}}, 2);
  auto g = GroupEdges(in.graph, BuiltinTable(Bank::kPSD));
  const auto& e = Find(g, "2", "ACT-arg");
  EXPECT_EQ(e.owner, "2");
  EXPECT_EQ(e.source, "S");
  EXPECT_EQ(e.op, OpKind::kApp);
}

TEST(GroupEdges, DmConjunctionGoesWithTarget) {
  auto in = WordGraph({"John", "and", "Mary"}, {{1, 3, "_and_c"}}, 1);
  auto g = GroupEdges(in.graph, BuiltinTable(Bank::kDM));
  const auto& e = Find(g, "1", "_and_c");
  EXPECT_EQ(e.owner, "3");
  EXPECT_EQ(e.open, "1");
  EXPECT_EQ(e.source, "coord");
}

TEST(GroupEdges, EdsTargetOverride) {
  SemGraph g;
  g.AddNode("a", "_big_a_1");
  g.AddNode("u", "udef_q");
  g.AddNode("m", "nominalization");
  g.AddNode("x", "_cat_n_1");
  g.AddEdge("a", "u", "ARG1");
  g.AddEdge("a", "m", "ARG2");
  g.AddEdge("a", "x", "ARG3");
  g.AddRoot("a");
  auto grouping = GroupEdges(g, BuiltinTable(Bank::kEDS));
  EXPECT_EQ(Find(grouping, "a", "ARG1").owner, "u");
  EXPECT_EQ(Find(grouping, "a", "ARG2").owner, "m");
  EXPECT_EQ(Find(grouping, "a", "ARG3").owner, "a");
}

TEST(GroupEdges, EveryEdgeMatchedByFirstRule) {
  const auto& table = BuiltinTable(Bank::kPSD);
  auto in = WordGraph({"a", "b", "c", "d"},
                      {{1, 2, "ACT-arg"}, {1, 3, "ADDR-arg"}, {1, 4, "RSTR"}, {2, 3, "PAT-arg"}}, 1);
  auto g = GroupEdges(in.graph, table);
  ASSERT_EQ(g.edges.size(), 4u);
  for (const auto& e : g.edges) {
    size_t first = 0;
    while (!GlobMatch(table.rules[first].pattern, e.edge.label)) ++first;
    EXPECT_EQ(e.rule, first) << e.edge.label;
  }
  // "*-arg" must not shadow the two named argument rules.
  EXPECT_EQ(Find(g, "1", "ADDR-arg").source, "OO");
  EXPECT_EQ(Find(g, "1", "RSTR").owner, "4");
}

TEST(GroupEdges, MissingCatchAllIsAConfigurationError) {
  HeuristicTable t = ParseHeuristicTable("@bank DM\nARG1\torigin\tS\tapp\n");
  auto in = TheCatSleeps();
  try {
    GroupEdges(in.graph, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnmatchedLabel);
  }
}

TEST(AssignSources, PsdConjunctsFollowWordOrder) {
  // Node ids deliberately run against word order.
  SemGraph g;
  g.AddNode("c", "and");
  g.AddNode("a", "Mary");
  g.AddNode("b", "John");
  g.AddEdge("c", "a", "CONJ.member");
  g.AddEdge("c", "b", "CONJ.member");
  g.AddRoot("c");
  Alignment al{{"b", 1}, {"c", 2}, {"a", 3}};
  auto grouping = GroupEdges(g, BuiltinTable(Bank::kPSD));
  AssignSources(grouping, al, BuiltinTable(Bank::kPSD));
  for (const auto& e : grouping.edges) {
    if (e.edge.to == "b") EXPECT_EQ(e.source, "op");
    if (e.edge.to == "a") EXPECT_EQ(e.source, "op2");
  }
}

TEST(AssignSources, SingleSlotUnchanged) {
  auto in = TheCatSleeps();
  auto grouping = GroupEdges(in.graph, BuiltinTable(Bank::kDM));
  AssignSources(grouping, in.alignment, BuiltinTable(Bank::kDM));
  EXPECT_EQ(Find(grouping, "3", "ARG1").source, "S");
  EXPECT_EQ(Find(grouping, "1", "BV").source, "D");
}

TEST(AssignSources, ThreeModifierSlotsAreNumbered) {
  auto in = WordGraph({"x", "a", "b", "c"}, {{1, 2, "loc"}, {1, 3, "mod"}, {1, 4, "tmp"}}, 1);
  auto grouping = GroupEdges(in.graph, BuiltinTable(Bank::kDM));
  AssignSources(grouping, in.alignment, BuiltinTable(Bank::kDM));
  // Oracle: suffixes follow the open nodes in natural id order.
  std::vector<std::pair<std::string, std::string>> got;
  for (const auto& e : grouping.edges) got.emplace_back(e.open, e.source);
  std::sort(got.begin(), got.end());
  std::vector<std::pair<std::string, std::string>> want{{"2", "M"}, {"3", "M2"}, {"4", "M3"}};
  EXPECT_EQ(got, want);
}

TEST(BuildConstants, TheCatSleeps) {
  auto in = TheCatSleeps();
  const auto& table = BuiltinTable(Bank::kDM);
  auto grouping = GroupEdges(in.graph, table);
  AssignSources(grouping, in.alignment, table);
  auto c = BuildConstants(in.graph, grouping, in.alignment);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_TRUE(Isomorphic(c.at(1), ParseAsGraph("(d / the :BV (x<D>))")));
  EXPECT_TRUE(Isomorphic(c.at(2), ParseAsGraph("(c / cat)")));
  EXPECT_TRUE(Isomorphic(c.at(3), ParseAsGraph("(s / sleeps :ARG1 (x<S>))")));
}

TEST(BuildConstants, TokenWithoutNodesIsAbsent) {
  auto in = WordGraph({"the", "cat", "sleeps", "."}, {{1, 2, "BV"}, {3, 2, "ARG1"}}, 3);
  const auto& table = BuiltinTable(Bank::kDM);
  auto grouping = GroupEdges(in.graph, table);
  AssignSources(grouping, in.alignment, table);
  auto c = BuildConstants(in.graph, grouping, in.alignment);
  EXPECT_FALSE(c.contains(4));
}

TEST(BuildConstants, TwoUpwardNodesNeedTwoRoots) {
  // Token 2 holds two nodes, both targeted from outside.
  SemGraph g;
  g.AddNode("v", "sees");
  g.AddNode("a", "big");
  g.AddNode("b", "dog");
  g.AddEdge("v", "a", "ARG1");
  g.AddEdge("v", "b", "ARG2");
  g.AddRoot("v");
  Alignment al{{"v", 1}, {"a", 2}, {"b", 2}};
  auto grouping = GroupEdges(g, BuiltinTable(Bank::kDM));
  AssignSources(grouping, al, BuiltinTable(Bank::kDM));
  try {
    BuildConstants(g, grouping, al);
    FAIL();
  } catch (const NonDecomposable& e) {
    EXPECT_EQ(e.reason(), NonDecomposableReason::kMultipleRootsNeeded);
  }
}

std::vector<std::string> SourceSets(const std::vector<AsGraph>& v) {
  std::vector<std::string> out;
  for (const auto& g : v) out.push_back(SerializeAsGraph(g));
  return out;
}

TEST(EnumerateVariants, ObjectPromotionPrefersLowestObject) {
  auto v = EnumerateVariants(ParseAsGraph("(v / give :ARG4 (x<O3>))"));
  ASSERT_GE(v.size(), 3u);
  EXPECT_TRUE(Isomorphic(v[0], ParseAsGraph("(v / give :ARG4 (x<O>))")));
  EXPECT_TRUE(Isomorphic(v[1], ParseAsGraph("(v / give :ARG4 (x<O2>))")));
  EXPECT_TRUE(Isomorphic(v[2], ParseAsGraph("(v / give :ARG4 (x<O3>))")));
}

TEST(EnumerateVariants, PassiveRanksAfterActive) {
  auto active = ParseAsGraph("(v / eat :ARG1 (s<S>) :ARG2 (o<O>))");
  auto passive = ParseAsGraph("(v / eat :ARG1 (s<O>) :ARG2 (o<S>))");
  auto v = EnumerateVariants(active);
  ptrdiff_t ia = -1;
  ptrdiff_t ip = -1;
  for (size_t i = 0; i < v.size(); ++i) {
    if (Isomorphic(v[i], active)) ia = static_cast<ptrdiff_t>(i);
    if (Isomorphic(v[i], passive)) ip = static_cast<ptrdiff_t>(i);
  }
  ASSERT_GE(ia, 0);
  ASSERT_GE(ip, 0);
  EXPECT_LT(ia, ip);
}

TEST(EnumerateVariants, UnaccusativeSubjectWithoutS) {
  auto v = EnumerateVariants(ParseAsGraph("(v / arrive :ARG2 (o<O>))"));
  ASSERT_EQ(v.size(), 2u);
  // Unaccusative subjects are preferred.
  EXPECT_TRUE(Isomorphic(v[0], ParseAsGraph("(v / arrive :ARG2 (o<S>))")));
}

TEST(EnumerateVariants, NoObjectsIsSingleton) {
  auto c = ParseAsGraph("(v / sleep :ARG1 (s<S>) :loc (m<M>))");
  auto v = EnumerateVariants(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_TRUE(Isomorphic(v[0], c));
}

TEST(EnumerateVariants, Deduplicated) {
  auto v = SourceSets(EnumerateVariants(ParseAsGraph("(v / x :a (s<S>) :b (o<O>) :c (p<O2>))")));
  auto sorted = v;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::unique(sorted.begin(), sorted.end()), sorted.end());
}

std::string Edges(const AmDepTree& t) {
  std::string out;
  for (size_t i = 1; i <= t.size(); ++i) {
    const auto& tok = t.at(static_cast<int>(i));
    out += std::to_string(tok.head) + "->" + std::to_string(i) + ":" + tok.edge.ToString() + " ";
  }
  return out;
}

TEST(Decompose, TheCatSleeps) {
  auto r = Decompose(TheCatSleeps(), BuiltinTable(Bank::kDM));
  ASSERT_TRUE(r.ok()) << r.detail;
  EXPECT_EQ(Edges(*r.tree), "2->1:MOD_D 3->2:APP_S 0->3:ROOT ");
}

TEST(Decompose, ControlAnnotatesObject) {
  auto in = WordGraph({"cat", "wants", "to", "eat"}, {{2, 1, "ARG1"}, {2, 4, "ARG2"}, {4, 1, "ARG1"}}, 2);
  auto r = Decompose(in, BuiltinTable(Bank::kDM));
  ASSERT_TRUE(r.ok()) << r.detail;
  const RequestType& t = r.tree->at(2).supertag->type();
  ASSERT_TRUE(t.Contains("O"));
  EXPECT_EQ(t.At("O").ToString(), "[S]");
  EXPECT_EQ(r.tree->at(3).edge.kind, OpKind::kIgnore);
}

TEST(Decompose, PasCopulaUsesControl) {
  auto in = WordGraph({"cat", "is", "happy"},
                      {{2, 1, "verb_ARG1"}, {2, 3, "verb_ARG2"}, {3, 1, "adj_ARG1"}}, 2);
  auto r = Decompose(in, BuiltinTable(Bank::kPAS));
  ASSERT_TRUE(r.ok()) << r.detail;
  // happy's lone O slot becomes an unaccusative S.
  EXPECT_EQ(r.tree->at(2).supertag->type().At("O").ToString(), "[S]");
}

TEST(Decompose, CycleIsUnmatchedReentrancy) {
  auto in = WordGraph({"a", "b", "c", "d"},
                      {{1, 2, "ARG1"}, {2, 3, "ARG1"}, {3, 4, "ARG1"}, {4, 1, "ARG1"}}, 1);
  auto r = Decompose(in, BuiltinTable(Bank::kDM));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.reason, NonDecomposableReason::kUnmatchedReentrancy);
}

TEST(Decompose, SharedArgumentWithoutPatternFails) {
  // Two unrelated predicates share an argument; DM has no coordination
  // pattern and neither predicate governs the other.
  auto in = WordGraph({"x", "p", "q", "r"}, {{4, 2, "ARG1"}, {4, 3, "ARG2"}, {2, 1, "ARG2"}, {3, 1, "ARG2"}}, 4);
  auto r = Decompose(in, BuiltinTable(Bank::kDM));
  EXPECT_FALSE(r.ok());
}

TEST(Decompose, SingleToken) {
  auto in = WordGraph({"hello"}, {}, 1);
  auto r = Decompose(in, BuiltinTable(Bank::kDM));
  ASSERT_TRUE(r.ok()) << r.detail;
  EXPECT_EQ(Edges(*r.tree), "0->1:ROOT ");
}

TEST(Decompose, DisconnectedGraphIsRejected) {
  auto in = WordGraph({"a", "b", "c", "d"}, {{1, 2, "ARG1"}, {3, 4, "ARG1"}}, 1);
  auto r = Decompose(in, BuiltinTable(Bank::kDM));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.reason, NonDecomposableReason::kMultipleRootsNeeded);
}

TEST(Decompose, PsdCoordinationUsesOpSources) {
  auto in = WordGraph({"John", "and", "Mary", "sleep"},
                      {{4, 1, "ACT-arg"}, {4, 3, "ACT-arg"}, {2, 1, "CONJ.member"}, {2, 3, "CONJ.member"}}, 4);
  auto rw = RewritePsdCoordination(in.graph);
  ASSERT_FALSE(rw.ambiguous);
  in.graph = rw.graph;
  auto r = Decompose(in, BuiltinTable(Bank::kPSD));
  ASSERT_TRUE(r.ok()) << r.detail;
  EXPECT_EQ(r.tree->at(1).edge.ToString(), "APP_op");
  EXPECT_EQ(r.tree->at(3).edge.ToString(), "APP_op2");
  EXPECT_EQ(r.tree->at(2).edge.ToString(), "APP_S");
}

TEST(Decompose, EdsNounWithQuantifierMaterial) {
  // Token 1 carries both udef_q and the noun.
  SemGraph g;
  g.AddNode("q", "udef_q");
  g.AddNode("x", "_cat_n_1");
  g.AddNode("e", "_sleep_v_1");
  g.AddEdge("q", "x", "BV");
  g.AddEdge("e", "x", "ARG1");
  g.AddRoot("e");
  DecompositionInput in;
  in.graph = g;
  in.alignment = {{"q", 1}, {"x", 1}, {"e", 2}};
  in.tokens.resize(2);
  in.tokens[0].form = "cats";
  in.tokens[0].lemma = "cat";
  in.tokens[1].form = "sleep";
  in.tokens[1].lemma = "sleep";
  auto r = Decompose(in, BuiltinTable(Bank::kEDS));
  ASSERT_TRUE(r.ok()) << r.detail;
  EXPECT_EQ(r.tree->Constant(1)->graph().size(), 2u);
  EXPECT_TRUE(Isomorphic(Evaluate(*r.tree).graph, g));
}

TEST(Decompose, DeterministicOutput) {
  auto in = WordGraph({"the", "shy", "cat", "wants", "to", "eat"},
                      {{1, 3, "BV"}, {2, 3, "ARG1"}, {4, 3, "ARG1"}, {4, 6, "ARG2"}, {6, 3, "ARG1"}}, 4);
  auto a = Decompose(in, BuiltinTable(Bank::kDM));
  auto b = Decompose(in, BuiltinTable(Bank::kDM));
  ASSERT_TRUE(a.ok()) << a.detail;
  EXPECT_EQ(WriteAmConll(*a.tree), WriteAmConll(*b.tree));
}

// Graphs built by evaluating random well-typed trees; decomposing them again
// must reproduce them whenever decomposition succeeds.
class RandomGraphs : public ::testing::Test {
 protected:
  std::vector<DecompositionInput> Make(size_t n, uint64_t seed) {
    testing::RandomAmTrees gen(seed);
    std::vector<DecompositionInput> out;
    while (out.size() < n) {
      AmDepTree t = gen.Next();
      Evaluation ev = Evaluate(t);
      DecompositionInput in;
      in.graph = ev.graph;
      in.alignment = ev.alignment;
      in.tokens = t.tokens;
      for (auto& tok : in.tokens) {
        tok.supertag.reset();
        tok.lex_label.reset();
      }
      out.push_back(std::move(in));
    }
    return out;
  }
};

TEST_F(RandomGraphs, RoundTripWheneverDecomposable) {
  size_t ok = 0;
  for (const auto& in : Make(300, 7)) {
    for (Bank bank : {Bank::kDM, Bank::kPSD, Bank::kEDS}) {
      auto r = Decompose(in, BuiltinTable(bank));
      if (!r.ok()) continue;
      ++ok;
      EXPECT_TRUE(IsWellTyped(*r.tree));
      EXPECT_TRUE(Isomorphic(Evaluate(*r.tree).graph, in.graph));
    }
  }
  EXPECT_GT(ok, 0u);
}

TEST_F(RandomGraphs, RemovingPatternsNeverHelps) {
  for (Bank bank : {Bank::kDM, Bank::kPSD, Bank::kEDS}) {
    HeuristicTable bare = BuiltinTable(bank);
    bare.patterns = PatternConfig{};
    for (const auto& in : Make(150, 11)) {
      const bool full = Decompose(in, BuiltinTable(bank)).ok();
      const bool reduced = Decompose(in, bare).ok();
      EXPECT_TRUE(full || !reduced);
    }
  }
}

TEST(RandomizeTable, SameSeedSameTable) {
  std::set<std::string> labels{"ARG1", "ARG2", "BV", "compound", "_and_c"};
  EXPECT_EQ(RandomizeTable(labels, 3, BuiltinTable(Bank::kDM)),
            RandomizeTable(labels, 3, BuiltinTable(Bank::kDM)));
}

TEST(RandomizeTable, SeedsDiffer) {
  std::set<std::string> labels{"ARG1", "ARG2", "ARG3", "BV", "compound", "_and_c", "poss", "loc"};
  std::vector<HeuristicTable> tables;
  for (uint64_t s = 0; s < 10; ++s) tables.push_back(RandomizeTable(labels, s, BuiltinTable(Bank::kDM)));
  for (size_t i = 0; i < tables.size(); ++i) {
    for (size_t j = i + 1; j < tables.size(); ++j) EXPECT_NE(tables[i].rules, tables[j].rules);
  }
}

TEST(RandomizeTable, CoversEveryLabel) {
  std::set<std::string> labels{"ARG1", "weird-label"};
  auto t = RandomizeTable(labels, 1, BuiltinTable(Bank::kDM));
  for (const auto& l : labels) {
    auto m = t.Match(l);
    ASSERT_TRUE(m);
    EXPECT_EQ(t.rules[m->index].pattern, l);
  }
  EXPECT_TRUE(t.Match("never-seen"));
}

}  // namespace
}  // namespace amtool
