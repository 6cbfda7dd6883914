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

#include <numeric>
#include <random>

#include "amtool/asgraph.hpp"
#include "amtool/error.hpp"
#include "amtool/graph.hpp"
#include "amtool/request_type.hpp"

namespace amtool {
namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kIo;
}

TEST(RequestTypeTest, ParsesAndPrintsCanonically) {
  EXPECT_EQ(ParseRequestType("[]").ToString(), "[]");
  EXPECT_EQ(ParseRequestType("[S,O[S]]").ToString(), "[O[S],S]");
  EXPECT_EQ(ParseRequestType("O[S], S").ToString(), "[O[S],S]");
  EXPECT_EQ(ParseRequestType("[O[S[M]]]").At("O").At("S").ToString(), "[M]");
}

TEST(RequestTypeTest, EqualityIgnoresEntryOrder) {
  RequestType a = ParseRequestType("[S,O[S],M]");
  RequestType b = ParseRequestType("[M,O[S],S]");
  RequestType c = ParseRequestType("[S,O,M]");
  EXPECT_EQ(a, b);
  EXPECT_EQ(b, a);
  EXPECT_NE(a, c);
  EXPECT_EQ(a, a);
}

TEST(RequestTypeTest, RejectsMalformed) {
  EXPECT_EQ(CodeOf([] { ParseRequestType("[S"); }), ErrorCode::kMalformedType);
  EXPECT_EQ(CodeOf([] { ParseRequestType("[S,S]"); }), ErrorCode::kMalformedType);
  EXPECT_EQ(CodeOf([] { ParseRequestType("[root]"); }), ErrorCode::kMalformedType);
  EXPECT_FALSE(IsValidSourceName("root"));
  EXPECT_FALSE(IsValidSourceName(""));
  EXPECT_FALSE(IsValidSourceName("O-2"));
  EXPECT_TRUE(IsValidSourceName("op12"));
}

TEST(AsGraphTest, ParsesWantConstant) {
  AsGraph want = ParseAsGraph("(w / want-01 :ARG0 (s<S>) :ARG1 (o<O[S]>))");
  EXPECT_EQ(want.root(), "w");
  EXPECT_EQ(want.graph().size(), 3u);
  EXPECT_EQ(*want.NodeOf("S"), "s");
  EXPECT_EQ(*want.NodeOf("O"), "o");
  EXPECT_EQ(TypeOf(want).ToString(), "[O[S],S]");
  EXPECT_EQ(TypeOf(want).At("O"), ParseRequestType("[S]"));
  EXPECT_TRUE(TypeOf(want).At("S").empty());
  EXPECT_FALSE(want.graph().Label("s").has_value());
}

TEST(AsGraphTest, ParsesSourceFreeConstant) {
  AsGraph cat = ParseAsGraph("(c / cat)");
  EXPECT_EQ(cat.graph().size(), 1u);
  EXPECT_TRUE(TypeOf(cat).empty());
  EXPECT_EQ(TypeOf(ParseAsGraph("(e / eat-01 :ARG0 (s<S>))")).ToString(), "[S]");
}

TEST(AsGraphTest, InverseRoleReversesEdge) {
  AsGraph shy = ParseAsGraph("(s / shy :mod-of (m<M>))");
  EXPECT_EQ(shy.root(), "s");
  EXPECT_TRUE(shy.graph().HasEdge({"m", "s", "mod"}));
  EXPECT_EQ(shy.graph().edges().size(), 1u);
  EXPECT_EQ(*shy.SourceAt("m"), "M");
  EXPECT_EQ(SerializeAsGraph(shy), "(s / shy :mod-of (m<M>))");
}

TEST(AsGraphTest, SerializesCanonically) {
  EXPECT_EQ(SerializeAsGraph(ParseAsGraph("(w / want-01 :ARG1 (o<O[S]>) :ARG0 (s<S>))")),
            "(w / want-01 :ARG0 (s<S>) :ARG1 (o<O[S]>))");
  EXPECT_EQ(SerializeAsGraph(ParseAsGraph("(u<S>)")), "(u<S>)");
}

TEST(AsGraphTest, Reentrancy) {
  AsGraph g = ParseAsGraph("(w / want-01 :ARG0 (s<S>) :ARG1 (e / eat-01 :ARG0 s))");
  EXPECT_EQ(g.graph().size(), 3u);
  EXPECT_TRUE(g.graph().HasEdge({"e", "s", "ARG0"}));
  EXPECT_TRUE(Isomorphic(g, ParseAsGraph(SerializeAsGraph(g))));
}

TEST(AsGraphTest, RootMayCarrySource) {
  AsGraph g = ParseAsGraph("(m<M> / big)");
  EXPECT_EQ(*g.SourceAt(g.root()), "M");
}

TEST(AsGraphTest, ReportsErrors) {
  EXPECT_EQ(CodeOf([] { ParseAsGraph("(a / x :r (b<S>) :q (c<S>))"); }),
            ErrorCode::kDuplicateSource);
  EXPECT_EQ(CodeOf([] { ParseAsGraph("(a / x :r (b<S[O>))"); }), ErrorCode::kMalformedType);
  EXPECT_EQ(CodeOf([] { ParseAsGraph("(a / x :r (b)"); }), ErrorCode::kSyntax);
  EXPECT_EQ(CodeOf([] { ParseAsGraph("(a / x :r q)"); }), ErrorCode::kSyntax);
  EXPECT_EQ(CodeOf([] { ParseAsGraph("(a / x :r (a / y))"); }), ErrorCode::kSyntax);
  try {
    ParseAsGraph("(a / x :r (b / y) junk");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("18"), std::string::npos) << e.what();
  }
}

// Independent union-find used as a component oracle.
std::vector<int> ComponentLabels(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::function<int(int)> find = [&](int x) { return p[x] == x ? x : p[x] = find(p[x]); };
  for (auto [a, b] : edges) p[find(a)] = find(b);
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = find(i);
  return out;
}

TEST(GraphTest, WeaklyConnectedComponentsTrivial) {
  EXPECT_TRUE(WeaklyConnectedComponents(SemGraph{}).empty());
  SemGraph g;
  g.AddNode("a");
  g.AddNode("b");
  g.AddEdge("b", "a", "r");
  auto comps = WeaklyConnectedComponents(g);
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_EQ(comps[0].size(), 2u);
}

TEST(GraphTest, WeaklyConnectedComponentsMatchUnionFind) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 20;
    SemGraph g;
    for (int i = 0; i < n; ++i) g.AddNode("n" + std::to_string(i));
    std::vector<std::pair<int, int>> edges;
    const int m = std::uniform_int_distribution<int>(0, 25)(rng);
    for (int e = 0; e < m; ++e) {
      int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
      int b = std::uniform_int_distribution<int>(0, n - 1)(rng);
      edges.push_back({a, b});
      g.AddEdge("n" + std::to_string(a), "n" + std::to_string(b), "r");
    }
    auto labels = ComponentLabels(n, edges);
    auto comps = WeaklyConnectedComponents(g);
    std::vector<int> which(n, -1);
    size_t total = 0;
    for (size_t c = 0; c < comps.size(); ++c) {
      for (const auto& id : comps[c]) which[std::stoi(id.substr(1))] = static_cast<int>(c);
      total += comps[c].size();
    }
    ASSERT_EQ(total, static_cast<size_t>(n));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        ASSERT_EQ(labels[a] == labels[b], which[a] == which[b]);
      }
    }
  }
}

TEST(GraphTest, DuplicateEdgesCollapse) {
  SemGraph g;
  g.AddNode("a");
  g.AddNode("b");
  EXPECT_TRUE(g.AddEdge("a", "b", "r"));
  EXPECT_FALSE(g.AddEdge("a", "b", "r"));
  EXPECT_EQ(g.edges().size(), 1u);
  EXPECT_THROW(g.AddNode("a"), Error);
  EXPECT_THROW(g.AddEdge("a", "zz", "r"), Error);
}

TEST(GraphTest, IsomorphismRespectsLabelsAndRoots) {
  SemGraph a;
  a.AddNode("1", "x");
  a.AddNode("2", "y");
  a.AddEdge("1", "2", "r");
  a.AddRoot("1");
  SemGraph b;
  b.AddNode("q", "y");
  b.AddNode("p", "x");
  b.AddEdge("p", "q", "r");
  b.AddRoot("p");
  EXPECT_TRUE(Isomorphic(a, b));
  b.SetRoots({"q"});
  EXPECT_FALSE(Isomorphic(a, b));
  SemGraph c = a;
  c.SetLabel("2", "z");
  EXPECT_FALSE(Isomorphic(a, c));
}

TEST(GraphTest, NaturalOrder) {
  EXPECT_TRUE(NaturalLess("n2", "n10"));
  EXPECT_FALSE(NaturalLess("n10", "n2"));
  EXPECT_TRUE(NaturalLess("a", "b"));
  EXPECT_FALSE(NaturalLess("a", "a"));
}

// Random small as-graphs: a random spanning tree plus extra edges.
AsGraph RandomAsGraph(std::mt19937_64& rng) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = uni(1, 6);
  static const std::vector<std::string> kNames = {"S", "O", "O2", "M", "D", "op1"};
  static const std::vector<std::string> kLabels = {"a", "b", "want-01", "x y", "c\"q"};
  static const std::vector<std::string> kTypes = {"[]", "[S]", "[O[S]]", "[S,M]"};
  std::vector<std::string> names = kNames;
  std::shuffle(names.begin(), names.end(), rng);
  SemGraph g;
  std::map<std::string, std::string> sources;
  std::map<std::string, RequestType> annotations;
  for (int i = 0; i < n; ++i) {
    const std::string id = "n" + std::to_string(i);
    const bool has_source = uni(0, 2) == 0;
    const bool labeled = !has_source || uni(0, 3) == 0;
    g.AddNode(id, labeled ? std::optional<std::string>(kLabels[uni(0, 4)]) : std::nullopt);
    if (has_source || !labeled) {
      sources[id] = names[i];
      annotations[names[i]] = ParseRequestType(kTypes[uni(0, 3)]);
    }
  }
  g.AddRoot("n0");
  for (int i = 1; i < n; ++i) {
    const std::string a = "n" + std::to_string(i);
    const std::string b = "n" + std::to_string(uni(0, i - 1));
    const std::string label = uni(0, 1) ? "ARG" + std::to_string(uni(0, 2)) : "mod";
    uni(0, 1) ? g.AddEdge(a, b, label) : g.AddEdge(b, a, label);
  }
  for (int e = uni(0, 2); e > 0; --e) {
    g.AddEdge("n" + std::to_string(uni(0, n - 1)), "n" + std::to_string(uni(0, n - 1)),
              "extra");
  }
  return AsGraph(std::move(g), std::move(sources), std::move(annotations));
}

TEST(AsGraphTest, SerializationRoundTripProperty) {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 1000; ++trial) {
    AsGraph g = RandomAsGraph(rng);
    const std::string text = SerializeAsGraph(g);
    AsGraph back = ParseAsGraph(text);
    ASSERT_TRUE(Isomorphic(g, back)) << text;
    ASSERT_EQ(SerializeAsGraph(back), text);
    // Type domain equals the image of the source map.
    std::set<std::string> image;
    for (const auto& [node, s] : back.node_sources()) image.insert(s);
    auto domain = TypeOf(back).Domain();
    ASSERT_EQ(std::set<std::string>(domain.begin(), domain.end()), image);
  }
}

}  // namespace
}  // namespace amtool
