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

// Reference constructions for the algebra laws.
#ifndef AMTOOL_TESTS_SUPPORT_ALGEBRA_ORACLES_HPP_
#define AMTOOL_TESTS_SUPPORT_ALGEBRA_ORACLES_HPP_

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "amtool/algebra.hpp"
#include "amtool/asgraph.hpp"

namespace amtool::testing {

// Naive reference for apply/modify: merge classes by repeated relabelling.
inline AsGraph NaiveCombine(const AsGraph& head, const AsGraph& other,
                            const std::vector<std::pair<std::string, std::string>>& merges,
                            const std::map<std::string, std::pair<bool, std::string>>& result_sources,
                            const RequestType& type) {
  std::map<std::string, std::string> cls;
  for (const auto& n : head.graph().nodes()) cls["h:" + n.id] = "h:" + n.id;
  for (const auto& n : other.graph().nodes()) cls["o:" + n.id] = "o:" + n.id;
  for (const auto& [a, b] : merges) {
    const std::string from = cls["o:" + b];
    const std::string to = cls["h:" + a];
    for (auto& [k, v] : cls) {
      if (v == from) v = to;
    }
  }
  SemGraph g;
  auto label_of = [&](const std::string& key) {
    return key[0] == 'h' ? head.graph().Label(key.substr(2)) : other.graph().Label(key.substr(2));
  };
  std::map<std::string, std::optional<std::string>> labels;
  for (const auto& [k, v] : cls) {
    if (auto l = label_of(k)) labels[v] = l;
    else labels.try_emplace(v, std::nullopt);
  }
  for (const auto& [v, l] : labels) g.AddNode(v, l);
  for (const auto& e : head.graph().edges()) g.AddEdge(cls["h:" + e.from], cls["h:" + e.to], e.label);
  for (const auto& e : other.graph().edges()) g.AddEdge(cls["o:" + e.from], cls["o:" + e.to], e.label);
  g.AddRoot(cls["h:" + head.root()]);
  std::map<std::string, std::string> sources;
  for (const auto& [name, side] : result_sources) {
    sources[cls[(side.first ? "h:" : "o:") + side.second]] = name;
  }
  std::map<std::string, RequestType> ann;
  for (const auto& e : type.entries()) ann[e.source] = e.request;
  return AsGraph(g, sources, ann);
}

class RandomConstants {
 public:
  explicit RandomConstants(uint64_t seed) : rng_(seed) {}
  int Uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  // Labeled root and extra nodes, unlabeled source placeholders.
  AsGraph Make(const std::map<std::string, RequestType>& sources, bool root_source = false) {
    SemGraph g;
    const int labeled = Uniform(1, 3);
    for (int i = 0; i < labeled; ++i) {
      g.AddNode("n" + std::to_string(i), "L" + std::to_string(Uniform(0, 3)));
      if (i > 0) Attach(g, "n" + std::to_string(i), "n" + std::to_string(Uniform(0, i - 1)));
    }
    g.AddRoot("n0");
    std::map<std::string, std::string> node_sources;
    bool first = true;
    for (const auto& [name, t] : sources) {
      if (root_source && first) {
        node_sources["n0"] = name;
        first = false;
        continue;
      }
      const std::string id = "p" + name;
      g.AddNode(id);
      Attach(g, id, "n" + std::to_string(Uniform(0, labeled - 1)));
      node_sources[id] = name;
    }
    return AsGraph(g, node_sources, sources);
  }

 private:
  void Attach(SemGraph& g, const std::string& a, const std::string& b) {
    const std::string label = "r" + std::to_string(Uniform(0, 2));
    Uniform(0, 1) ? g.AddEdge(a, b, label) : g.AddEdge(b, a, label);
  }
  std::mt19937_64 rng_;
};

// One random APP_O case: result type, node count, root and the naive graph.
// Returns a description of the first violated law.
inline std::optional<std::string> CheckApplyLaw(RandomConstants& gen) {
  static const std::vector<RequestType> kRequests = {ParseRequestType("[]"), ParseRequestType("[S]"),
                                                     ParseRequestType("[S,O2]")};
  const RequestType request = kRequests[static_cast<size_t>(gen.Uniform(0, 2))];
  std::map<std::string, RequestType> head_sources = {{"O", request}};
  for (const char* extra : {"S", "O2", "M"}) {
    if (gen.Uniform(0, 1)) head_sources[extra] = {};
  }
  std::map<std::string, RequestType> arg_sources;
  for (const auto& e : request.entries()) arg_sources[e.source] = e.request;
  AsGraph head = gen.Make(head_sources);
  AsGraph arg = gen.Make(arg_sources);
  const std::string what = SerializeAsGraph(head) + " + " + SerializeAsGraph(arg);
  AsGraph result = Apply("O", head, arg);

  size_t shared = 0;
  std::vector<std::pair<std::string, std::string>> merges = {{*head.NodeOf("O"), arg.root()}};
  std::map<std::string, std::pair<bool, std::string>> result_sources;
  for (const auto& [name, t] : head_sources) {
    if (name != "O") result_sources[name] = {true, *head.NodeOf(name)};
  }
  for (const auto& [name, t] : arg_sources) {
    if (head_sources.contains(name)) {
      ++shared;
      merges.push_back({*head.NodeOf(name), *arg.NodeOf(name)});
    } else {
      result_sources[name] = {false, *arg.NodeOf(name)};
    }
  }
  // Head minus O, plus the request's entries.
  RequestType expected_type = head.type();
  expected_type.Erase("O");
  for (const auto& e : request.entries()) expected_type.Set(e.source, e.request);
  if (!(TypeOf(result) == expected_type)) return "type " + what;
  if (result.graph().size() != head.graph().size() + arg.graph().size() - 1 - shared) return "size " + what;
  if (result.root() != head.root()) return "root " + what;
  if (!Isomorphic(result, NaiveCombine(head, arg, merges, result_sources, expected_type))) return "graph " + what;
  return std::nullopt;
}

// One random MOD_M case. Sets *skipped when the generated modifier has M at
// its root, which Modify rejects by definition.
inline std::optional<std::string> CheckModifyLaw(RandomConstants& gen, bool* skipped) {
  *skipped = false;
  std::map<std::string, RequestType> head_sources;
  for (const char* extra : {"S", "O", "O2"}) {
    if (gen.Uniform(0, 1)) head_sources[extra] = gen.Uniform(0, 1) ? RequestType{} : ParseRequestType("[S]");
  }
  std::map<std::string, RequestType> mod_sources = {{"M", {}}};
  for (const auto& [name, t] : head_sources) {
    if (gen.Uniform(0, 1)) mod_sources[name] = t;
  }
  AsGraph head = gen.Make(head_sources);
  AsGraph mod = gen.Make(mod_sources, gen.Uniform(0, 3) == 0 && mod_sources.size() > 1);
  if (mod.NodeOf("M") == mod.root()) {
    *skipped = true;
    return std::nullopt;
  }
  const std::string what = SerializeAsGraph(head) + " + " + SerializeAsGraph(mod);
  AsGraph result = Modify("M", head, mod);
  std::vector<std::pair<std::string, std::string>> merges = {{head.root(), *mod.NodeOf("M")}};
  std::map<std::string, std::pair<bool, std::string>> result_sources;
  for (const auto& [name, t] : head_sources) result_sources[name] = {true, *head.NodeOf(name)};
  for (const auto& [name, t] : mod_sources) {
    if (name != "M") merges.push_back({*head.NodeOf(name), *mod.NodeOf(name)});
  }
  if (!(TypeOf(result) == head.type())) return "type " + what;
  if (result.graph().size() != head.graph().size() + mod.graph().size() - 1 - (mod_sources.size() - 1)) {
    return "size " + what;
  }
  if (result.root() != head.root()) return "root " + what;
  if (!Isomorphic(result, NaiveCombine(head, mod, merges, result_sources, head.type()))) return "graph " + what;
  return std::nullopt;
}

// Evaluates `tree` in `orders` random child orders and compares with the
// default order.
inline std::optional<std::string> CheckOrderIndependence(const AmDepTree& tree, std::mt19937_64& rng, int orders) {
  if (!CheckWellTyped(tree).empty()) return "not well-typed";
  Evaluation reference = Evaluate(tree);
  for (int k = 0; k < orders; ++k) {
    EvaluateOptions options{&rng};
    Evaluation other = Evaluate(tree, options);
    if (!Isomorphic(reference.graph, other.graph)) return "graphs differ";
    if (reference.alignment.size() != other.alignment.size()) return "alignments differ";
  }
  return std::nullopt;
}

}  // namespace amtool::testing

#endif  // AMTOOL_TESTS_SUPPORT_ALGEBRA_ORACLES_HPP_
