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

#include "amtool/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "amtool/error.hpp"

namespace amtool {

std::string_view ReasonName(NonDecomposableReason reason) {
  switch (reason) {
    case NonDecomposableReason::kMultipleRootsNeeded: return "MultipleRootsNeeded";
    case NonDecomposableReason::kUnmatchedReentrancy: return "UnmatchedReentrancy";
    case NonDecomposableReason::kNotATree: return "NotATree";
    case NonDecomposableReason::kIllTyped: return "IllTyped";
    case NonDecomposableReason::kRoundTripMismatch: return "RoundTripMismatch";
  }
  return "NotATree";
}

namespace {

int TokenOf(const Alignment& alignment, const std::string& node) {
  auto it = alignment.find(node);
  if (it == alignment.end() || it->second < 1) {
    throw Error(ErrorCode::kUnalignableNode, "node '" + node + "' is not aligned to a token");
  }
  return it->second;
}

}  // namespace

EdgeGrouping GroupEdges(const SemGraph& graph, const HeuristicTable& table) {
  EdgeGrouping grouping;
  for (const auto& e : graph.edges()) {
    auto match = table.Match(e.label);
    if (!match) {
      throw Error(ErrorCode::kUnmatchedLabel, "no heuristic rule for edge label '" + e.label + "'");
    }
    bool to_origin = match->to_origin;
    if (const auto& target_label = graph.Label(e.to);
        target_label && table.target_override_labels.contains(*target_label)) {
      to_origin = false;
    }
    GroupedEdge g;
    g.edge = e;
    g.owner = to_origin ? e.from : e.to;
    g.open = to_origin ? e.to : e.from;
    g.source = match->source;
    g.op = match->op;
    g.rule = match->index;
    grouping.edges.push_back(std::move(g));
  }
  return grouping;
}

void AssignSources(EdgeGrouping& grouping, const Alignment& alignment,
                   const HeuristicTable& table) {
  struct Slot {
    int token;
    std::string open;
    std::string raw;
    size_t rule;
    std::vector<size_t> edges;
  };
  std::map<std::pair<int, std::string>, Slot> slots;
  for (size_t i = 0; i < grouping.edges.size(); ++i) {
    GroupedEdge& g = grouping.edges[i];
    const int owner = TokenOf(alignment, g.owner);
    g.internal = owner == TokenOf(alignment, g.open);
    if (g.internal) continue;
    auto [it, fresh] = slots.try_emplace({owner, g.open}, Slot{owner, g.open, g.source, g.rule, {}});
    if (!fresh && g.rule < it->second.rule) {
      it->second.raw = g.source;
      it->second.rule = g.rule;
    }
    it->second.edges.push_back(i);
  }
  std::map<int, std::map<std::string, std::vector<Slot*>>> by_token;
  for (auto& [key, slot] : slots) by_token[slot.token][slot.raw].push_back(&slot);
  for (auto& [token, groups] : by_token) {
    std::set<std::string> used;
    for (const auto& [raw, list] : groups) used.insert(raw);
    for (auto& [raw, list] : groups) {
      std::sort(list.begin(), list.end(), [&](const Slot* a, const Slot* b) {
        if (table.word_order_disambiguation) {
          const int ta = TokenOf(alignment, a->open);
          const int tb = TokenOf(alignment, b->open);
          if (ta != tb) return ta < tb;
        }
        return NaturalLess(a->open, b->open);
      });
      for (size_t k = 0; k < list.size(); ++k) {
        std::string name = raw;
        if (k > 0) {
          for (size_t suffix = k + 1;; ++suffix) {
            name = raw + std::to_string(suffix);
            if (!used.contains(name)) break;
          }
          used.insert(name);
        }
        for (size_t i : list[k]->edges) grouping.edges[i].source = name;
      }
    }
  }
}

namespace {

struct SlotRec {
  std::string node;  // open node, owned by another token
  int token;         // token of the open node
  std::string source;
  OpKind preferred;
  size_t rule;
  std::vector<std::string> labels;
};

struct TokenRec {
  std::vector<std::string> nodes;
  std::vector<Edge> edges;  // internal and slot edges
  std::vector<SlotRec> slots;
  std::string root;
};

using Skeleton = std::map<int, TokenRec>;

Skeleton BuildSkeleton(const SemGraph& graph, const EdgeGrouping& grouping,
                       const Alignment& alignment) {
  Skeleton tokens;
  for (const auto& n : graph.nodes()) tokens[TokenOf(alignment, n.id)].nodes.push_back(n.id);
  std::set<std::string> landed;
  std::map<std::string, std::set<std::string>> internal_in;
  for (const auto& g : grouping.edges) {
    TokenRec& rec = tokens[TokenOf(alignment, g.owner)];
    rec.edges.push_back(g.edge);
    if (g.internal) {
      internal_in[g.edge.to].insert(g.edge.from);
      continue;
    }
    landed.insert(g.open);
    auto it = std::find_if(rec.slots.begin(), rec.slots.end(),
                           [&](const SlotRec& s) { return s.node == g.open; });
    if (it == rec.slots.end()) {
      rec.slots.push_back({g.open, TokenOf(alignment, g.open), g.source, g.op, g.rule, {}});
      it = rec.slots.end() - 1;
    } else if (g.rule < it->rule) {
      it->preferred = g.op;
      it->rule = g.rule;
    }
    it->labels.push_back(g.edge.label);
  }
  const std::string& graph_root = graph.roots().front();
  for (auto& [token, rec] : tokens) {
    std::set<std::string> roots;
    for (const auto& n : rec.nodes) {
      if (landed.contains(n) || n == graph_root) roots.insert(n);
    }
    if (roots.size() > 1) {
      std::string list;
      for (const auto& r : roots) list += " " + r;
      throw NonDecomposable(NonDecomposableReason::kMultipleRootsNeeded,
                            "token " + std::to_string(token) + " needs roots at" + list);
    }
    if (!roots.empty()) {
      rec.root = *roots.begin();
    } else {
      rec.root = rec.nodes.front();
      for (const auto& n : rec.nodes) {
        if (!internal_in.contains(n)) {
          rec.root = n;
          break;
        }
      }
    }
  }
  return tokens;
}

AsGraph MakeConstant(const SemGraph& graph, const TokenRec& rec,
                     const std::map<std::string, RequestType>& annotations, int token) {
  SemGraph g;
  for (const auto& n : rec.nodes) g.AddNode(n, graph.Label(n));
  std::map<std::string, std::string> sources;
  for (const auto& s : rec.slots) {
    g.AddNode(s.node);
    sources[s.node] = s.source;
  }
  for (const auto& e : rec.edges) g.AddEdge(e.from, e.to, e.label);
  g.AddRoot(rec.root);
  try {
    return AsGraph(std::move(g), std::move(sources), annotations);
  } catch (const Error& e) {
    throw NonDecomposable(NonDecomposableReason::kMultipleRootsNeeded,
                          "token " + std::to_string(token) + " constant is invalid: " + e.what());
  }
}

std::map<std::string, RequestType> FlatAnnotations(const TokenRec& rec) {
  std::map<std::string, RequestType> out;
  for (const auto& s : rec.slots) out[s.source] = {};
  return out;
}

}  // namespace

std::map<int, AsGraph> BuildConstants(const SemGraph& graph, const EdgeGrouping& grouping,
                                      const Alignment& alignment) {
  std::map<int, AsGraph> out;
  for (const auto& [token, rec] : BuildSkeleton(graph, grouping, alignment)) {
    out.emplace(token, MakeConstant(graph, rec, FlatAnnotations(rec), token));
  }
  return out;
}

namespace {

using Renaming = std::map<std::string, std::string>;

// Object promotion, unaccusative subjects and passive, most preferred
// first. The identity renaming is always included.
std::vector<Renaming> VariantRenamings(const std::set<std::string>& sources) {
  static const std::vector<std::string> kObjects = {"O", "O2", "O3"};
  struct Candidate {
    int penalty;
    bool unaccusative;
    bool passive;
    Renaming renaming;
  };
  std::vector<Candidate> candidates;
  const bool has_s = sources.contains("S");
  for (bool unacc : {false, true}) {
    if (unacc && (has_s || !sources.contains("O"))) continue;
    std::vector<int> objects;
    for (int i = 0; i < 3; ++i) {
      if (sources.contains(kObjects[i]) && !(unacc && i == 0)) objects.push_back(i);
    }
    std::vector<int> target(objects.size());
    std::function<void(size_t, int)> place = [&](size_t k, int min_slot) {
      if (k == objects.size()) {
        Renaming r;
        int penalty = 0;
        if (unacc) r["O"] = "S";
        for (size_t i = 0; i < objects.size(); ++i) {
          penalty += target[i];
          r[kObjects[objects[i]]] = kObjects[target[i]];
        }
        for (bool passive : {false, true}) {
          Renaming full = r;
          if (passive) {
            std::string to_s;
            std::string to_o;
            for (const auto& s : sources) {
              std::string now = full.contains(s) ? full[s] : s;
              if (now == "S") to_o = s;
              if (now == "O") to_s = s;
            }
            if (to_s.empty() || to_o.empty()) continue;
            full[to_s] = "S";
            full[to_o] = "O";
          }
          std::erase_if(full, [](const auto& kv) { return kv.first == kv.second; });
          candidates.push_back({penalty, unacc, passive, full});
        }
        return;
      }
      for (int slot = min_slot; slot <= objects[k]; ++slot) {
        target[k] = slot;
        place(k + 1, slot + 1);
      }
    };
    place(0, 0);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.penalty != b.penalty) return a.penalty < b.penalty;
    if (a.unaccusative != b.unaccusative) return a.unaccusative;
    if (a.passive != b.passive) return !a.passive;
    return a.renaming < b.renaming;
  });
  std::vector<Renaming> out;
  for (const auto& c : candidates) {
    if (std::find(out.begin(), out.end(), c.renaming) == out.end()) out.push_back(c.renaming);
  }
  return out;
}

std::set<std::string> NodeSourceNames(const AsGraph& g) {
  std::set<std::string> names;
  for (const auto& [node, s] : g.node_sources()) names.insert(s);
  return names;
}

}  // namespace

std::vector<AsGraph> EnumerateVariants(const AsGraph& constant) {
  std::vector<AsGraph> out;
  for (const auto& r : VariantRenamings(NodeSourceNames(constant))) {
    out.push_back(constant.RenameSources(r));
  }
  return out;
}

AsGraph CanonicalizeIds(const AsGraph& graph) {
  AsGraph parsed = ParseAsGraph(SerializeAsGraph(graph));
  std::map<std::string, std::string> rename;
  for (size_t i = 0; i < parsed.graph().nodes().size(); ++i) {
    rename[parsed.graph().nodes()[i].id] = "n" + std::to_string(i);
  }
  SemGraph g;
  for (const auto& n : parsed.graph().nodes()) g.AddNode(rename[n.id], n.label);
  for (const auto& e : parsed.graph().edges()) g.AddEdge(rename[e.from], rename[e.to], e.label);
  g.AddRoot(rename[parsed.root()]);
  std::map<std::string, std::string> sources;
  for (const auto& [node, s] : parsed.node_sources()) sources[rename[node]] = s;
  std::map<std::string, RequestType> annotations;
  for (const auto& e : parsed.type().entries()) annotations[e.source] = e.request;
  return AsGraph(std::move(g), std::move(sources), std::move(annotations));
}

namespace {

[[noreturn]] void Fail(NonDecomposableReason reason, const std::string& detail) {
  throw NonDecomposable(reason, detail);
}

struct TreeEdge {
  int parent = 0;
  OpKind kind = OpKind::kApp;
  std::string source;
  bool is_virtual = false;
  int slot = -1;
};

class Decomposer {
 public:
  Decomposer(const DecompositionInput& input, const HeuristicTable& table,
             const DecomposeOptions& options)
      : input_(input), table_(table), options_(options) {}

  AmDepTree Run() {
    const SemGraph& g = input_.graph;
    if (g.roots().size() != 1) {
      throw Error(ErrorCode::kInvalidGraph, "decomposition needs exactly one graph root");
    }
    for (const auto& [node, token] : input_.alignment) {
      if (token > static_cast<int>(input_.tokens.size())) {
        throw Error(ErrorCode::kUnalignableNode, "node '" + node + "' aligned past the last token");
      }
    }
    if (WeaklyConnectedComponents(g).size() > 1) {
      throw NonDecomposable(NonDecomposableReason::kMultipleRootsNeeded, "graph is not connected");
    }
    EdgeGrouping grouping = GroupEdges(g, table_);
    AssignSources(grouping, input_.alignment, table_);
    skeleton_ = BuildSkeleton(g, grouping, input_.alignment);
    root_token_ = TokenOf(input_.alignment, g.roots().front());
    ChooseOpKinds();
    CollectLanders();

    // Variant search over tokens whose names take part in reentrancies.
    std::set<int> involved;
    for (const auto& [u, list] : landers_) {
      if (list.size() < 2) continue;
      for (const auto& [t, slot] : list) involved.insert(t);
    }
    std::map<int, std::vector<Renaming>> variants;
    for (const auto& [t, rec] : skeleton_) {
      std::set<std::string> names;
      for (const auto& s : rec.slots) names.insert(s.source);
      variants[t] = VariantRenamings(names);
    }
    std::vector<int> dims(involved.begin(), involved.end());
    std::optional<NonDecomposable> first_failure;
    size_t tried = 0;
    size_t max_sum = 0;
    for (int t : dims) max_sum += variants[t].size() - 1;
    std::vector<size_t> choice(dims.size(), 0);
    for (size_t sum = 0; sum <= max_sum && tried < options_.variant_cap; ++sum) {
      // All choice vectors with the given rank sum, lexicographically.
      std::function<bool(size_t, size_t)> visit = [&](size_t k, size_t left) -> bool {
        if (tried >= options_.variant_cap) return false;
        if (k == dims.size()) {
          if (left != 0) return false;
          ++tried;
          std::map<int, const Renaming*> pick;
          for (const auto& [t, list] : variants) pick[t] = &list.front();
          for (size_t i = 0; i < dims.size(); ++i) pick[dims[i]] = &variants[dims[i]][choice[i]];
          try {
            result_ = Attempt(pick);
            return true;
          } catch (const NonDecomposable& e) {
            if (!first_failure) first_failure = e;
          }
          return false;
        }
        const size_t limit = std::min(left, variants[dims[k]].size() - 1);
        for (size_t c = 0; c <= limit; ++c) {
          choice[k] = c;
          if (visit(k + 1, left - c)) return true;
        }
        return false;
      };
      if (visit(0, sum)) return *result_;
    }
    throw *first_failure;
  }

 private:
  // Reached tokens apply all their slots; each remaining token becomes a
  // modifier through exactly one slot.
  void ChooseOpKinds() {
    std::set<int> reached = {root_token_};
    std::vector<int> queue = {root_token_};
    auto expand = [&] {
      while (!queue.empty()) {
        int t = queue.back();
        queue.pop_back();
        const TokenRec& rec = skeleton_.at(t);
        for (size_t i = 0; i < rec.slots.size(); ++i) {
          if (mod_slot_.contains(t) && mod_slot_[t] == static_cast<int>(i)) continue;
          if (reached.insert(rec.slots[i].token).second) queue.push_back(rec.slots[i].token);
        }
      }
    };
    expand();
    while (reached.size() < skeleton_.size()) {
      std::set<int> targeted;
      for (const auto& [t, rec] : skeleton_) {
        if (reached.contains(t)) continue;
        for (const auto& s : rec.slots) {
          if (!reached.contains(s.token)) targeted.insert(s.token);
        }
      }
      int best = -1;
      bool best_untargeted = false;
      for (const auto& [t, rec] : skeleton_) {
        if (reached.contains(t)) continue;
        bool attaches = std::any_of(rec.slots.begin(), rec.slots.end(),
                                    [&](const SlotRec& s) { return reached.contains(s.token); });
        if (!attaches) continue;
        const bool untargeted = !targeted.contains(t);
        if (best < 0 || (untargeted && !best_untargeted)) {
          best = t;
          best_untargeted = untargeted;
        }
      }
      if (best < 0) Fail(NonDecomposableReason::kNotATree, "tokens unreachable from the root");
      const TokenRec& rec = skeleton_.at(best);
      int pick = -1;
      auto key = [&](const SlotRec& s) {
        return std::make_tuple(s.preferred != OpKind::kMod, s.source != "S", s.source, s.node);
      };
      for (size_t i = 0; i < rec.slots.size(); ++i) {
        if (!reached.contains(rec.slots[i].token)) continue;
        if (pick < 0 || key(rec.slots[i]) < key(rec.slots[pick])) pick = static_cast<int>(i);
      }
      mod_slot_[best] = pick;
      reached.insert(best);
      queue.push_back(best);
      expand();
    }
  }

  bool IsModSlot(int t, size_t i) const {
    auto it = mod_slot_.find(t);
    return it != mod_slot_.end() && it->second == static_cast<int>(i);
  }

  void CollectLanders() {
    for (const auto& [t, rec] : skeleton_) {
      for (size_t i = 0; i < rec.slots.size(); ++i) {
        if (!IsModSlot(t, i)) landers_[rec.slots[i].token].push_back({t, static_cast<int>(i)});
      }
    }
  }

  // Name of slot `i` of token `t` under the current variant choice.
  std::string Name(int t, int i) const {
    const std::string& raw = skeleton_.at(t).slots[i].source;
    const Renaming& r = *names_.at(t);
    auto it = r.find(raw);
    return it == r.end() ? raw : it->second;
  }

  std::vector<int> PathFromRoot(int t) const {
    std::vector<int> path;
    for (int cur = t; cur != root_token_; cur = parent_.at(cur).parent) {
      path.push_back(cur);
      if (path.size() > skeleton_.size()) Fail(NonDecomposableReason::kNotATree, "cycle");
    }
    path.push_back(root_token_);
    std::reverse(path.begin(), path.end());
    return path;
  }

  bool Anchored(int t) const {
    for (size_t steps = 0; t != root_token_; ++steps) {
      auto it = parent_.find(t);
      if (it == parent_.end() || steps > skeleton_.size()) return false;
      t = it->second.parent;
    }
    return true;
  }

  const std::vector<std::string>& EdgeLabels(const TreeEdge& e, int child) const {
    static const std::vector<std::string> kNone;
    if (e.is_virtual) return kNone;
    const int owner = e.kind == OpKind::kMod ? child : e.parent;
    return skeleton_.at(owner).slots[e.slot].labels;
  }

  bool AnyLabelMatches(const std::vector<std::string>& labels,
                       const std::vector<std::string>& globs) const {
    for (const auto& l : labels) {
      for (const auto& g : globs) {
        if (GlobMatch(g, l)) return true;
      }
    }
    return false;
  }

  bool CoordinationEligible(int v, int child, const std::vector<std::vector<int>>& paths) const {
    const TreeEdge& e = parent_.at(child);
    if (e.kind != OpKind::kApp) return false;
    switch (table_.patterns.coordination) {
      case CoordinationMode::kNone:
        return false;
      case CoordinationMode::kEdgeLabel:
        return AnyLabelMatches(EdgeLabels(e, child), {table_.patterns.coordination_label});
      case CoordinationMode::kCommonArgument: {
        std::set<int> children;
        for (const auto& p : paths) {
          auto it = std::find(p.begin(), p.end(), v);
          if (it != p.end() && it + 1 != p.end()) children.insert(*(it + 1));
        }
        return children.size() >= 2;
      }
    }
    return false;
  }

  void CheckPath(const std::vector<int>& path, size_t top, const std::string& name, bool control,
                 const std::vector<std::vector<int>>& paths, int shared) {
    for (size_t j = top; j + 1 < path.size(); ++j) {
      const int v = path[j];
      const int w = path[j + 1];
      const TreeEdge& e = parent_.at(w);
      bool ok = false;
      if (j == top) {
        ok = control || CoordinationEligible(v, w, paths);
      } else if (e.kind == OpKind::kApp) {
        const auto& labels = EdgeLabels(e, w);
        ok = (name == "S" && AnyLabelMatches(labels, table_.patterns.raising_labels)) ||
             (!table_.patterns.comparative_label.empty() &&
              AnyLabelMatches(labels, {table_.patterns.comparative_label})) ||
             CoordinationEligible(v, w, paths);
      }
      if (!ok) {
        Fail(NonDecomposableReason::kUnmatchedReentrancy,
             "token " + std::to_string(shared) + ": no pattern passes source " + name +
                 " from token " + std::to_string(w) + " to token " + std::to_string(v));
      }
    }
  }

  void Resolve(int u) {
    const auto& list = landers_.at(u);
    std::vector<std::vector<int>> paths;
    std::set<std::string> names;
    for (const auto& [t, slot] : list) {
      paths.push_back(PathFromRoot(t));
      names.insert(Name(t, slot));
    }
    if (names.size() != 1) {
      std::string all;
      for (const auto& n : names) all += " " + n;
      Fail(NonDecomposableReason::kUnmatchedReentrancy,
           "token " + std::to_string(u) + " is shared under different sources:" + all);
    }
    const std::string name = *names.begin();
    size_t depth = 0;
    while (true) {
      bool same = true;
      for (const auto& p : paths) {
        if (depth >= p.size() || p[depth] != paths.front()[depth]) same = false;
      }
      if (!same) break;
      ++depth;
    }
    const int lca = paths.front()[depth - 1];
    int control_slot = -1;
    for (const auto& [t, slot] : list) {
      if (t == lca) control_slot = slot;
    }
    for (const auto& p : paths) {
      if (p.back() == lca) continue;
      CheckPath(p, depth - 1, name, control_slot >= 0, paths, u);
    }
    if (control_slot >= 0) {
      parent_[u] = {lca, OpKind::kApp, name, false, control_slot};
      return;
    }
    for (size_t i = 0; i < skeleton_.at(lca).slots.size(); ++i) {
      if (Name(lca, static_cast<int>(i)) == name) {
        Fail(NonDecomposableReason::kUnmatchedReentrancy,
             "coordination token " + std::to_string(lca) + " already has source " + name);
      }
    }
    parent_[u] = {lca, OpKind::kApp, name, true, -1};
  }

  void BuildTree() {
    parent_.clear();
    std::vector<int> pending;
    for (const auto& [u, rec] : skeleton_) {
      auto it = landers_.find(u);
      const size_t n = it == landers_.end() ? 0 : it->second.size();
      if (u == root_token_) {
        if (n > 0) {
          Fail(NonDecomposableReason::kUnmatchedReentrancy,
               "root token " + std::to_string(u) + " is also an argument");
        }
        continue;
      }
      if (auto m = mod_slot_.find(u); m != mod_slot_.end()) {
        if (n > 0) {
          Fail(NonDecomposableReason::kNotATree,
               "modifier token " + std::to_string(u) + " is also an argument");
        }
        parent_[u] = {rec.slots[m->second].token, OpKind::kMod, Name(u, m->second), false,
                      m->second};
        continue;
      }
      if (n == 1) {
        const auto& [t, slot] = it->second.front();
        parent_[u] = {t, OpKind::kApp, Name(t, slot), false, slot};
      } else if (n >= 2) {
        pending.push_back(u);
      } else {
        Fail(NonDecomposableReason::kNotATree, "token " + std::to_string(u) + " has no head");
      }
    }
    while (!pending.empty()) {
      auto ready = std::find_if(pending.begin(), pending.end(), [&](int u) {
        const auto& list = landers_.at(u);
        return std::all_of(list.begin(), list.end(),
                           [&](const auto& l) { return Anchored(l.first); });
      });
      if (ready == pending.end()) {
        Fail(NonDecomposableReason::kNotATree, "cyclic argument sharing");
      }
      const int u = *ready;
      pending.erase(ready);
      Resolve(u);
    }
    for (const auto& [u, rec] : skeleton_) {
      if (!Anchored(u)) Fail(NonDecomposableReason::kNotATree, "dependency cycle");
    }
  }

  RequestType SubtreeType(int t) {
    if (auto it = types_.find(t); it != types_.end()) return it->second;
    if (!in_progress_.insert(t).second) {
      Fail(NonDecomposableReason::kNotATree, "cyclic type dependency at token " + std::to_string(t));
    }
    const AsGraph& constant = Constant(t);
    std::vector<ChildType> children;
    for (const auto& [c, e] : parent_) {
      if (e.parent != t) continue;
      children.push_back({e.kind == OpKind::kApp ? Operation::App(e.source) : Operation::Mod(e.source),
                          SubtreeType(c)});
    }
    auto found = FindAdmissibleOrder(constant.type(), children);
    if (!found) {
      Fail(NonDecomposableReason::kIllTyped,
           "token " + std::to_string(t) + ": no admissible order for " + constant.type().ToString());
    }
    in_progress_.erase(t);
    return types_[t] = found->second;
  }

  const AsGraph& Constant(int t) {
    if (auto it = constants_.find(t); it != constants_.end()) return it->second;
    const TokenRec& rec = skeleton_.at(t);
    TokenRec renamed = rec;
    std::map<std::string, RequestType> annotations;
    for (size_t i = 0; i < rec.slots.size(); ++i) {
      renamed.slots[i].source = Name(t, static_cast<int>(i));
      annotations[renamed.slots[i].source] =
          IsModSlot(t, i) ? RequestType{} : SubtreeType(rec.slots[i].token);
    }
    return constants_.emplace(t, MakeConstant(input_.graph, renamed, annotations, t)).first->second;
  }

  // Replaces the lexical node's label by the marker; returns the pattern.
  std::optional<LexPattern> Delexicalize(int t, AsGraph& constant) const {
    const AmToken& tok = input_.tokens.at(t - 1);
    const ModifiedLemmaRules& rules =
        options_.lemma_rules ? *options_.lemma_rules : ModifiedLemmaRules::Default();
    const TokenRec& rec = skeleton_.at(t);
    std::vector<std::string> order;
    for (const auto& e : rec.edges) {
      if (e.label == "carg" && std::find(rec.nodes.begin(), rec.nodes.end(), e.to) != rec.nodes.end()) {
        order.push_back(e.to);
      }
    }
    order.push_back(rec.root);
    order.insert(order.end(), rec.nodes.begin(), rec.nodes.end());
    for (const auto& n : order) {
      const auto& label = input_.graph.Label(n);
      if (!label) continue;
      LexPattern p = amtool::Delexicalize(*label, tok.form, tok.lemma, tok.pos, rules);
      if (HasPlaceholder(p)) {
        constant = constant.WithLabel(n, std::string(kLexMarker));
        return p;
      }
    }
    return std::nullopt;
  }

  AmDepTree Attempt(const std::map<int, const Renaming*>& names) {
    names_ = names;
    types_.clear();
    constants_.clear();
    in_progress_.clear();
    BuildTree();
    const RequestType final_type = SubtreeType(root_token_);
    if (!final_type.empty()) {
      Fail(NonDecomposableReason::kIllTyped, "final type " + final_type.ToString() + " is not empty");
    }
    AmDepTree tree;
    tree.id = input_.id;
    tree.text = input_.text;
    for (const auto& src : input_.tokens) {
      AmToken t;
      t.form = src.form;
      t.lemma = src.lemma;
      t.pos = src.pos;
      t.ne = src.ne;
      tree.tokens.push_back(std::move(t));
    }
    for (const auto& [t, rec] : skeleton_) {
      AmToken& tok = tree.at(t);
      AsGraph constant = Constant(t);
      tok.lex_label = Delexicalize(t, constant);
      tok.supertag = CanonicalizeIds(constant);
      if (t == root_token_) {
        tok.head = 0;
        tok.edge = Operation::Root();
      } else {
        const TreeEdge& e = parent_.at(t);
        tok.head = e.parent;
        tok.edge = e.kind == OpKind::kApp ? Operation::App(e.source) : Operation::Mod(e.source);
      }
    }
    Verify(tree);
    return tree;
  }

  void Verify(const AmDepTree& tree) const {
    Evaluation ev;
    try {
      ev = Evaluate(tree);
    } catch (const Error& e) {
      Fail(NonDecomposableReason::kIllTyped, e.what());
    }
    auto colour = [](const Alignment& alignment) {
      return [&alignment](const SemGraph& g, const std::string& id) {
        const auto& label = g.Label(id);
        std::string c = (label ? "L:" + *label : "U") + "|" + std::to_string(alignment.at(id));
        if (std::find(g.roots().begin(), g.roots().end(), id) != g.roots().end()) c += "|root";
        return c;
      };
    };
    if (!FindIsomorphism(ev.graph, input_.graph, colour(ev.alignment), colour(input_.alignment))) {
      Fail(NonDecomposableReason::kRoundTripMismatch, "evaluated tree differs from the input graph");
    }
  }

  const DecompositionInput& input_;
  const HeuristicTable& table_;
  const DecomposeOptions& options_;
  Skeleton skeleton_;
  int root_token_ = 0;
  std::map<int, int> mod_slot_;
  std::map<int, std::vector<std::pair<int, int>>> landers_;
  std::map<int, const Renaming*> names_;
  std::map<int, TreeEdge> parent_;
  std::map<int, RequestType> types_;
  std::map<int, AsGraph> constants_;
  std::set<int> in_progress_;
  std::optional<AmDepTree> result_;
};

}  // namespace

DecompositionResult Decompose(const DecompositionInput& input, const HeuristicTable& table,
                              const DecomposeOptions& options) {
  DecompositionResult result;
  try {
    result.tree = Decomposer(input, table, options).Run();
  } catch (const NonDecomposable& e) {
    result.reason = e.reason();
    result.detail = e.what();
  }
  return result;
}

}  // namespace amtool
