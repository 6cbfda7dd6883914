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

#include "amtool/graph.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "amtool/error.hpp"

namespace amtool {

void SemGraph::AddNode(std::string id, std::optional<std::string> label) {
  if (index_.contains(id)) {
    throw Error(ErrorCode::kInvalidGraph, "duplicate node id '" + id + "'");
  }
  index_.emplace(id, nodes_.size());
  nodes_.push_back(Node{std::move(id), std::move(label)});
}

bool SemGraph::AddEdge(std::string from, std::string to, std::string label) {
  if (!HasNode(from) || !HasNode(to)) {
    throw Error(ErrorCode::kInvalidGraph,
                "edge " + from + " -" + label + "-> " + to + " has a missing endpoint");
  }
  Edge edge{std::move(from), std::move(to), std::move(label)};
  if (!edge_set_.insert(edge).second) return false;
  edges_.push_back(std::move(edge));
  return true;
}

void SemGraph::AddRoot(const std::string& id) {
  if (!HasNode(id)) throw Error(ErrorCode::kInvalidGraph, "root '" + id + "' is not a node");
  if (std::find(roots_.begin(), roots_.end(), id) == roots_.end()) roots_.push_back(id);
}

void SemGraph::SetRoots(std::vector<std::string> roots) {
  roots_.clear();
  for (const auto& r : roots) AddRoot(r);
}

void SemGraph::SetLabel(const std::string& id, std::optional<std::string> label) {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorCode::kInvalidGraph, "no node '" + id + "'");
  nodes_[it->second].label = std::move(label);
}

void SemGraph::RemoveNode(const std::string& id) {
  auto it = index_.find(id);
  if (it == index_.end()) return;
  nodes_.erase(nodes_.begin() + static_cast<std::ptrdiff_t>(it->second));
  index_.clear();
  for (size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i].id, i);
  std::erase_if(edges_, [&](const Edge& e) { return e.from == id || e.to == id; });
  std::erase_if(edge_set_, [&](const Edge& e) { return e.from == id || e.to == id; });
  std::erase(roots_, id);
}

void SemGraph::RemoveEdge(const Edge& edge) {
  if (edge_set_.erase(edge) == 0) return;
  std::erase(edges_, edge);
}

const std::optional<std::string>& SemGraph::Label(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorCode::kInvalidGraph, "no node '" + id + "'");
  return nodes_[it->second].label;
}

std::vector<Edge> SemGraph::OutEdges(const std::string& id) const {
  std::vector<Edge> out;
  for (const auto& e : edges_) {
    if (e.from == id) out.push_back(e);
  }
  return out;
}

std::vector<Edge> SemGraph::InEdges(const std::string& id) const {
  std::vector<Edge> in;
  for (const auto& e : edges_) {
    if (e.to == id) in.push_back(e);
  }
  return in;
}

bool operator==(const SemGraph& a, const SemGraph& b) {
  if (a.nodes_.size() != b.nodes_.size() || a.edge_set_ != b.edge_set_ ||
      a.roots_ != b.roots_) {
    return false;
  }
  for (const auto& n : a.nodes_) {
    auto it = b.index_.find(n.id);
    if (it == b.index_.end() || b.nodes_[it->second].label != n.label) return false;
  }
  return true;
}

std::vector<std::vector<std::string>> WeaklyConnectedComponents(const SemGraph& graph) {
  std::unordered_map<std::string, size_t> pos;
  for (size_t i = 0; i < graph.nodes().size(); ++i) pos.emplace(graph.nodes()[i].id, i);
  std::vector<std::vector<size_t>> adjacent(graph.size());
  for (const auto& e : graph.edges()) {
    adjacent[pos[e.from]].push_back(pos[e.to]);
    adjacent[pos[e.to]].push_back(pos[e.from]);
  }
  std::vector<int> component(graph.size(), -1);
  std::vector<std::vector<std::string>> result;
  for (size_t start = 0; start < graph.size(); ++start) {
    if (component[start] >= 0) continue;
    const int c = static_cast<int>(result.size());
    std::vector<size_t> members;
    std::vector<size_t> stack{start};
    component[start] = c;
    while (!stack.empty()) {
      size_t v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (size_t w : adjacent[v]) {
        if (component[w] < 0) {
          component[w] = c;
          stack.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    auto& ids = result.emplace_back();
    for (size_t v : members) ids.push_back(graph.nodes()[v].id);
  }
  return result;
}

namespace {

// Dense view of a graph for the matcher.
struct Indexed {
  std::vector<std::string> ids;
  std::unordered_map<std::string, size_t> pos;
  // labels[u][v] = sorted labels of edges u -> v
  std::vector<std::map<size_t, std::vector<std::string>>> out;
  std::vector<std::map<size_t, std::vector<std::string>>> in;
  std::vector<std::string> signature;
};

Indexed Index(const SemGraph& g, const NodeColouring& colour) {
  Indexed ix;
  for (const auto& n : g.nodes()) {
    ix.pos.emplace(n.id, ix.ids.size());
    ix.ids.push_back(n.id);
  }
  ix.out.resize(ix.ids.size());
  ix.in.resize(ix.ids.size());
  for (const auto& e : g.edges()) {
    size_t u = ix.pos[e.from];
    size_t v = ix.pos[e.to];
    ix.out[u][v].push_back(e.label);
    ix.in[v][u].push_back(e.label);
  }
  for (auto& m : ix.out) {
    for (auto& [_, labels] : m) std::sort(labels.begin(), labels.end());
  }
  for (auto& m : ix.in) {
    for (auto& [_, labels] : m) std::sort(labels.begin(), labels.end());
  }
  // Colour plus local edge-label profile, refined twice with neighbour
  // signatures (Weisfeiler-Lehman style).
  ix.signature.resize(ix.ids.size());
  std::vector<std::string> base(ix.ids.size());
  for (size_t u = 0; u < ix.ids.size(); ++u) base[u] = ix.signature[u] = colour(g, ix.ids[u]);
  for (int round = 0; round < 2; ++round) {
    std::vector<std::string> next(ix.ids.size());
    for (size_t u = 0; u < ix.ids.size(); ++u) {
      std::vector<std::string> parts;
      for (const auto& [v, labels] : ix.out[u]) {
        for (const auto& l : labels) parts.push_back(">" + l + "|" + ix.signature[v]);
      }
      for (const auto& [v, labels] : ix.in[u]) {
        for (const auto& l : labels) parts.push_back("<" + l + "|" + ix.signature[v]);
      }
      std::sort(parts.begin(), parts.end());
      std::string s = ix.signature[u] + "{";
      for (const auto& p : parts) s += p + ";";
      next[u] = base[u] + "#" + std::to_string(std::hash<std::string>{}(s + "}"));
    }
    ix.signature = std::move(next);
  }
  return ix;
}

const std::vector<std::string>& LabelsBetween(
    const std::vector<std::map<size_t, std::vector<std::string>>>& adj, size_t u, size_t v) {
  static const std::vector<std::string> kNone;
  auto it = adj[u].find(v);
  return it == adj[u].end() ? kNone : it->second;
}

class Matcher {
 public:
  Matcher(const Indexed& a, const Indexed& b) : a_(a), b_(b) {}

  std::optional<std::vector<size_t>> Run() {
    const size_t n = a_.ids.size();
    if (n != b_.ids.size()) return std::nullopt;
    std::map<std::string, std::vector<size_t>> classes_b;
    for (size_t v = 0; v < n; ++v) classes_b[b_.signature[v]].push_back(v);
    std::map<std::string, size_t> count_a;
    for (size_t u = 0; u < n; ++u) count_a[a_.signature[u]]++;
    for (const auto& [sig, members] : classes_b) {
      if (count_a[sig] != members.size()) return std::nullopt;
    }
    if (count_a.size() != classes_b.size()) return std::nullopt;
    candidates_.resize(n);
    for (size_t u = 0; u < n; ++u) candidates_[u] = classes_b[a_.signature[u]];
    // Visit small candidate classes first, then grow along edges.
    order_.clear();
    std::vector<bool> placed(n, false);
    while (order_.size() < n) {
      size_t best = n;
      for (size_t u = 0; u < n; ++u) {
        if (placed[u]) continue;
        bool connected = false;
        for (size_t w : order_) {
          if (a_.out[u].contains(w) || a_.in[u].contains(w)) connected = true;
        }
        if (best == n) {
          best = u;
          best_connected_ = connected;
          continue;
        }
        bool better = (connected && !best_connected_) ||
                      (connected == best_connected_ &&
                       candidates_[u].size() < candidates_[best].size());
        if (better) {
          best = u;
          best_connected_ = connected;
        }
      }
      placed[best] = true;
      order_.push_back(best);
    }
    map_.assign(n, n);
    used_.assign(n, false);
    if (!Extend(0)) return std::nullopt;
    return map_;
  }

 private:
  bool Consistent(size_t u, size_t v) const {
    if (LabelsBetween(a_.out, u, u) != LabelsBetween(b_.out, v, v)) return false;
    for (size_t i = 0; i < a_.ids.size(); ++i) {
      size_t j = map_[i];
      if (j == a_.ids.size() || i == u) continue;
      if (LabelsBetween(a_.out, u, i) != LabelsBetween(b_.out, v, j)) return false;
      if (LabelsBetween(a_.in, u, i) != LabelsBetween(b_.in, v, j)) return false;
    }
    return true;
  }

  bool Extend(size_t depth) {
    if (depth == order_.size()) return true;
    size_t u = order_[depth];
    for (size_t v : candidates_[u]) {
      if (used_[v] || !Consistent(u, v)) continue;
      map_[u] = v;
      used_[v] = true;
      if (Extend(depth + 1)) return true;
      map_[u] = a_.ids.size();
      used_[v] = false;
    }
    return false;
  }

  const Indexed& a_;
  const Indexed& b_;
  std::vector<std::vector<size_t>> candidates_;
  std::vector<size_t> order_;
  std::vector<size_t> map_;
  std::vector<bool> used_;
  bool best_connected_ = false;
};

}  // namespace

std::optional<std::map<std::string, std::string>> FindIsomorphism(
    const SemGraph& a, const SemGraph& b, const NodeColouring& colour_a,
    const NodeColouring& colour_b) {
  if (a.size() != b.size() || a.edges().size() != b.edges().size()) return std::nullopt;
  Indexed ia = Index(a, colour_a);
  Indexed ib = Index(b, colour_b);
  auto mapping = Matcher(ia, ib).Run();
  if (!mapping) return std::nullopt;
  std::map<std::string, std::string> result;
  for (size_t u = 0; u < mapping->size(); ++u) result[ia.ids[u]] = ib.ids[(*mapping)[u]];
  return result;
}

bool Isomorphic(const SemGraph& a, const SemGraph& b) {
  auto colour = [](const SemGraph& g, const std::string& id) {
    const auto& label = g.Label(id);
    std::string c = label ? "L:" + *label : "U";
    if (std::find(g.roots().begin(), g.roots().end(), id) != g.roots().end()) c += "|root";
    return c;
  };
  return a.roots().size() == b.roots().size() &&
         FindIsomorphism(a, b, colour, colour).has_value();
}

bool NaturalLess(const std::string& a, const std::string& b) {
  size_t i = 0;
  size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      size_t ei = i;
      size_t ej = j;
      while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
      while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
      std::string na = a.substr(i, ei - i);
      std::string nb = b.substr(j, ej - j);
      na.erase(0, std::min(na.find_first_not_of('0'), na.size()));
      nb.erase(0, std::min(nb.find_first_not_of('0'), nb.size()));
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ei;
      j = ej;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

}  // namespace amtool
