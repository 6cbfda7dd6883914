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

#ifndef AMTOOL_GRAPH_HPP_
#define AMTOOL_GRAPH_HPP_

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace amtool {

struct Node {
  std::string id;
  std::optional<std::string> label;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  std::string from;
  std::string to;
  std::string label;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Node id -> 1-based token index; 0 is the artificial root.
using Alignment = std::map<std::string, int>;

// Rooted (possibly multi-rooted) directed graph with optional node labels
// and labeled edges. Node ids are opaque strings; insertion order is kept so
// every traversal is deterministic. Identical (from, to, label) edges are
// stored once.
class SemGraph {
 public:
  void AddNode(std::string id, std::optional<std::string> label = std::nullopt);
  // Returns false when the edge already existed.
  bool AddEdge(std::string from, std::string to, std::string label);
  void AddRoot(const std::string& id);
  void SetRoots(std::vector<std::string> roots);
  void SetLabel(const std::string& id, std::optional<std::string> label);

  void RemoveNode(const std::string& id);
  void RemoveEdge(const Edge& edge);

  bool HasNode(const std::string& id) const { return index_.contains(id); }
  bool HasEdge(const Edge& edge) const { return edge_set_.contains(edge); }
  const std::optional<std::string>& Label(const std::string& id) const;

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& roots() const { return roots_; }
  size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  std::vector<Edge> OutEdges(const std::string& id) const;
  std::vector<Edge> InEdges(const std::string& id) const;

  // Structural equality: same node ids with same labels, same edge set and
  // same root list; insertion order is ignored.
  friend bool operator==(const SemGraph& a, const SemGraph& b);

 private:
  std::vector<Node> nodes_;
  std::unordered_map<std::string, size_t> index_;
  std::vector<Edge> edges_;
  std::set<Edge> edge_set_;
  std::vector<std::string> roots_;
};

std::vector<std::vector<std::string>> WeaklyConnectedComponents(const SemGraph& graph);

// Per-node colour used to constrain isomorphism (label, source, root marker...).
using NodeColouring = std::function<std::string(const SemGraph&, const std::string&)>;

// Finds a bijection between node sets preserving colours and labeled edges.
// Returns the mapping a-id -> b-id, or nullopt.
std::optional<std::map<std::string, std::string>> FindIsomorphism(
    const SemGraph& a, const SemGraph& b, const NodeColouring& colour_a,
    const NodeColouring& colour_b);

// Isomorphism up to node ids; labels, edges and the root set must correspond.
bool Isomorphic(const SemGraph& a, const SemGraph& b);

// Orders numeric ids numerically and everything else lexicographically
// ("2" < "10" < "x1").
bool NaturalLess(const std::string& a, const std::string& b);

}  // namespace amtool

#endif  // AMTOOL_GRAPH_HPP_
