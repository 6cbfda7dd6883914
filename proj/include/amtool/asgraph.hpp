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

#ifndef AMTOOL_ASGRAPH_HPP_
#define AMTOOL_ASGRAPH_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "amtool/graph.hpp"
#include "amtool/request_type.hpp"

namespace amtool {

// A graph fragment with exactly one root, named open slots (sources) and a
// request type. The type's domain is exactly the set of source names; each
// source's annotation is its request. Instances are immutable once built.
class AsGraph {
 public:
  // Throws kInvalidGraph (root count, connectivity, unknown nodes),
  // kDuplicateSource (two nodes with one name) or kMalformedType (bad name,
  // annotation for a source that is not present).
  AsGraph(SemGraph graph, std::map<std::string, std::string> node_sources,
          std::map<std::string, RequestType> annotations = {});

  // One labeled node, no sources.
  static AsGraph Constant(const std::string& label, const std::string& id = "n");

  const SemGraph& graph() const { return graph_; }
  const std::string& root() const { return graph_.roots().front(); }
  // node id -> source name
  const std::map<std::string, std::string>& node_sources() const { return node_sources_; }
  const RequestType& type() const { return type_; }

  std::optional<std::string> NodeOf(std::string_view source) const;
  std::optional<std::string> SourceAt(const std::string& node) const;
  bool HasSource(std::string_view source) const { return type_.Contains(source); }

  // Renames sources (keys and annotation contents); names absent from the
  // map are kept. Throws kDuplicateSource if the renaming is not injective.
  AsGraph RenameSources(const std::map<std::string, std::string>& renaming) const;
  // Replaces the annotation of one existing source.
  AsGraph WithAnnotation(const std::string& source, RequestType request) const;
  // Replaces the label of one node.
  AsGraph WithLabel(const std::string& node, std::optional<std::string> label) const;

 private:
  SemGraph graph_;
  std::map<std::string, std::string> node_sources_;
  RequestType type_;
};

// Extended PENMAN, e.g. "(w / want-01 :ARG0 (s<S>) :ARG1 (o<O[S]>))".
// Throws kSyntax with the byte offset, plus the constructor's errors.
AsGraph ParseAsGraph(std::string_view text);

// Canonical text: depth-first from the root, incident edges ordered by
// label, then direction, then neighbour id.
std::string SerializeAsGraph(const AsGraph& graph);

// Type of the graph (identical to graph.type()).
inline const RequestType& TypeOf(const AsGraph& graph) { return graph.type(); }

// Bijection preserving labels, edges, root, source names and annotations.
bool Isomorphic(const AsGraph& a, const AsGraph& b);

}  // namespace amtool

#endif  // AMTOOL_ASGRAPH_HPP_
