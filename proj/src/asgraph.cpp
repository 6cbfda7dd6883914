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

#include "amtool/asgraph.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <vector>

#include "amtool/error.hpp"

namespace amtool {

AsGraph::AsGraph(SemGraph graph, std::map<std::string, std::string> node_sources,
                 std::map<std::string, RequestType> annotations)
    : graph_(std::move(graph)), node_sources_(std::move(node_sources)) {
  if (graph_.empty()) throw Error(ErrorCode::kInvalidGraph, "as-graph without nodes");
  if (graph_.roots().size() != 1) {
    throw Error(ErrorCode::kInvalidGraph,
                "as-graph needs exactly one root, got " + std::to_string(graph_.roots().size()));
  }
  if (WeaklyConnectedComponents(graph_).size() != 1) {
    throw Error(ErrorCode::kInvalidGraph, "as-graph is not weakly connected");
  }
  std::set<std::string> names;
  for (const auto& [node, source] : node_sources_) {
    if (!graph_.HasNode(node)) {
      throw Error(ErrorCode::kInvalidGraph, "source " + source + " on unknown node " + node);
    }
    if (!IsValidSourceName(source)) {
      throw Error(ErrorCode::kMalformedType, "invalid source name '" + source + "'");
    }
    if (!names.insert(source).second) {
      throw Error(ErrorCode::kDuplicateSource, "source " + source + " appears on two nodes");
    }
    type_.Set(source, RequestType{});
  }
  for (auto& [source, request] : annotations) {
    if (!names.contains(source)) {
      throw Error(ErrorCode::kMalformedType, "annotation for absent source " + source);
    }
    type_.Set(source, std::move(request));
  }
}

AsGraph AsGraph::Constant(const std::string& label, const std::string& id) {
  SemGraph g;
  g.AddNode(id, label);
  g.AddRoot(id);
  return AsGraph(std::move(g), {});
}

std::optional<std::string> AsGraph::NodeOf(std::string_view source) const {
  for (const auto& [node, s] : node_sources_) {
    if (s == source) return node;
  }
  return std::nullopt;
}

std::optional<std::string> AsGraph::SourceAt(const std::string& node) const {
  auto it = node_sources_.find(node);
  if (it == node_sources_.end()) return std::nullopt;
  return it->second;
}

namespace {

RequestType RenameInType(const RequestType& type,
                         const std::map<std::string, std::string>& renaming) {
  RequestType out;
  for (const auto& e : type.entries()) {
    auto it = renaming.find(e.source);
    const std::string& name = it == renaming.end() ? e.source : it->second;
    if (out.Contains(name)) {
      throw Error(ErrorCode::kDuplicateSource, "renaming merges source " + name);
    }
    out.Set(name, RenameInType(e.request, renaming));
  }
  return out;
}

}  // namespace

AsGraph AsGraph::RenameSources(const std::map<std::string, std::string>& renaming) const {
  std::map<std::string, std::string> sources;
  for (const auto& [node, s] : node_sources_) {
    auto it = renaming.find(s);
    sources[node] = it == renaming.end() ? s : it->second;
  }
  RequestType renamed = RenameInType(type_, renaming);
  std::map<std::string, RequestType> annotations;
  for (const auto& e : renamed.entries()) annotations[e.source] = e.request;
  return AsGraph(graph_, std::move(sources), std::move(annotations));
}

AsGraph AsGraph::WithAnnotation(const std::string& source, RequestType request) const {
  std::map<std::string, RequestType> annotations;
  for (const auto& e : type_.entries()) annotations[e.source] = e.request;
  annotations[source] = std::move(request);
  return AsGraph(graph_, node_sources_, std::move(annotations));
}

AsGraph AsGraph::WithLabel(const std::string& node, std::optional<std::string> label) const {
  AsGraph copy = *this;
  copy.graph_.SetLabel(node, std::move(label));
  return copy;
}

namespace {

bool IsIdChar(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '/' &&
         c != ':' && c != '<' && c != '>' && c != '"';
}

bool IsBareLabelChar(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '"' &&
         c != ':';
}

class PenmanParser {
 public:
  explicit PenmanParser(std::string_view text) : text_(text) {}

  AsGraph Parse() {
    SkipSpace();
    std::string root = ParseNode();
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing characters");
    SemGraph graph;
    for (const auto& n : nodes_) graph.AddNode(n.id, n.label);
    for (const auto& e : edges_) {
      for (const std::string* end : {&e.from, &e.to}) {
        if (!graph.HasNode(*end)) {
          throw Error(ErrorCode::kSyntax, "reference to undefined node '" + *end + "'");
        }
      }
      graph.AddEdge(e.from, e.to, e.label);
    }
    graph.AddRoot(root);
    std::map<std::string, std::string> seen;
    for (const auto& [node, source] : sources_) {
      if (auto [it, fresh] = seen.emplace(source, node); !fresh) {
        throw Error(ErrorCode::kDuplicateSource,
                    "source " + source + " on nodes " + it->second + " and " + node);
      }
    }
    return AsGraph(std::move(graph), sources_, annotations_);
  }

 private:
  std::string ParseNode() {
    Expect('(');
    SkipSpace();
    std::string id = ParseId();
    if (defined_.contains(id)) Fail("node '" + id + "' defined twice");
    defined_.insert(id);
    Node node{id, std::nullopt};
    SkipSpace();
    if (Peek() == '<') {
      ++pos_;
      SkipSpace();
      std::string source;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
        source += text_[pos_++];
      }
      if (!IsValidSourceName(source)) Fail("invalid source name");
      SkipSpace();
      if (Peek() == '[') {
        size_t start = pos_;
        int depth = 0;
        do {
          if (Peek() == '[') ++depth;
          if (Peek() == ']') --depth;
          if (Peek() == '\0' || Peek() == '>') {
            throw Error(ErrorCode::kMalformedType,
                        "unterminated annotation at offset " + std::to_string(pos_));
          }
          ++pos_;
        } while (depth > 0);
        annotations_[source] = ParseRequestType(text_.substr(start, pos_ - start));
      }
      SkipSpace();
      Expect('>');
      sources_[id] = source;
    }
    SkipSpace();
    if (Peek() == '/') {
      ++pos_;
      SkipSpace();
      node.label = ParseLabel();
    }
    nodes_.push_back(node);
    while (true) {
      SkipSpace();
      if (Peek() == ')') {
        ++pos_;
        break;
      }
      Expect(':');
      auto [role, inverted] = ParseRole();
      SkipSpace();
      std::string target = Peek() == '(' ? ParseNode() : ParseId();
      if (inverted) {
        edges_.push_back(Edge{target, id, role});
      } else {
        edges_.push_back(Edge{id, target, role});
      }
    }
    return id;
  }

  std::pair<std::string, bool> ParseRole() {
    if (Peek() == '"') {
      std::string role = ParseQuoted();
      if (text_.substr(pos_, 3) == "-of") {
        pos_ += 3;
        return {role, true};
      }
      return {role, false};
    }
    std::string role;
    while (pos_ < text_.size() && IsBareLabelChar(text_[pos_])) role += text_[pos_++];
    if (role.empty()) Fail("empty role");
    if (role.size() > 3 && role.ends_with("-of")) return {role.substr(0, role.size() - 3), true};
    return {role, false};
  }

  std::string ParseId() {
    std::string id;
    while (pos_ < text_.size() && IsIdChar(text_[pos_])) id += text_[pos_++];
    if (id.empty()) Fail("expected a node id");
    return id;
  }

  std::string ParseLabel() {
    if (Peek() == '"') return ParseQuoted();
    std::string label;
    while (pos_ < text_.size() && IsBareLabelChar(text_[pos_])) label += text_[pos_++];
    if (label.empty()) Fail("empty label");
    return label;
  }

  std::string ParseQuoted() {
    Expect('"');
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) Fail("unterminated string");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= text_.size()) Fail("dangling escape");
        c = text_[pos_++];
      }
      out += c;
    }
    return out;
  }

  char Peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void Expect(char c) {
    SkipSpace();
    if (Peek() != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void Fail(const std::string& what) const {
    throw Error(ErrorCode::kSyntax, what + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  size_t pos_ = 0;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::set<std::string> defined_;
  std::map<std::string, std::string> sources_;
  std::map<std::string, RequestType> annotations_;
};

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string FormatLabel(const std::string& label) {
  bool bare = !label.empty() && label.front() != '"' &&
              std::all_of(label.begin(), label.end(), IsBareLabelChar);
  return bare ? label : Quote(label);
}

std::string FormatRole(const std::string& label, bool inverted) {
  bool bare = !label.empty() && std::all_of(label.begin(), label.end(), IsBareLabelChar) &&
              !label.ends_with("-of") && label.front() != '"';
  std::string role = bare ? label : Quote(label);
  return inverted ? role + "-of" : role;
}

class PenmanWriter {
 public:
  explicit PenmanWriter(const AsGraph& g) : g_(g) {
    const auto& nodes = g.graph().nodes();
    for (size_t i = 0; i < nodes.size(); ++i) {
      const std::string& id = nodes[i].id;
      bool safe = !id.empty() && std::all_of(id.begin(), id.end(), IsIdChar);
      names_[id] = safe ? id : "n" + std::to_string(i);
    }
    std::set<std::string> used;
    for (auto& [id, name] : names_) {
      while (!used.insert(name).second) name += "_";
    }
  }

  std::string Write() {
    // Spanning tree: forward edges first, inverse edges only to reach
    // what forward edges cannot.
    std::vector<std::string> order;
    Discover(g_.root(), order);
    for (size_t i = 0; order.size() < g_.graph().size() && i < order.size(); ++i) {
      for (const auto& inc : Incidence(order[i])) {
        if (inc.inverted && !discovered_.contains(inc.neighbour)) {
          tree_[inc.edge] = inc.neighbour;
          Discover(inc.neighbour, order);
        }
      }
    }
    std::string out;
    WriteNode(g_.root(), out);
    return out;
  }

 private:
  struct Incident {
    std::string label;
    bool inverted;
    std::string neighbour;
    Edge edge;
  };

  std::vector<Incident> Incidence(const std::string& id) const {
    std::vector<Incident> incident;
    for (const auto& e : g_.graph().OutEdges(id)) incident.push_back({e.label, false, e.to, e});
    for (const auto& e : g_.graph().InEdges(id)) {
      if (e.from != id) incident.push_back({e.label, true, e.from, e});
    }
    std::sort(incident.begin(), incident.end(), [](const Incident& a, const Incident& b) {
      if (a.label != b.label) return a.label < b.label;
      if (a.inverted != b.inverted) return !a.inverted;
      return NaturalLess(a.neighbour, b.neighbour);
    });
    return incident;
  }

  void Discover(const std::string& id, std::vector<std::string>& order) {
    discovered_.insert(id);
    order.push_back(id);
    for (const auto& inc : Incidence(id)) {
      if (!inc.inverted && !discovered_.contains(inc.neighbour)) {
        tree_[inc.edge] = inc.neighbour;
        Discover(inc.neighbour, order);
      }
    }
  }

  void WriteNode(const std::string& id, std::string& out) {
    out += "(" + names_[id];
    if (auto source = g_.SourceAt(id)) {
      out += "<" + *source;
      const RequestType& request = g_.type().At(*source);
      if (!request.empty()) out += request.ToString();
      out += ">";
    }
    if (const auto& label = g_.graph().Label(id)) out += " / " + FormatLabel(*label);
    for (const auto& inc : Incidence(id)) {
      auto child = tree_.find(inc.edge);
      const bool tree = child != tree_.end();
      if (tree && child->second != inc.neighbour) continue;
      if (!tree && inc.inverted) continue;
      out += " :" + FormatRole(inc.label, inc.inverted) + " ";
      if (tree) {
        WriteNode(inc.neighbour, out);
      } else {
        out += names_[inc.neighbour];
      }
    }
    out += ")";
  }

  const AsGraph& g_;
  std::map<std::string, std::string> names_;
  std::set<std::string> discovered_;
  std::map<Edge, std::string> tree_;
};

}  // namespace

AsGraph ParseAsGraph(std::string_view text) { return PenmanParser(text).Parse(); }

std::string SerializeAsGraph(const AsGraph& graph) { return PenmanWriter(graph).Write(); }

bool Isomorphic(const AsGraph& a, const AsGraph& b) {
  if (a.type() != b.type()) return false;
  auto colour_of = [](const AsGraph& as) {
    return [&as](const SemGraph& g, const std::string& id) {
      const auto& label = g.Label(id);
      std::string c = label ? "L:" + *label : "U";
      if (auto s = as.SourceAt(id)) c += "|S:" + *s;
      if (id == as.root()) c += "|root";
      return c;
    };
  };
  return FindIsomorphism(a.graph(), b.graph(), colour_of(a), colour_of(b)).has_value();
}

}  // namespace amtool
