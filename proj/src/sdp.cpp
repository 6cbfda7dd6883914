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

#include "amtool/sdp.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "amtool/error.hpp"

namespace amtool {
namespace {

std::vector<std::string> SplitTabs(std::string_view line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) return out;
    start = tab + 1;
  }
}

[[noreturn]] void RowError(size_t line, const std::string& what) {
  throw Error(ErrorCode::kMalformedRow, "sdp line " + std::to_string(line) + ": " + what);
}

bool Flag(const std::string& cell, size_t line) {
  if (cell == "+") return true;
  if (cell == "-") return false;
  RowError(line, "flag must be + or -, found '" + cell + "'");
}

int NodeToken(const Alignment& alignment, const std::string& id) {
  auto it = alignment.find(id);
  if (it == alignment.end()) throw Error(ErrorCode::kUnalignableNode, "node '" + id + "' has no token");
  return it->second;
}

}  // namespace

std::vector<SdpInstance> ReadSdp(std::string_view text) {
  std::vector<SdpInstance> out;
  SdpInstance current;
  std::vector<size_t> row_lines;
  bool open = false;
  size_t line_no = 0;
  auto flush = [&] {
    if (!open) return;
    size_t preds = 0;
    for (const auto& t : current.tokens) preds += t.pred ? 1 : 0;
    for (size_t i = 0; i < current.tokens.size(); ++i) {
      if (current.tokens[i].args.size() != preds) {
        RowError(row_lines[i], "expected " + std::to_string(7 + preds) + " columns, found " +
                                   std::to_string(7 + current.tokens[i].args.size()));
      }
    }
    out.push_back(std::move(current));
    current = SdpInstance{};
    row_lines.clear();
    open = false;
  };
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line_no == 1 && line == kSdpHeader) continue;
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.starts_with("#")) {
      if (open) RowError(line_no, "id line inside a sentence");
      current.id = std::string(line.substr(1));
      open = true;
      continue;
    }
    open = true;
    auto cols = SplitTabs(line);
    if (cols.size() < 7) RowError(line_no, "expected at least 7 columns");
    if (cols[0] != std::to_string(current.tokens.size() + 1)) {
      RowError(line_no, "token ids must be consecutive");
    }
    SdpToken t;
    t.form = cols[1];
    t.lemma = cols[2];
    t.pos = cols[3];
    t.top = Flag(cols[4], line_no);
    t.pred = Flag(cols[5], line_no);
    t.frame = cols[6];
    t.args.assign(cols.begin() + 7, cols.end());
    current.tokens.push_back(std::move(t));
    row_lines.push_back(line_no);
  }
  flush();
  return out;
}

std::string WriteSdp(const std::vector<SdpInstance>& instances) {
  std::string out = std::string(kSdpHeader) + "\n";
  for (const auto& inst : instances) {
    out += "#" + inst.id + "\n";
    for (size_t i = 0; i < inst.tokens.size(); ++i) {
      const SdpToken& t = inst.tokens[i];
      out += std::to_string(i + 1) + "\t" + t.form + "\t" + t.lemma + "\t" + t.pos + "\t" +
             (t.top ? "+" : "-") + "\t" + (t.pred ? "+" : "-") + "\t" + t.frame;
      for (const auto& a : t.args) out += "\t" + a;
      out += "\n";
    }
    out += "\n";
  }
  return out;
}

SemGraph SdpToGraph(const SdpInstance& instance) {
  const auto& tokens = instance.tokens;
  std::vector<size_t> preds;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].pred) preds.push_back(i);
  }
  std::vector<bool> present(tokens.size(), false);
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].top || tokens[i].pred) present[i] = true;
    for (const auto& a : tokens[i].args) {
      if (a != "_") present[i] = true;
    }
  }
  SemGraph g;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (present[i]) g.AddNode(std::to_string(i + 1), tokens[i].form);
  }
  for (size_t i = 0; i < tokens.size(); ++i) {
    for (size_t k = 0; k < tokens[i].args.size(); ++k) {
      if (tokens[i].args[k] != "_") {
        g.AddEdge(std::to_string(preds[k] + 1), std::to_string(i + 1), tokens[i].args[k]);
      }
    }
    if (tokens[i].top) g.AddRoot(std::to_string(i + 1));
  }
  return g;
}

Alignment SdpAlignment(const SemGraph& graph) {
  Alignment a;
  for (const auto& n : graph.nodes()) a[n.id] = std::stoi(n.id);
  return a;
}

SdpInstance GraphToSdp(const SemGraph& graph, const Alignment& alignment, const SdpInstance& base) {
  SdpInstance out;
  out.id = base.id;
  const size_t n = base.tokens.size();
  std::set<int> present;
  std::set<int> has_out;
  std::set<int> tops;
  for (const auto& node : graph.nodes()) present.insert(NodeToken(alignment, node.id));
  for (const auto& r : graph.roots()) tops.insert(NodeToken(alignment, r));
  std::map<std::pair<int, int>, std::string> cells;
  for (const auto& e : graph.edges()) {
    const int from = NodeToken(alignment, e.from);
    const int to = NodeToken(alignment, e.to);
    has_out.insert(from);
    auto [it, fresh] = cells.emplace(std::make_pair(from, to), e.label);
    // One cell per (predicate, argument); keep the smallest label.
    if (!fresh && e.label < it->second) it->second = e.label;
  }
  std::vector<int> preds;
  for (size_t i = 0; i < n; ++i) {
    const int tok = static_cast<int>(i + 1);
    SdpToken t;
    t.form = base.tokens[i].form;
    t.lemma = base.tokens[i].lemma;
    t.pos = base.tokens[i].pos;
    t.frame = base.tokens[i].frame;
    t.top = tops.contains(tok);
    t.pred = has_out.contains(tok) || (base.tokens[i].pred && present.contains(tok));
    if (t.pred) preds.push_back(tok);
    out.tokens.push_back(std::move(t));
  }
  for (size_t i = 0; i < n; ++i) {
    for (int p : preds) {
      auto it = cells.find({p, static_cast<int>(i + 1)});
      out.tokens[i].args.push_back(it == cells.end() ? "_" : it->second);
    }
  }
  return out;
}

std::vector<AmToken> SdpTokens(const SdpInstance& instance) {
  std::vector<AmToken> out;
  for (const auto& t : instance.tokens) {
    AmToken a;
    a.form = t.form;
    a.lemma = t.lemma;
    a.pos = t.pos;
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

std::string DefaultHead(const SemGraph& graph, const std::vector<std::string>& component) {
  std::vector<std::string> sources;
  for (const auto& id : component) {
    if (graph.InEdges(id).empty()) sources.push_back(id);
  }
  if (sources.size() == 1) return sources.front();
  return *std::min_element(component.begin(), component.end(), NaturalLess);
}

}  // namespace

PreprocessedSdp PreprocessSdp(const SemGraph& graph, const std::vector<AmToken>& tokens,
                              const HeadSelector& head) {
  PreprocessedSdp out;
  out.tokens = tokens;
  const int art_token = static_cast<int>(tokens.size()) + 1;
  const std::string art_id = std::to_string(art_token);

  out.record.tops = graph.roots();
  const std::set<std::string> tops(graph.roots().begin(), graph.roots().end());
  std::vector<std::vector<std::string>> multi;
  std::set<std::string> keep;
  auto has_edges = [&](const std::string& id) {
    return !graph.OutEdges(id).empty() || !graph.InEdges(id).empty();
  };
  for (auto& comp : WeaklyConnectedComponents(graph)) {
    if (comp.size() > 1 || has_edges(comp.front())) {
      keep.insert(comp.begin(), comp.end());
      multi.push_back(std::move(comp));
    } else if (tops.contains(comp.front())) {
      keep.insert(comp.front());
    } else {
      out.record.dropped.push_back({comp.front(), graph.Label(comp.front())});
    }
  }
  auto top_in = [&](const std::vector<std::string>& comp) {
    return std::any_of(comp.begin(), comp.end(), [&](const auto& id) { return tops.contains(id); });
  };
  const bool simple = tops.size() == 1 && keep.size() >= 1 &&
                      (multi.empty() ? keep.size() == 1 : multi.size() == 1 && top_in(multi[0]));
  SemGraph& g = out.graph;
  for (const auto& n : graph.nodes()) {
    if (keep.contains(n.id)) g.AddNode(n.id, n.label);
  }
  for (const auto& e : graph.edges()) g.AddEdge(e.from, e.to, e.label);
  if (simple) {
    g.AddRoot(graph.roots().front());
  } else if (!keep.empty() || !tops.empty()) {
    out.record.artificial = true;
    g.AddNode(art_id, std::string(kArtificialLabel));
    g.AddRoot(art_id);
    for (const auto& t : graph.roots()) g.AddEdge(art_id, t, std::string(kArtTopEdge));
    for (const auto& comp : multi) {
      if (top_in(comp)) continue;
      const std::string h = head ? head(graph, comp) : DefaultHead(graph, comp);
      g.AddEdge(art_id, h, std::string(kArtRootEdge));
    }
  } else {
    // Nothing carries meaning: keep one node so that the graph is rooted.
    out.record.artificial = true;
    g.AddNode(art_id, std::string(kArtificialLabel));
    g.AddRoot(art_id);
  }
  if (out.record.artificial) {
    AmToken art;
    art.form = std::string(kArtificialLabel);
    art.lemma = std::string(kArtificialLabel);
    art.pos = "ART";
    out.tokens.push_back(art);
  }
  for (const auto& n : g.nodes()) out.alignment[n.id] = std::stoi(n.id);
  return out;
}

SemGraph InvertPreprocessSdp(const SemGraph& graph, const SdpRecord& record) {
  SemGraph g;
  for (const auto& n : graph.nodes()) {
    if (!record.artificial || n.id != graph.roots().front()) g.AddNode(n.id, n.label);
  }
  for (const auto& n : record.dropped) g.AddNode(n.id, n.label);
  for (const auto& e : graph.edges()) {
    if (g.HasNode(e.from) && g.HasNode(e.to)) g.AddEdge(e.from, e.to, e.label);
  }
  // Keep node order stable: token order, as SdpToGraph produces.
  SemGraph sorted;
  std::vector<Node> nodes = g.nodes();
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return NaturalLess(a.id, b.id); });
  for (const auto& n : nodes) sorted.AddNode(n.id, n.label);
  std::vector<Edge> edges = g.edges();
  for (const auto& e : edges) sorted.AddEdge(e.from, e.to, e.label);
  sorted.SetRoots(record.tops);
  return sorted;
}

SemGraph InvertPreprocessSdp(const SemGraph& graph, const Alignment& alignment, int artificial_token) {
  SemGraph g;
  std::set<std::string> art;
  for (const auto& n : graph.nodes()) {
    auto it = alignment.find(n.id);
    if (it != alignment.end() && it->second == artificial_token) {
      art.insert(n.id);
    } else {
      g.AddNode(n.id, n.label);
    }
  }
  std::vector<std::string> tops;
  for (const auto& e : graph.edges()) {
    if (art.contains(e.from) && !art.contains(e.to)) {
      if (e.label == kArtTopEdge) tops.push_back(e.to);
      continue;
    }
    if (art.contains(e.from) || art.contains(e.to)) continue;
    g.AddEdge(e.from, e.to, e.label);
  }
  if (art.empty()) tops = graph.roots();
  g.SetRoots(tops);
  return g;
}

namespace {

bool IsMember(const std::string& label) { return label.ends_with(".member"); }

// Coordination heads with at least two member edges, and their conjuncts.
std::map<std::string, std::set<std::string>> CoordinationHeads(const SemGraph& graph) {
  std::map<std::string, std::set<std::string>> heads;
  for (const auto& n : graph.nodes()) {
    std::set<std::string> conjuncts;
    for (const auto& e : graph.OutEdges(n.id)) {
      if (IsMember(e.label)) conjuncts.insert(e.to);
    }
    if (conjuncts.size() >= 2) heads[n.id] = std::move(conjuncts);
  }
  return heads;
}

}  // namespace

CoordinationRewrite RewritePsdCoordination(const SemGraph& graph) {
  CoordinationRewrite out;
  out.graph = graph;
  const auto heads = CoordinationHeads(graph);
  std::map<std::string, std::string> owner;
  for (const auto& [c, conjuncts] : heads) {
    for (const auto& x : conjuncts) {
      if (owner.contains(x)) {
        out.ambiguous = true;
        out.detail = "conjunct " + x + " belongs to coordinations " + owner[x] + " and " + c;
        out.graph = graph;
        return out;
      }
      owner[x] = c;
    }
    for (const auto& e : graph.InEdges(c)) {
      if (!IsMember(e.label)) {
        out.ambiguous = true;
        out.detail = "coordination head " + c + " already has an incoming " + e.label + " edge";
        out.graph = graph;
        return out;
      }
    }
  }
  for (const auto& [c, conjuncts] : heads) {
    // (origin, label) -> conjuncts reached.
    std::map<std::pair<std::string, std::string>, std::set<std::string>> reach;
    for (const auto& x : conjuncts) {
      for (const auto& e : graph.InEdges(x)) {
        if (e.from == c || IsMember(e.label) || conjuncts.contains(e.from)) continue;
        reach[{e.from, e.label}].insert(x);
      }
    }
    for (const auto& [key, reached] : reach) {
      if (reached != conjuncts) continue;
      for (const auto& x : conjuncts) out.graph.RemoveEdge({key.first, x, key.second});
      out.graph.AddEdge(key.first, c, key.second);
      ++out.rewritten;
    }
  }
  return out;
}

SemGraph RevertPsdCoordination(const SemGraph& graph) {
  SemGraph g = graph;
  for (const auto& [c, conjuncts] : CoordinationHeads(graph)) {
    for (const auto& e : graph.InEdges(c)) {
      if (IsMember(e.label)) continue;
      g.RemoveEdge(e);
      for (const auto& x : conjuncts) g.AddEdge(e.from, x, e.label);
    }
  }
  return g;
}

}  // namespace amtool
