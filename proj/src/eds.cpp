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

#include "amtool/eds.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <regex>
#include <set>

#include "amtool/error.hpp"

namespace amtool {
namespace {

[[noreturn]] void LineError(size_t line, const std::string& what) {
  throw Error(ErrorCode::kMalformedRow, "eds line " + std::to_string(line) + ": " + what);
}

std::string Unescape(const std::string& s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) ++i;
    out += s[i];
  }
  return out;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::vector<std::string> Fields(std::string_view line) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

const EdsNode* EdsInstance::Find(const std::string& node_id) const {
  for (const auto& n : nodes) {
    if (n.id == node_id) return &n;
  }
  return nullptr;
}

void EdsInstance::Validate() const {
  std::set<std::string> ids;
  const int len = static_cast<int>(text.size());
  for (const auto& n : nodes) {
    if (!ids.insert(n.id).second) {
      throw Error(ErrorCode::kInvalidGraph, "duplicate eds node '" + n.id + "'");
    }
    if (n.begin < 0 || n.end < n.begin || n.end > len) {
      throw Error(ErrorCode::kInvalidGraph, "span of '" + n.id + "' is outside the text");
    }
  }
  if (!ids.contains(top)) throw Error(ErrorCode::kInvalidGraph, "top '" + top + "' is not a node");
  for (const auto& e : edges) {
    if (!ids.contains(e.from) || !ids.contains(e.to)) {
      throw Error(ErrorCode::kInvalidGraph, "edge " + e.from + " " + e.role + " " + e.to +
                                                " has a missing endpoint");
    }
  }
}

std::vector<EdsInstance> ReadEds(std::string_view text) {
  static const std::regex kNode(R"re(^([^:\s]+):(\S+?)<(\d+):(\d+)>(?:\("((?:[^"\\]|\\.)*)"\))?$)re");
  std::vector<EdsInstance> out;
  EdsInstance current;
  bool open = false;
  size_t line_no = 0;
  size_t start_line = 0;
  auto flush = [&] {
    if (!open) return;
    try {
      current.Validate();
    } catch (const Error& e) {
      LineError(start_line, e.what());
    }
    out.push_back(std::move(current));
    current = EdsInstance{};
    open = false;
  };
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (!open) start_line = line_no;
    open = true;
    if (line.starts_with("#id ")) {
      current.id = line.substr(4);
      continue;
    }
    if (line.starts_with("#text ")) {
      current.text = line.substr(6);
      continue;
    }
    if (line.starts_with("#")) continue;
    std::smatch m;
    if (std::regex_match(line, m, kNode)) {
      EdsNode n;
      n.id = m[1];
      n.label = m[2];
      n.begin = std::stoi(m[3]);
      n.end = std::stoi(m[4]);
      if (m[5].matched) n.carg = Unescape(m[5]);
      current.nodes.push_back(std::move(n));
      continue;
    }
    auto f = Fields(line);
    if (f.size() == 2 && f[0] == "top") {
      current.top = f[1];
    } else if (f.size() == 3) {
      current.edges.push_back({f[0], f[1], f[2]});
    } else {
      LineError(line_no, "cannot parse '" + line + "'");
    }
  }
  flush();
  return out;
}

std::string WriteEds(const std::vector<EdsInstance>& instances) {
  std::string out;
  for (const auto& inst : instances) {
    out += "#id " + inst.id + "\n";
    out += "#text " + inst.text + "\n";
    out += "top " + inst.top + "\n";
    for (const auto& n : inst.nodes) {
      out += n.id + ":" + n.label + "<" + std::to_string(n.begin) + ":" + std::to_string(n.end) + ">";
      if (n.carg) out += "(\"" + Escape(*n.carg) + "\")";
      out += "\n";
    }
    for (const auto& e : inst.edges) out += e.from + " " + e.role + " " + e.to + "\n";
    out += "\n";
  }
  return out;
}

std::vector<EdsToken> TokenizeEds(std::string_view text) {
  static const std::string kLeading = "(\"'[{";
  static const std::string kTrailing = ".,;:!?)\"']}";
  std::vector<EdsToken> out;
  auto emit = [&](size_t b, size_t e) {
    if (e > b) out.push_back({std::string(text.substr(b, e - b)), static_cast<int>(b), static_cast<int>(e)});
  };
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    size_t b = i;
    size_t e = j;
    std::vector<std::pair<size_t, size_t>> trailing;
    while (b < e && kLeading.find(text[b]) != std::string::npos && e - b > 1) {
      emit(b, b + 1);
      ++b;
    }
    while (e > b + 1 && kTrailing.find(text[e - 1]) != std::string::npos) {
      trailing.emplace_back(e - 1, e);
      --e;
    }
    size_t part = b;
    for (size_t k = b; k < e; ++k) {
      if (text[k] == '-' && k > b && k + 1 < e) {
        emit(part, k);
        part = k + 1;
      }
    }
    emit(part, e);
    for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) emit(it->first, it->second);
    i = j;
  }
  return out;
}

std::vector<int> OverlappingTokens(const std::vector<EdsToken>& tokens, int begin, int end) {
  std::vector<int> out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].begin < end && begin < tokens[i].end) out.push_back(static_cast<int>(i + 1));
  }
  return out;
}

bool IsPunctuation(const EdsToken& token) {
  return !token.form.empty() && std::all_of(token.form.begin(), token.form.end(), [](unsigned char c) {
    return std::ispunct(c) != 0;
  });
}

std::vector<int> SpanTokens(const std::vector<EdsToken>& tokens, int begin, int end) {
  auto all = OverlappingTokens(tokens, begin, end);
  std::vector<int> words;
  for (int t : all) {
    if (!IsPunctuation(tokens[static_cast<size_t>(t - 1)])) words.push_back(t);
  }
  return words.empty() ? all : words;
}

std::pair<int, int> AtomicSpan(const std::vector<EdsToken>& tokens, int token) {
  size_t lo = static_cast<size_t>(token - 1);
  size_t hi = lo;
  while (lo > 0 && IsPunctuation(tokens[lo - 1]) && tokens[lo - 1].end == tokens[lo].begin &&
         !IsPunctuation(tokens[lo])) {
    --lo;
  }
  while (hi + 1 < tokens.size() && IsPunctuation(tokens[hi + 1]) &&
         tokens[hi + 1].begin == tokens[hi].end && !IsPunctuation(tokens[static_cast<size_t>(token - 1)])) {
    ++hi;
  }
  return {tokens[lo].begin, tokens[hi].end};
}

Alignment AssignEdsSpans(const EdsInstance& eds, const std::vector<EdsToken>& tokens) {
  Alignment alignment;
  std::map<std::string, std::vector<int>> span_tokens;
  std::vector<const EdsNode*> complex;
  for (const auto& n : eds.nodes) {
    auto over = SpanTokens(tokens, n.begin, n.end);
    if (over.empty()) {
      throw Error(ErrorCode::kUnalignableNode, "span <" + std::to_string(n.begin) + ":" +
                                                   std::to_string(n.end) + "> of '" + n.id +
                                                   "' covers no token");
    }
    if (over.size() == 1) {
      alignment[n.id] = over.front();
    } else {
      complex.push_back(&n);
    }
    span_tokens[n.id] = std::move(over);
  }
  std::stable_sort(complex.begin(), complex.end(), [](const EdsNode* a, const EdsNode* b) {
    if (a->begin != b->begin) return a->begin < b->begin;
    return a->end - a->begin < b->end - b->begin;
  });
  std::map<std::string, std::vector<std::string>> neighbours;
  for (const auto& e : eds.edges) {
    neighbours[e.from].push_back(e.to);
    neighbours[e.to].push_back(e.from);
  }
  for (const EdsNode* n : complex) {
    const auto& span = span_tokens[n->id];
    int best = 0;
    for (const auto& m : neighbours[n->id]) {
      auto it = alignment.find(m);
      if (it == alignment.end()) continue;
      if (std::find(span.begin(), span.end(), it->second) == span.end()) continue;
      if (best == 0 || it->second < best) best = it->second;
    }
    alignment[n->id] = best != 0 ? best : span.front();
  }
  return alignment;
}

int DeleteHandleEdges(SemGraph& graph) {
  const size_t components = WeaklyConnectedComponents(graph).size();
  int removed = 0;
  const std::vector<Edge> edges = graph.edges();
  for (const auto& e : edges) {
    if (e.label != "R-HNDL" && e.label != "L-HNDL") continue;
    graph.RemoveEdge(e);
    if (WeaklyConnectedComponents(graph).size() > components) {
      graph.AddEdge(e.from, e.to, e.label);
    } else {
      ++removed;
    }
  }
  return removed;
}

std::vector<AmToken> EdsAmTokens(const std::vector<EdsToken>& tokens) {
  std::vector<AmToken> out;
  for (const auto& t : tokens) {
    AmToken a;
    a.form = t.form;
    a.lemma = t.form;
    std::transform(a.lemma.begin(), a.lemma.end(), a.lemma.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    out.push_back(std::move(a));
  }
  return out;
}

PreparedEds PrepareEds(const EdsInstance& eds, const EdsOptions& options) {
  PreparedEds out;
  out.tokens = TokenizeEds(eds.text);
  const Alignment base = AssignEdsSpans(eds, out.tokens);
  DecompositionInput& in = out.input;
  in.id = eds.id;
  in.text = eds.text;
  in.tokens = EdsAmTokens(out.tokens);
  for (const auto& n : eds.nodes) {
    const bool complex = SpanTokens(out.tokens, n.begin, n.end).size() > 1;
    in.graph.AddNode(n.id, complex ? n.label + std::string(kComplexSuffix) : n.label);
    in.alignment[n.id] = base.at(n.id);
  }
  for (const auto& n : eds.nodes) {
    if (!n.carg) continue;
    const std::string id = n.id + ".carg";
    in.graph.AddNode(id, *n.carg);
    in.graph.AddEdge(n.id, id, std::string(kCargEdge));
    in.alignment[id] = base.at(n.id);
  }
  for (const auto& e : eds.edges) in.graph.AddEdge(e.from, e.to, e.role);
  in.graph.AddRoot(eds.top);
  if (options.delete_hndl) out.deleted_hndl = DeleteHandleEdges(in.graph);
  return out;
}

EdsInstance RestoreSpans(const SemGraph& graph, const Alignment& alignment,
                         const std::vector<EdsToken>& tokens, const RestoreOptions& options) {
  std::set<std::string> carg_nodes;
  std::map<std::string, std::string> cargs;
  for (const auto& e : graph.edges()) {
    if (e.label == kCargEdge && graph.OutEdges(e.to).empty()) {
      carg_nodes.insert(e.to);
      cargs[e.from] = graph.Label(e.to).value_or("");
    }
  }
  auto token_span = [&](const std::string& id) -> std::pair<int, int> {
    auto it = alignment.find(id);
    if (it == alignment.end() || it->second < 1 || it->second > static_cast<int>(tokens.size())) {
      throw Error(ErrorCode::kUnalignableNode, "node '" + id + "' has no token");
    }
    return AtomicSpan(tokens, it->second);
  };
  std::map<std::string, std::pair<int, int>> spans;
  std::set<std::string> visiting;
  std::function<std::pair<int, int>(const std::string&)> span_of = [&](const std::string& id) {
    if (auto it = spans.find(id); it != spans.end()) return it->second;
    const std::string label = graph.Label(id).value_or("");
    std::pair<int, int> span;
    if (!label.ends_with(kComplexSuffix) || visiting.contains(id)) {
      span = token_span(id);
    } else {
      visiting.insert(id);
      bool any = false;
      for (const auto& e : graph.OutEdges(id)) {
        if (carg_nodes.contains(e.to) || e.to == id) continue;
        auto c = span_of(e.to);
        span = any ? std::make_pair(std::min(span.first, c.first), std::max(span.second, c.second)) : c;
        any = true;
      }
      visiting.erase(id);
      if (!any) {
        if (!options.token_fallback) {
          throw Error(ErrorCode::kChildlessComplexNode, "complex node '" + id + "' has no children");
        }
        span = token_span(id);
      }
    }
    spans[id] = span;
    return span;
  };
  EdsInstance out;
  if (!graph.roots().empty()) out.top = graph.roots().front();
  for (const auto& n : graph.nodes()) {
    if (carg_nodes.contains(n.id)) continue;
    EdsNode node;
    node.id = n.id;
    node.label = n.label.value_or("");
    if (node.label.ends_with(kComplexSuffix)) node.label.resize(node.label.size() - kComplexSuffix.size());
    std::tie(node.begin, node.end) = span_of(n.id);
    if (auto it = cargs.find(n.id); it != cargs.end()) node.carg = it->second;
    out.nodes.push_back(std::move(node));
  }
  for (const auto& e : graph.edges()) {
    if (carg_nodes.contains(e.to) && e.label == kCargEdge) continue;
    out.edges.push_back({e.from, e.label, e.to});
  }
  return out;
}

SemGraph EdsToGraph(const EdsInstance& eds) {
  SemGraph g;
  for (const auto& n : eds.nodes) g.AddNode(n.id, n.label);
  for (const auto& n : eds.nodes) {
    if (!n.carg) continue;
    g.AddNode(n.id + ".carg", *n.carg);
    g.AddEdge(n.id, n.id + ".carg", std::string(kCargEdge));
  }
  for (const auto& e : eds.edges) g.AddEdge(e.from, e.to, e.role);
  if (g.HasNode(eds.top)) g.AddRoot(eds.top);
  return g;
}

}  // namespace amtool
