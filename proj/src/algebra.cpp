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

#include "amtool/algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "amtool/error.hpp"

namespace amtool {

std::string Operation::ToString() const {
  switch (kind) {
    case OpKind::kApp:
      return "APP_" + source;
    case OpKind::kMod:
      return "MOD_" + source;
    case OpKind::kIgnore:
      return "IGNORE";
    case OpKind::kRoot:
      return "ROOT";
  }
  return "IGNORE";
}

Operation Operation::Parse(const std::string& text) {
  if (text == "IGNORE") return Ignore();
  if (text == "ROOT") return Root();
  if (text.size() > 4 && (text.starts_with("APP_") || text.starts_with("MOD_"))) {
    std::string source = text.substr(4);
    if (IsValidSourceName(source)) {
      return text.starts_with("APP_") ? App(source) : Mod(source);
    }
  }
  throw Error(ErrorCode::kSyntax, "not an operation: '" + text + "'");
}

namespace {

// Non-throwing type steps; the error code explains a failure.
std::optional<RequestType> TryApplyType(const std::string& source, const RequestType& head,
                                        const RequestType& arg, ErrorCode* why,
                                        std::string* detail) {
  const RequestType* request = head.Find(source);
  if (request == nullptr) {
    *why = ErrorCode::kMissingSource;
    *detail = "head type " + head.ToString() + " has no source " + source;
    return std::nullopt;
  }
  if (!(*request == arg)) {
    *why = ErrorCode::kTypeMismatch;
    *detail = "APP_" + source + " requests " + request->ToString() + " but argument has " +
              arg.ToString();
    return std::nullopt;
  }
  for (const auto& e : head.entries()) {
    if (e.source != source && e.request.Contains(source)) {
      *why = ErrorCode::kTypeMismatch;
      *detail = "source " + source + " is still requested by " + e.source;
      return std::nullopt;
    }
  }
  RequestType result = head;
  result.Erase(source);
  for (const auto& e : request->entries()) {
    if (const RequestType* existing = result.Find(e.source)) {
      if (!(*existing == e.request)) {
        *why = ErrorCode::kTypeMismatch;
        *detail = "request for " + e.source + " disagrees with the head's annotation";
        return std::nullopt;
      }
    } else {
      result.Set(e.source, e.request);
    }
  }
  return result;
}

std::optional<RequestType> TryModifyType(const std::string& source, const RequestType& head,
                                         const RequestType& modifier, ErrorCode* why,
                                         std::string* detail) {
  const RequestType* own = modifier.Find(source);
  if (own == nullptr) {
    *why = ErrorCode::kMissingSource;
    *detail = "modifier type " + modifier.ToString() + " has no source " + source;
    return std::nullopt;
  }
  if (!own->empty()) {
    *why = ErrorCode::kNonEmptyRequest;
    *detail = "modifier source " + source + " carries request " + own->ToString();
    return std::nullopt;
  }
  for (const auto& e : modifier.entries()) {
    if (e.source == source) continue;
    const RequestType* at_head = head.Find(e.source);
    if (at_head == nullptr) {
      *why = ErrorCode::kUnmatchedModifierSource;
      *detail = "modifier source " + e.source + " is absent from head " + head.ToString();
      return std::nullopt;
    }
    if (!(*at_head == e.request)) {
      *why = ErrorCode::kTypeMismatch;
      *detail = "modifier source " + e.source + " annotation differs from the head's";
      return std::nullopt;
    }
  }
  return head;
}

std::optional<RequestType> TryStep(const RequestType& current, const ChildType& child) {
  ErrorCode why;
  std::string detail;
  switch (child.op.kind) {
    case OpKind::kApp:
      return TryApplyType(child.op.source, current, child.type, &why, &detail);
    case OpKind::kMod:
      return TryModifyType(child.op.source, current, child.type, &why, &detail);
    default:
      return std::nullopt;
  }
}

struct Side {
  bool head;
  std::string id;
};

// Disjoint union of `head` and `other`, quotiented by `merges`
// (head id, other id). Merged nodes keep the labeled member's id.
AsGraph Combine(const AsGraph& head, const AsGraph& other,
                const std::vector<std::pair<Side, Side>>& merges,
                const std::vector<std::pair<std::string, Side>>& result_sources,
                const RequestType& result_type) {
  std::vector<std::string> ids;
  std::vector<std::optional<std::string>> labels;
  std::map<std::string, size_t> head_pos;
  std::map<std::string, size_t> other_pos;
  std::set<std::string> taken;
  for (const auto& n : head.graph().nodes()) {
    head_pos[n.id] = ids.size();
    ids.push_back(n.id);
    labels.push_back(n.label);
    taken.insert(n.id);
  }
  for (const auto& n : other.graph().nodes()) {
    std::string id = n.id;
    for (int k = 2; taken.contains(id); ++k) id = n.id + "~" + std::to_string(k);
    taken.insert(id);
    other_pos[n.id] = ids.size();
    ids.push_back(id);
    labels.push_back(n.label);
  }
  auto locate = [&](const Side& s) { return s.head ? head_pos.at(s.id) : other_pos.at(s.id); };

  std::vector<size_t> parent(ids.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : merges) {
    size_t ra = find(locate(a));
    size_t rb = find(locate(b));
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  // Representative per class: first labeled member, else first member.
  std::map<size_t, size_t> chosen;
  std::map<size_t, std::optional<std::string>> class_label;
  for (size_t i = 0; i < ids.size(); ++i) {
    size_t r = find(i);
    auto& label = class_label[r];
    if (labels[i]) {
      if (label && *label != *labels[i]) {
        throw Error(ErrorCode::kLabelConflict,
                    "cannot merge nodes labeled '" + *label + "' and '" + *labels[i] + "'");
      }
      if (!label) {
        label = labels[i];
        chosen[r] = i;
      }
    }
    if (!chosen.contains(r)) chosen[r] = i;
  }
  SemGraph graph;
  std::set<size_t> added;
  for (size_t i = 0; i < ids.size(); ++i) {
    size_t r = find(i);
    if (added.insert(r).second) graph.AddNode(ids[chosen[r]], class_label[r]);
  }
  auto id_of = [&](size_t i) { return ids[chosen[find(i)]]; };
  for (const auto& e : head.graph().edges()) {
    graph.AddEdge(id_of(head_pos.at(e.from)), id_of(head_pos.at(e.to)), e.label);
  }
  for (const auto& e : other.graph().edges()) {
    graph.AddEdge(id_of(other_pos.at(e.from)), id_of(other_pos.at(e.to)), e.label);
  }
  graph.AddRoot(id_of(head_pos.at(head.root())));
  std::map<std::string, std::string> node_sources;
  for (const auto& [name, side] : result_sources) {
    std::string node = id_of(locate(side));
    if (!node_sources.emplace(node, name).second) {
      throw Error(ErrorCode::kInvalidGraph,
                  "sources " + node_sources[node] + " and " + name + " collapse onto one node");
    }
  }
  std::map<std::string, RequestType> annotations;
  for (const auto& e : result_type.entries()) annotations[e.source] = e.request;
  return AsGraph(std::move(graph), std::move(node_sources), std::move(annotations));
}

}  // namespace

RequestType ApplyType(const std::string& source, const RequestType& head, const RequestType& arg) {
  ErrorCode why;
  std::string detail;
  auto result = TryApplyType(source, head, arg, &why, &detail);
  if (!result) throw Error(why, detail);
  return *result;
}

RequestType ModifyType(const std::string& source, const RequestType& head,
                       const RequestType& modifier) {
  ErrorCode why;
  std::string detail;
  auto result = TryModifyType(source, head, modifier, &why, &detail);
  if (!result) throw Error(why, detail);
  return *result;
}

AsGraph Apply(const std::string& source, const AsGraph& head, const AsGraph& arg) {
  RequestType type = ApplyType(source, head.type(), arg.type());
  std::vector<std::pair<Side, Side>> merges;
  merges.push_back({Side{true, *head.NodeOf(source)}, Side{false, arg.root()}});
  std::vector<std::pair<std::string, Side>> result_sources;
  for (const auto& e : head.type().entries()) {
    if (e.source != source) result_sources.push_back({e.source, Side{true, *head.NodeOf(e.source)}});
  }
  for (const auto& e : arg.type().entries()) {
    Side arg_node{false, *arg.NodeOf(e.source)};
    if (e.source != source && head.HasSource(e.source)) {
      merges.push_back({Side{true, *head.NodeOf(e.source)}, arg_node});
    } else {
      result_sources.push_back({e.source, arg_node});
    }
  }
  return Combine(head, arg, merges, result_sources, type);
}

AsGraph Modify(const std::string& source, const AsGraph& head, const AsGraph& modifier) {
  RequestType type = ModifyType(source, head.type(), modifier.type());
  std::vector<std::pair<Side, Side>> merges;
  merges.push_back({Side{true, head.root()}, Side{false, *modifier.NodeOf(source)}});
  for (const auto& e : modifier.type().entries()) {
    if (e.source == source) continue;
    merges.push_back({Side{true, *head.NodeOf(e.source)}, Side{false, *modifier.NodeOf(e.source)}});
  }
  std::vector<std::pair<std::string, Side>> result_sources;
  for (const auto& e : head.type().entries()) {
    result_sources.push_back({e.source, Side{true, *head.NodeOf(e.source)}});
  }
  return Combine(head, modifier, merges, result_sources, type);
}

std::vector<int> AmDepTree::Children(int index) const {
  std::vector<int> children;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].head == index) children.push_back(static_cast<int>(i + 1));
  }
  return children;
}

int AmDepTree::RootChild() const {
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].edge.kind == OpKind::kRoot) return static_cast<int>(i + 1);
  }
  return 0;
}

void AmDepTree::Validate() const {
  const int n = static_cast<int>(tokens.size());
  int roots = 0;
  for (int i = 1; i <= n; ++i) {
    const AmToken& t = at(i);
    auto fail = [&](const std::string& what) {
      throw Error(ErrorCode::kMalformedTree, "token " + std::to_string(i) + ": " + what);
    };
    if (t.head < 0 || t.head > n || t.head == i) fail("head out of range");
    switch (t.edge.kind) {
      case OpKind::kRoot:
        ++roots;
        if (t.head != 0) fail("ROOT edge must come from 0");
        if (!t.supertag) fail("ROOT child has no supertag");
        break;
      case OpKind::kIgnore:
        if (t.supertag) fail("IGNORE child carries a supertag");
        break;
      case OpKind::kApp:
      case OpKind::kMod:
        if (!t.supertag) fail("operation child has no supertag");
        if (t.head == 0 || !at(t.head).supertag) fail("operation under an empty head");
        break;
    }
    // Cycle check: walk up at most n steps.
    int cur = i;
    for (int steps = 0; cur != 0; ++steps) {
      if (steps > n) fail("dependency cycle");
      cur = at(cur).head;
    }
  }
  if (roots != 1) {
    throw Error(ErrorCode::kMalformedTree,
                "expected exactly one ROOT edge, found " + std::to_string(roots));
  }
}

std::optional<AsGraph> AmDepTree::Constant(int index) const {
  const AmToken& t = at(index);
  if (!t.supertag) return std::nullopt;
  for (const auto& n : t.supertag->graph().nodes()) {
    if (n.label && *n.label == kLexMarker) {
      if (!t.lex_label) {
        throw Error(ErrorCode::kMalformedTree,
                    "token " + std::to_string(index) + " has a lexical slot but no label");
      }
      return t.supertag->WithLabel(
          n.id, Relexicalize(*t.lex_label, t.form, t.lemma, t.pos, ModifiedLemmaRules::Default()));
    }
  }
  return t.supertag;
}

std::optional<std::pair<std::vector<size_t>, RequestType>> FindAdmissibleOrder(
    const RequestType& initial, const std::vector<ChildType>& children,
    std::mt19937_64* shuffle) {
  const size_t n = children.size();
  if (n == 0) return std::make_pair(std::vector<size_t>{}, initial);
  if (n > 62) return std::nullopt;
  constexpr size_t kMaxStates = size_t{1} << 20;
  std::unordered_set<uint64_t> failed;
  std::vector<size_t> order;
  RequestType final_type;
  std::function<bool(uint64_t, const RequestType&)> search = [&](uint64_t done,
                                                                 const RequestType& cur) {
    if (order.size() == n) {
      final_type = cur;
      return true;
    }
    if (failed.contains(done) || failed.size() > kMaxStates) return false;
    std::vector<size_t> candidates;
    for (size_t i = 0; i < n; ++i) {
      if ((done >> i & 1) == 0) candidates.push_back(i);
    }
    if (shuffle != nullptr) std::shuffle(candidates.begin(), candidates.end(), *shuffle);
    for (size_t i : candidates) {
      auto next = TryStep(cur, children[i]);
      if (!next) continue;
      order.push_back(i);
      if (search(done | (uint64_t{1} << i), *next)) return true;
      order.pop_back();
    }
    failed.insert(done);
    return false;
  };
  if (!search(0, initial)) return std::nullopt;
  return std::make_pair(order, final_type);
}

namespace {

[[noreturn]] void IllTyped(int token, const std::string& what) {
  throw Error(ErrorCode::kIllTyped, "token " + std::to_string(token) + ": " + what);
}

RequestType SubtreeType(const AmDepTree& tree, int index) {
  auto constant = tree.Constant(index);
  std::vector<ChildType> children;
  for (int c : tree.Children(index)) {
    const AmToken& child = tree.at(c);
    if (child.edge.kind == OpKind::kIgnore) continue;
    children.push_back({child.edge, SubtreeType(tree, c)});
  }
  auto found = FindAdmissibleOrder(constant->type(), children);
  if (!found) {
    std::string ops;
    for (const auto& c : children) ops += " " + c.op.ToString() + c.type.ToString();
    IllTyped(index, "no admissible order for " + constant->type().ToString() + " with" + ops);
  }
  return found->second;
}

}  // namespace

RequestType CheckWellTyped(const AmDepTree& tree) {
  tree.Validate();
  return SubtreeType(tree, tree.RootChild());
}

bool IsWellTyped(const AmDepTree& tree) {
  try {
    return CheckWellTyped(tree).empty();
  } catch (const Error&) {
    return false;
  }
}

namespace {

AsGraph Instantiate(const AsGraph& constant, int token, std::map<std::string, int>& origin) {
  SemGraph g;
  std::map<std::string, std::string> rename;
  for (const auto& n : constant.graph().nodes()) {
    std::string id = "t" + std::to_string(token) + "." + n.id;
    rename[n.id] = id;
    origin[id] = token;
    g.AddNode(id, n.label);
  }
  for (const auto& e : constant.graph().edges()) g.AddEdge(rename[e.from], rename[e.to], e.label);
  g.AddRoot(rename[constant.root()]);
  std::map<std::string, std::string> sources;
  for (const auto& [node, s] : constant.node_sources()) sources[rename[node]] = s;
  std::map<std::string, RequestType> annotations;
  for (const auto& e : constant.type().entries()) annotations[e.source] = e.request;
  return AsGraph(std::move(g), std::move(sources), std::move(annotations));
}

AsGraph EvaluateSubtree(const AmDepTree& tree, int index, const EvaluateOptions& options,
                        std::map<std::string, int>& origin) {
  AsGraph value = Instantiate(*tree.Constant(index), index, origin);
  std::vector<int> child_ids;
  std::vector<AsGraph> values;
  std::vector<ChildType> types;
  for (int c : tree.Children(index)) {
    const AmToken& child = tree.at(c);
    if (child.edge.kind == OpKind::kIgnore) continue;
    values.push_back(EvaluateSubtree(tree, c, options, origin));
    types.push_back({child.edge, values.back().type()});
    child_ids.push_back(c);
  }
  auto found = FindAdmissibleOrder(value.type(), types, options.shuffle);
  if (!found) IllTyped(index, "no admissible order of child operations");
  for (size_t i : found->first) {
    const Operation& op = types[i].op;
    try {
      value = op.kind == OpKind::kApp ? Apply(op.source, value, values[i])
                                      : Modify(op.source, value, values[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "token " + std::to_string(child_ids[i]) + " (" + op.ToString() +
                                " under token " + std::to_string(index) + "): " + e.what());
    }
  }
  return value;
}

}  // namespace

Evaluation Evaluate(const AmDepTree& tree, const EvaluateOptions& options) {
  tree.Validate();
  std::map<std::string, int> origin;
  const int root = tree.RootChild();
  AsGraph value = EvaluateSubtree(tree, root, options, origin);
  if (!value.type().empty()) {
    IllTyped(root, "final type " + value.type().ToString() + " is not empty");
  }
  // Stable, readable ids: the token index, suffixed when a token
  // contributes several nodes.
  std::map<int, int> per_token;
  for (const auto& n : value.graph().nodes()) per_token[origin.at(n.id)]++;
  std::map<int, int> seen;
  std::map<std::string, std::string> rename;
  Evaluation out;
  for (const auto& n : value.graph().nodes()) {
    const int token = origin.at(n.id);
    std::string id = std::to_string(token);
    if (per_token[token] > 1) id += "_" + std::to_string(++seen[token]);
    rename[n.id] = id;
    out.graph.AddNode(id, n.label);
    out.alignment[id] = token;
  }
  for (const auto& e : value.graph().edges()) {
    out.graph.AddEdge(rename[e.from], rename[e.to], e.label);
  }
  out.graph.AddRoot(rename[value.root()]);
  return out;
}

}  // namespace amtool
