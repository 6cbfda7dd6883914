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

#include "amtool/decoding.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "amtool/error.hpp"

namespace amtool {
namespace {

using Matrix = std::vector<std::vector<double>>;

// Chu-Liu-Edmonds by recursive cycle contraction. Node 0 is the root.
std::vector<int> Cle(const Matrix& w) {
  const int m = static_cast<int>(w.size());
  std::vector<int> head(static_cast<size_t>(m), -1);
  for (int v = 1; v < m; ++v) {
    int best = -1;
    for (int u = 0; u < m; ++u) {
      if (u == v) continue;
      if (best < 0 || w[static_cast<size_t>(u)][static_cast<size_t>(v)] > w[static_cast<size_t>(best)][static_cast<size_t>(v)]) best = u;
    }
    head[static_cast<size_t>(v)] = best;
  }
  // Find a cycle.
  std::vector<int> color(static_cast<size_t>(m), 0);
  std::vector<int> cycle;
  for (int s = 1; s < m && cycle.empty(); ++s) {
    std::vector<int> path;
    int v = s;
    while (v != 0 && color[static_cast<size_t>(v)] == 0) {
      color[static_cast<size_t>(v)] = s;
      path.push_back(v);
      v = head[static_cast<size_t>(v)];
    }
    if (v != 0 && color[static_cast<size_t>(v)] == s) {
      for (int x = v;;) {
        cycle.push_back(x);
        x = head[static_cast<size_t>(x)];
        if (x == v) break;
      }
    }
    for (int x : path) {
      if (color[static_cast<size_t>(x)] == s) color[static_cast<size_t>(x)] = -1;
    }
  }
  if (cycle.empty()) return head;

  std::vector<bool> in_cycle(static_cast<size_t>(m), false);
  for (int v : cycle) in_cycle[static_cast<size_t>(v)] = true;
  std::vector<int> orig;  // new index -> old index
  std::vector<int> index(static_cast<size_t>(m), -1);
  for (int v = 0; v < m; ++v) {
    if (!in_cycle[static_cast<size_t>(v)]) {
      index[static_cast<size_t>(v)] = static_cast<int>(orig.size());
      orig.push_back(v);
    }
  }
  const int c = static_cast<int>(orig.size());
  const size_t mm = static_cast<size_t>(c + 1);
  Matrix w2(mm, std::vector<double>(mm, 0.0));
  std::vector<int> enter(static_cast<size_t>(m), -1);  // outside u -> cycle node entered
  std::vector<int> leave(static_cast<size_t>(m), -1);  // outside v -> cycle node leaving
  for (int u = 0; u < m; ++u) {
    if (in_cycle[static_cast<size_t>(u)]) continue;
    const size_t iu = static_cast<size_t>(index[static_cast<size_t>(u)]);
    for (int v = 0; v < m; ++v) {
      if (in_cycle[static_cast<size_t>(v)] || u == v) continue;
      w2[iu][static_cast<size_t>(index[static_cast<size_t>(v)])] = w[static_cast<size_t>(u)][static_cast<size_t>(v)];
    }
    double best = 0;
    for (int v : cycle) {
      const double s = w[static_cast<size_t>(u)][static_cast<size_t>(v)] -
                       w[static_cast<size_t>(head[static_cast<size_t>(v)])][static_cast<size_t>(v)];
      if (enter[static_cast<size_t>(u)] < 0 || s > best) {
        best = s;
        enter[static_cast<size_t>(u)] = v;
      }
    }
    w2[iu][static_cast<size_t>(c)] = best;
  }
  for (int v = 1; v < m; ++v) {
    if (in_cycle[static_cast<size_t>(v)]) continue;
    double best = 0;
    for (int u : cycle) {
      const double s = w[static_cast<size_t>(u)][static_cast<size_t>(v)];
      if (leave[static_cast<size_t>(v)] < 0 || s > best || (s == best && u < leave[static_cast<size_t>(v)])) {
        best = s;
        leave[static_cast<size_t>(v)] = u;
      }
    }
    w2[static_cast<size_t>(c)][static_cast<size_t>(index[static_cast<size_t>(v)])] = best;
  }
  std::vector<int> sub = Cle(w2);
  std::vector<int> result = head;
  for (int v = 1; v < m; ++v) {
    if (in_cycle[static_cast<size_t>(v)]) continue;
    const int h = sub[static_cast<size_t>(index[static_cast<size_t>(v)])];
    result[static_cast<size_t>(v)] = h == c ? leave[static_cast<size_t>(v)] : orig[static_cast<size_t>(h)];
  }
  const int u = orig[static_cast<size_t>(sub[static_cast<size_t>(c)])];
  result[static_cast<size_t>(enter[static_cast<size_t>(u)])] = u;
  return result;
}

}  // namespace

std::vector<int> MaxArborescence(const ArcScores& scores) {
  const int n = scores.n();
  Matrix w(static_cast<size_t>(n + 1), std::vector<double>(static_cast<size_t>(n + 1), 0.0));
  for (int h = 0; h <= n; ++h) {
    for (int d = 1; d <= n; ++d) {
      if (h != d) w[static_cast<size_t>(h)][static_cast<size_t>(d)] = scores.at(h, d);
    }
  }
  std::vector<int> heads = Cle(w);
  heads[0] = 0;
  return heads;
}

double TreeScore(const ArcScores& scores, const std::vector<int>& heads) {
  double s = 0;
  for (int d = 1; d <= scores.n(); ++d) s += scores.at(heads[static_cast<size_t>(d)], d);
  return s;
}

namespace {

// Every (source, request) pair that occurs in `type`, at any depth. A name
// can occur with several requests, e.g. S in [S[S]], and be applied once
// per request as the type unfolds.
void CollectRequests(const RequestType& type, std::set<std::pair<std::string, RequestType>>& out) {
  for (const auto& e : type.entries()) {
    out.emplace(e.source, e.request);
    CollectRequests(e.request, out);
  }
}

struct ChildChoice {
  Operation op;
  RequestType type;  // key into the child's table; unused for IGNORE
};

struct Entry {
  double score = 0;
  size_t candidate = 0;
  std::vector<ChildChoice> children;
};

// (applied APP pairs, MOD pairs), both sorted.
using Pairs = std::vector<std::pair<std::string, RequestType>>;
using StateKey = std::pair<Pairs, Pairs>;

void InsertSorted(Pairs& v, const std::pair<std::string, RequestType>& p) {
  auto pos = std::lower_bound(v.begin(), v.end(), p);
  if (pos == v.end() || *pos != p) v.insert(pos, p);
}

class FixedTreeDecoder {
 public:
  FixedTreeDecoder(const Sentence& sentence, const std::vector<int>& heads, const SupertagCandidates& candidates,
                   const LabelScorer& labels, const DecodeOptions& options)
      : sentence_(sentence), heads_(heads), candidates_(candidates), labels_(labels), options_(options),
        n_(static_cast<int>(sentence.size())) {}

  std::optional<Decoded> Run() {
    CheckTime();
    if (static_cast<int>(heads_.size()) != n_ + 1 || static_cast<int>(candidates_.size()) != n_) {
      throw Error(ErrorCode::kMalformedTree, "tree, candidates and sentence differ in length");
    }
    children_.assign(static_cast<size_t>(n_ + 1), {});
    for (int d = 1; d <= n_; ++d) children_[static_cast<size_t>(heads_[static_cast<size_t>(d)])].push_back(d);
    best_.assign(static_cast<size_t>(n_ + 1), {});
    bot_.assign(static_cast<size_t>(n_ + 1), std::nullopt);
    bot_candidate_.assign(static_cast<size_t>(n_ + 1), 0);
    // Children before parents.
    std::vector<int> order;
    std::vector<int> stack{0};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      order.push_back(u);
      for (int c : children_[static_cast<size_t>(u)]) stack.push_back(c);
    }
    if (static_cast<int>(order.size()) != n_ + 1) throw Error(ErrorCode::kMalformedTree, "heads do not form a tree");
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (*it != 0) Solve(*it);
    }
    // Exactly one child of 0 carries the graph; the rest are empty.
    const auto& top = children_[0];
    std::optional<double> best;
    int root = 0;
    for (int r : top) {
      auto it = best_[static_cast<size_t>(r)].find(RequestType{});
      if (it == best_[static_cast<size_t>(r)].end()) continue;
      double s = it->second.score + Label(0, r).Score(Operation::Root());
      bool ok = true;
      for (int w : top) {
        if (w == r) continue;
        if (!bot_[static_cast<size_t>(w)]) {
          ok = false;
          break;
        }
        s += *bot_[static_cast<size_t>(w)] + Label(0, w).Score(Operation::Ignore());
      }
      if (ok && (!best || s > *best)) {
        best = s;
        root = r;
      }
    }
    if (!best) return std::nullopt;
    Decoded out;
    out.score = *best;
    out.tree.id = sentence_.id;
    out.tree.text = sentence_.text;
    out.tree.tokens = sentence_.tokens;
    for (auto& t : out.tree.tokens) {
      t.supertag.reset();
      t.lex_label.reset();
    }
    for (int w : top) {
      if (w == root) {
        Build(out.tree, w, RequestType{});
        out.tree.at(w).edge = Operation::Root();
      } else {
        BuildEmpty(out.tree, w);
      }
      out.tree.at(w).head = 0;
    }
    return out;
  }

 private:
  void CheckTime() const {
    if (options_.deadline && std::chrono::steady_clock::now() >= *options_.deadline) {
      throw Error(ErrorCode::kTimeout, "fixed-tree decoding ran out of time");
    }
  }

  const LabelScores& Label(int head, int dep) {
    auto key = std::make_pair(head, dep);
    auto it = label_cache_.find(key);
    if (it == label_cache_.end()) it = label_cache_.emplace(key, labels_(head, dep)).first;
    return it->second;
  }

  // Candidate indices used for token u: first k non-empty plus first empty.
  std::vector<size_t> Allowed(int u, std::optional<size_t>& empty) const {
    std::vector<size_t> out;
    const auto& list = candidates_[static_cast<size_t>(u - 1)];
    for (size_t i = 0; i < list.size(); ++i) {
      if (!list[i].graph) {
        if (!empty) empty = i;
      } else if (out.size() < options_.k) {
        out.push_back(i);
      }
    }
    return out;
  }

  void Solve(int u) {
    const auto& kids = children_[static_cast<size_t>(u)];
    const auto& list = candidates_[static_cast<size_t>(u - 1)];
    std::optional<size_t> empty;
    std::vector<size_t> allowed = Allowed(u, empty);
    if (empty) {
      double s = list[*empty].score;
      bool ok = true;
      for (int w : kids) {
        if (!bot_[static_cast<size_t>(w)]) {
          ok = false;
          break;
        }
        s += *bot_[static_cast<size_t>(w)] + Label(u, w).Score(Operation::Ignore());
      }
      if (ok) {
        bot_[static_cast<size_t>(u)] = s;
        bot_candidate_[static_cast<size_t>(u)] = *empty;
      }
    }
    auto& table = best_[static_cast<size_t>(u)];
    for (size_t ci : allowed) {
      CheckTime();
      const AsGraph& g = *list[ci].graph;
      const RequestType& initial = g.type();
      std::set<std::pair<std::string, RequestType>> requests;
      CollectRequests(initial, requests);
      std::map<StateKey, Entry> states;
      states[StateKey{}] = Entry{list[ci].score, ci, {}};
      for (int w : kids) {
        CheckTime();
        const LabelScores& ls = Label(u, w);
        std::map<StateKey, Entry> next;
        auto offer = [&](const StateKey& key, const Entry& base, double add, ChildChoice choice) {
          const double s = base.score + add;
          auto it = next.find(key);
          if (it != next.end() && !(s > it->second.score)) return;
          Entry e{s, ci, base.children};
          e.children.push_back(std::move(choice));
          next[key] = std::move(e);
        };
        for (const auto& [key, entry] : states) {
          if (bot_[static_cast<size_t>(w)]) {
            offer(key, entry, *bot_[static_cast<size_t>(w)] + ls.Score(Operation::Ignore()),
                  {Operation::Ignore(), {}});
          }
          for (const auto& [tau, child] : best_[static_cast<size_t>(w)]) {
            for (const auto& pair : requests) {
              if (!(pair.second == tau)) continue;
              if (std::binary_search(key.first.begin(), key.first.end(), pair)) continue;
              StateKey k2 = key;
              InsertSorted(k2.first, pair);
              offer(k2, entry, child.score + ls.Score(Operation::App(pair.first)), {Operation::App(pair.first), tau});
            }
            for (const auto& e : tau.entries()) {
              if (!e.request.empty()) continue;
              StateKey k2 = key;
              InsertSorted(k2.second, {e.source, tau});
              offer(k2, entry, child.score + ls.Score(Operation::Mod(e.source)), {Operation::Mod(e.source), tau});
            }
          }
        }
        if (options_.beam > 0 && next.size() > options_.beam) {
          std::vector<std::pair<double, StateKey>> ranked;
          for (const auto& [key, e] : next) ranked.emplace_back(e.score, key);
          std::stable_sort(ranked.begin(), ranked.end(),
                           [](const auto& a, const auto& b) { return a.first > b.first; });
          std::map<StateKey, Entry> kept;
          for (size_t i = 0; i < options_.beam; ++i) kept[ranked[i].second] = std::move(next[ranked[i].second]);
          next = std::move(kept);
        }
        states = std::move(next);
      }
      for (const auto& [key, entry] : states) {
        std::vector<ChildType> types;
        for (const auto& [src, req] : key.first) types.push_back({Operation::App(src), req});
        for (const auto& [src, tau] : key.second) types.push_back({Operation::Mod(src), tau});
        auto found = FindAdmissibleOrder(initial, types);
        if (!found) continue;
        auto it = table.find(found->second);
        if (it == table.end() || entry.score > it->second.score) table[found->second] = entry;
      }
    }
  }

  void BuildEmpty(AmDepTree& tree, int u) {
    AmToken& t = tree.at(u);
    t.supertag.reset();
    t.lex_label.reset();
    t.edge = Operation::Ignore();
    t.head = heads_[static_cast<size_t>(u)];
    for (int w : children_[static_cast<size_t>(u)]) BuildEmpty(tree, w);
  }

  void Build(AmDepTree& tree, int u, const RequestType& type) {
    const Entry& e = best_[static_cast<size_t>(u)].at(type);
    const SupertagCandidate& c = candidates_[static_cast<size_t>(u - 1)][e.candidate];
    AmToken& t = tree.at(u);
    t.supertag = c.graph;
    t.lex_label = c.lex;
    t.head = heads_[static_cast<size_t>(u)];
    const auto& kids = children_[static_cast<size_t>(u)];
    for (size_t i = 0; i < kids.size(); ++i) {
      const ChildChoice& ch = e.children[i];
      if (ch.op.kind == OpKind::kIgnore) {
        BuildEmpty(tree, kids[i]);
      } else {
        Build(tree, kids[i], ch.type);
        tree.at(kids[i]).edge = ch.op;
      }
    }
  }

  const Sentence& sentence_;
  const std::vector<int>& heads_;
  const SupertagCandidates& candidates_;
  const LabelScorer& labels_;
  const DecodeOptions& options_;
  const int n_;
  std::vector<std::vector<int>> children_;
  std::vector<std::map<RequestType, Entry>> best_;
  std::vector<std::optional<double>> bot_;
  std::vector<size_t> bot_candidate_;
  std::map<std::pair<int, int>, LabelScores> label_cache_;
};

}  // namespace

std::optional<Decoded> FixedTreeDecode(const Sentence& sentence, const std::vector<int>& heads,
                                       const SupertagCandidates& candidates, const LabelScorer& labels,
                                       const DecodeOptions& options) {
  return FixedTreeDecoder(sentence, heads, candidates, labels, options).Run();
}

double AssignmentScore(const AmDepTree& tree, const std::vector<int>& candidate_index,
                       const SupertagCandidates& candidates, const LabelScorer& labels) {
  double s = 0;
  for (int i = 1; i <= static_cast<int>(tree.size()); ++i) {
    s += candidates[static_cast<size_t>(i - 1)][static_cast<size_t>(candidate_index[static_cast<size_t>(i)])].score;
    s += labels(tree.at(i).head, i).Score(tree.at(i).edge);
  }
  return s;
}

ParseResult Parse(const Sentence& sentence, const ScoreModel& model, const ParseConfig& config) {
  ParseResult out;
  const int n = static_cast<int>(sentence.size());
  if (n == 0) {
    out.log.push_back("empty sentence");
    return out;
  }
  std::vector<int> heads;
  try {
    heads = MaxArborescence(model.Arcs(sentence));
  } catch (const Error& e) {
    out.log.push_back(sentence.id + ": " + e.what());
  }
  auto labels = [&](int h, int d) { return model.Labels(sentence, h, d); };
  for (size_t k = heads.empty() ? 0 : config.k; k > 0; --k) {
    DecodeOptions options;
    options.k = k;
    options.beam = config.beam;
    options.deadline = std::chrono::steady_clock::now() +
                       std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                           std::chrono::duration<double>(std::max(0.0, config.time_budget_secs)));
    try {
      const SupertagCandidates candidates = model.Supertags(sentence, k);
      auto decoded = FixedTreeDecode(sentence, heads, candidates, labels, options);
      if (!decoded) {
        out.log.push_back(sentence.id + ": no well-typed tree with k=" + std::to_string(k));
        continue;
      }
      out.evaluation = Evaluate(decoded->tree);
      out.tree = std::move(decoded->tree);
      out.k_used = k;
      return out;
    } catch (const Error& e) {
      out.log.push_back(sentence.id + ": k=" + std::to_string(k) + ": " + e.what());
    }
  }
  out.log.push_back(sentence.id + ": falling back to a one-node graph");
  out.evaluation.graph.AddNode("1", sentence.tokens.front().form);
  out.evaluation.graph.AddRoot("1");
  out.evaluation.alignment["1"] = 1;
  out.k_used = 0;
  return out;
}

}  // namespace amtool
