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

#include "amtool/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <tuple>
#include <unordered_set>

#include "amtool/error.hpp"

namespace amtool {

PRF PRF::FromCounts(int64_t matched, int64_t gold, int64_t pred) {
  PRF p;
  p.matched = matched;
  p.gold = gold;
  p.pred = pred;
  p.precision = pred == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(pred);
  p.recall = gold == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(gold);
  p.f1 = p.precision + p.recall == 0 ? 0.0 : 2 * p.precision * p.recall / (p.precision + p.recall);
  return p;
}

PRF& PRF::operator+=(const PRF& other) {
  *this = FromCounts(matched + other.matched, gold + other.gold, pred + other.pred);
  return *this;
}

std::string PRF::Format(const std::string& name) const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s %.4f %.4f %.4f %lld %lld %lld", name.c_str(), precision, recall, f1,
                static_cast<long long>(matched), static_cast<long long>(gold), static_cast<long long>(pred));
  return buf;
}

namespace {

// Index-based view of a graph for fast triple counting.
using Interner = std::map<std::string, int>;

int Intern(Interner& names, const std::string& s) {
  return names.emplace(s, static_cast<int>(names.size())).first->second;
}

uint64_t EdgeKey(int a, int b, int label) {
  return (static_cast<uint64_t>(a) << 42) | (static_cast<uint64_t>(b) << 21) | static_cast<uint64_t>(label);
}

// Index-based view of a graph for fast triple counting. Labels are interned
// in a table shared by both graphs of a comparison.
struct Indexed {
  std::vector<std::string> ids;
  std::vector<int> labels;
  std::vector<bool> top;
  std::vector<std::tuple<int, int, int>> edges;
  std::unordered_set<uint64_t> edge_set;
  std::vector<std::vector<size_t>> incident;

  Indexed(const SemGraph& g, Interner& names) {
    std::map<std::string, int> index;
    for (const auto& n : g.nodes()) {
      index[n.id] = static_cast<int>(ids.size());
      ids.push_back(n.id);
      labels.push_back(Intern(names, n.label.value_or("")));
      top.push_back(false);
    }
    for (const auto& r : g.roots()) top[static_cast<size_t>(index.at(r))] = true;
    incident.resize(ids.size());
    for (const auto& e : g.edges()) {
      const int a = index.at(e.from);
      const int b = index.at(e.to);
      incident[static_cast<size_t>(a)].push_back(edges.size());
      if (b != a) incident[static_cast<size_t>(b)].push_back(edges.size());
      edges.emplace_back(a, b, Intern(names, e.label));
      edge_set.insert(EdgeKey(a, b, std::get<2>(edges.back())));
    }
  }
  size_t size() const { return ids.size(); }
  int64_t Triples() const {
    return static_cast<int64_t>(ids.size() + edges.size()) +
           std::count(top.begin(), top.end(), true);
  }
};

// map[i] = gold index or -1.
int64_t Score(const Indexed& p, const Indexed& g, const std::vector<int>& map) {
  int64_t s = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    const int j = map[i];
    if (j < 0) continue;
    if (p.labels[i] == g.labels[static_cast<size_t>(j)]) ++s;
    if (p.top[i] && g.top[static_cast<size_t>(j)]) ++s;
  }
  for (const auto& [a, b, l] : p.edges) {
    const int ma = map[static_cast<size_t>(a)];
    const int mb = map[static_cast<size_t>(b)];
    if (ma >= 0 && mb >= 0 && g.edge_set.contains(EdgeKey(ma, mb, l))) ++s;
  }
  return s;
}

int64_t NodeScore(const Indexed& p, const Indexed& g, const std::vector<int>& map, size_t i,
                  size_t skip_neighbour) {
  int64_t s = 0;
  const int j = map[i];
  if (j >= 0) {
    if (p.labels[i] == g.labels[static_cast<size_t>(j)]) ++s;
    if (p.top[i] && g.top[static_cast<size_t>(j)]) ++s;
  }
  for (size_t e : p.incident[i]) {
    const auto& [a, b, l] = p.edges[e];
    if (static_cast<size_t>(a) == skip_neighbour || static_cast<size_t>(b) == skip_neighbour) continue;
    const int ma = map[static_cast<size_t>(a)];
    const int mb = map[static_cast<size_t>(b)];
    if (ma >= 0 && mb >= 0 && g.edge_set.contains(EdgeKey(ma, mb, l))) ++s;
  }
  return s;
}

// Triples touching node a or node b, each counted once.
int64_t LocalScore(const Indexed& p, const Indexed& g, const std::vector<int>& map, size_t a, size_t b) {
  const size_t none = std::numeric_limits<size_t>::max();
  if (a == b) return NodeScore(p, g, map, a, none);
  return NodeScore(p, g, map, a, none) + NodeScore(p, g, map, b, a);
}

PRF Finish(const Indexed& p, const Indexed& g, int64_t matched) {
  return PRF::FromCounts(matched, g.Triples(), p.Triples());
}

}  // namespace

int64_t SmatchMatched(const SemGraph& pred, const SemGraph& gold,
                      const std::map<std::string, std::string>& mapping) {
  Interner names;
  Indexed p(pred, names);
  Indexed g(gold, names);
  std::map<std::string, int> gi;
  for (size_t j = 0; j < g.size(); ++j) gi[g.ids[j]] = static_cast<int>(j);
  std::vector<int> map(p.size(), -1);
  for (size_t i = 0; i < p.size(); ++i) {
    auto it = mapping.find(p.ids[i]);
    if (it != mapping.end()) map[i] = gi.at(it->second);
  }
  return Score(p, g, map);
}

PRF Smatch(const SemGraph& pred, const SemGraph& gold, const SmatchOptions& options) {
  Interner names;
  Indexed p(pred, names);
  Indexed g(gold, names);
  const size_t n = p.size();
  const size_t m = g.size();
  std::mt19937_64 rng(options.seed);
  int64_t best = 0;
  const int rounds = std::max(1, options.restarts);
  const int64_t bound = std::min(p.Triples(), g.Triples());
  for (int round = 0; round < rounds && best < bound; ++round) {
    std::vector<int> map(n, -1);
    std::vector<int> owner(m, -1);
    // Label-matching start; later rounds break ties randomly and map the
    // remaining nodes at random.
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> targets(m);
    std::iota(targets.begin(), targets.end(), 0);
    if (round > 1) {
      std::shuffle(order.begin(), order.end(), rng);
      std::shuffle(targets.begin(), targets.end(), rng);
    }
    if (round == 1) {
      // Roots onto roots first: trading an instance for the top triple is a
      // plateau step the climber cannot take.
      for (size_t i = 0; i < n; ++i) {
        if (!p.top[i]) continue;
        for (size_t j = 0; j < m; ++j) {
          if (g.top[j] && owner[j] < 0) {
            map[i] = static_cast<int>(j);
            owner[j] = static_cast<int>(i);
            break;
          }
        }
      }
    }
    for (size_t i : order) {
      if (map[i] >= 0) continue;
      for (int j : targets) {
        if (owner[static_cast<size_t>(j)] < 0 && p.labels[i] == g.labels[static_cast<size_t>(j)]) {
          map[i] = j;
          owner[static_cast<size_t>(j)] = static_cast<int>(i);
          break;
        }
      }
    }
    if (round > 0) {
      for (size_t i : order) {
        if (map[i] >= 0) continue;
        for (int j : targets) {
          if (owner[static_cast<size_t>(j)] < 0) {
            map[i] = j;
            owner[static_cast<size_t>(j)] = static_cast<int>(i);
            break;
          }
        }
      }
    }
    int64_t current = Score(p, g, map);
    int64_t round_best = current;
    // Sideways moves let the climber cross plateaus (e.g. giving up an
    // instance triple for the TOP triple); visited mappings are not revisited.
    size_t sideways = 2 * (n + m);
    std::set<std::vector<int>> visited{map};
    while (true) {
      int64_t gain = std::numeric_limits<int64_t>::min();
      std::vector<int> next;
      std::vector<int> scratch = map;
      // Candidates change at most two nodes; their delta is local.
      auto consider = [&](size_t a, int ta, size_t b, int tb) {
        std::vector<int>& cand = scratch;
        const int64_t before = LocalScore(p, g, cand, a, b);
        const int oa = cand[a];
        const int ob = cand[b];
        cand[a] = ta;
        cand[b] = tb;
        const int64_t s = LocalScore(p, g, cand, a, b) - before;
        if (s > gain && (s > 0 || !visited.contains(cand))) {
          gain = s;
          next = cand;
        }
        cand[b] = ob;
        cand[a] = oa;
      };
      // Move one node to a free target (or unmap it).
      for (size_t i = 0; i < n; ++i) {
        for (int j = -1; j < static_cast<int>(m); ++j) {
          if (j == map[i] || (j >= 0 && owner[static_cast<size_t>(j)] >= 0)) continue;
          consider(i, j, i, j);
        }
      }
      // Swap targets of two nodes.
      for (size_t a = 0; a < n; ++a) {
        for (size_t b = a + 1; b < n; ++b) {
          if (map[a] == map[b]) continue;
          consider(a, map[b], b, map[a]);
        }
      }
      // Take a target from its owner, which moves to a free target or
      // becomes unmapped.
      for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < m; ++j) {
          const int k = owner[j];
          if (k < 0 || k == static_cast<int>(i)) continue;
          for (int t = -1; t < static_cast<int>(m); ++t) {
            if (t >= 0 && owner[static_cast<size_t>(t)] >= 0 && t != map[i]) continue;
            if (t == static_cast<int>(j) || t == map[i]) continue;
            consider(i, static_cast<int>(j), static_cast<size_t>(k), t);
          }
        }
      }
      if (next.empty() || gain < 0 || current == bound) break;
      if (gain == 0) {
        if (sideways == 0) break;
        --sideways;
      }
      map = std::move(next);
      visited.insert(map);
      current += gain;
      round_best = std::max(round_best, current);
      std::fill(owner.begin(), owner.end(), -1);
      for (size_t i = 0; i < n; ++i) {
        if (map[i] >= 0) owner[static_cast<size_t>(map[i])] = static_cast<int>(i);
      }
    }
    current = round_best;
    best = std::max(best, current);
  }
  return Finish(p, g, best);
}

PRF SmatchExact(const SemGraph& pred, const SemGraph& gold) {
  Interner names;
  Indexed p(pred, names);
  Indexed g(gold, names);
  // Every triple count is non-negative, so some optimal mapping is total on
  // the smaller side; enumerate injections from it.
  const bool flip = p.size() > g.size();
  const Indexed& small = flip ? g : p;
  const Indexed& large = flip ? p : g;
  const size_t n = small.size();
  const size_t m = large.size();
  if (n > 8) throw Error(ErrorCode::kTooLarge, "smatch_exact needs the smaller graph to have at most 8 nodes");
  double space = 1;
  for (size_t k = 0; k < n; ++k) space *= static_cast<double>(m - k);
  if (space > 5e8) throw Error(ErrorCode::kTooLarge, "smatch_exact search space too large");
  std::vector<int> map(n, -1);
  std::vector<bool> used(m, false);
  int64_t best = 0;
  auto score = [&] {
    if (!flip) return Score(small, large, map);
    std::vector<int> inverse(large.size(), -1);
    for (size_t i = 0; i < n; ++i) inverse[static_cast<size_t>(map[i])] = static_cast<int>(i);
    return Score(large, small, inverse);
  };
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == n) {
      best = std::max(best, score());
      return;
    }
    for (size_t j = 0; j < m; ++j) {
      if (used[j]) continue;
      used[j] = true;
      map[i] = static_cast<int>(j);
      self(self, i + 1);
      used[j] = false;
    }
    map[i] = -1;
  };
  rec(rec, 0);
  return Finish(p, g, best);
}

namespace {

template <typename T>
int64_t MultisetOverlap(std::vector<T> a, std::vector<T> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<T> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return static_cast<int64_t>(common.size());
}

using NodeTuple = std::tuple<int, int, std::string>;
using EdgeTuple = std::tuple<int, int, std::string, int, int>;

void EdmTuples(const EdsInstance& e, std::vector<NodeTuple>& nodes, std::vector<EdgeTuple>& edges) {
  std::map<std::string, const EdsNode*> by_id;
  for (const auto& n : e.nodes) {
    by_id[n.id] = &n;
    nodes.emplace_back(n.begin, n.end, n.label);
  }
  for (const auto& x : e.edges) {
    const EdsNode* a = by_id.at(x.from);
    const EdsNode* b = by_id.at(x.to);
    edges.emplace_back(a->begin, a->end, x.role, b->begin, b->end);
  }
}

}  // namespace

EdmScore Edm(const EdsInstance& gold, const EdsInstance& pred) {
  std::vector<NodeTuple> gn;
  std::vector<NodeTuple> pn;
  std::vector<EdgeTuple> ge;
  std::vector<EdgeTuple> pe;
  EdmTuples(gold, gn, ge);
  EdmTuples(pred, pn, pe);
  EdmScore s;
  s.nodes = PRF::FromCounts(MultisetOverlap(gn, pn), static_cast<int64_t>(gn.size()),
                            static_cast<int64_t>(pn.size()));
  s.edges = PRF::FromCounts(MultisetOverlap(ge, pe), static_cast<int64_t>(ge.size()),
                            static_cast<int64_t>(pe.size()));
  s.all = s.nodes;
  s.all += s.edges;
  return s;
}

EdmScore Edm(const std::vector<EdsInstance>& gold, const std::vector<EdsInstance>& pred) {
  if (gold.size() != pred.size()) throw Error(ErrorCode::kIdMismatch, "corpora differ in length");
  EdmScore total;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].id != pred[i].id) {
      throw Error(ErrorCode::kIdMismatch, "gold '" + gold[i].id + "' vs predicted '" + pred[i].id + "'");
    }
    EdmScore s = Edm(gold[i], pred[i]);
    total.nodes += s.nodes;
    total.edges += s.edges;
    total.all += s.all;
  }
  return total;
}

namespace {

std::vector<std::tuple<int, int, std::string>> SdpTuples(const SdpInstance& inst, bool frames) {
  std::vector<std::tuple<int, int, std::string>> out;
  std::vector<int> preds;
  for (size_t i = 0; i < inst.tokens.size(); ++i) {
    if (inst.tokens[i].pred) preds.push_back(static_cast<int>(i + 1));
  }
  for (size_t i = 0; i < inst.tokens.size(); ++i) {
    const SdpToken& t = inst.tokens[i];
    const int dep = static_cast<int>(i + 1);
    if (t.top) out.emplace_back(0, dep, "TOP");
    for (size_t k = 0; k < t.args.size() && k < preds.size(); ++k) {
      if (t.args[k] != "_") out.emplace_back(preds[k], dep, t.args[k]);
    }
    if (frames && t.pred) out.emplace_back(dep, dep, "FRAME:" + t.frame);
  }
  return out;
}

}  // namespace

PRF SdpLabeledF(const std::vector<SdpInstance>& gold, const std::vector<SdpInstance>& pred,
                const SdpScoreOptions& options) {
  if (gold.size() != pred.size()) throw Error(ErrorCode::kIdMismatch, "corpora differ in length");
  PRF total;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].id != pred[i].id) {
      throw Error(ErrorCode::kIdMismatch, "gold '" + gold[i].id + "' vs predicted '" + pred[i].id + "'");
    }
    auto g = SdpTuples(gold[i], options.include_frames);
    auto p = SdpTuples(pred[i], options.include_frames);
    total += PRF::FromCounts(MultisetOverlap(g, p), static_cast<int64_t>(g.size()),
                             static_cast<int64_t>(p.size()));
  }
  return total;
}

void DecomposabilityReport::Add(const DecompositionResult& result) {
  ++total;
  if (result.ok()) {
    ++decomposable;
  } else {
    ++reasons[result.reason];
  }
}

double DecomposabilityReport::NonDecomposablePercent() const {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(total - decomposable) / static_cast<double>(total);
}

std::string DecomposabilityReport::Format() const {
  char buf[128];
  std::string out;
  std::snprintf(buf, sizeof buf, "instances %zu\ndecomposable %zu\nnon-decomposable %zu %.2f%%\n", total,
                decomposable, total - decomposable, NonDecomposablePercent());
  out += buf;
  for (NonDecomposableReason r :
       {NonDecomposableReason::kMultipleRootsNeeded, NonDecomposableReason::kUnmatchedReentrancy,
        NonDecomposableReason::kNotATree, NonDecomposableReason::kIllTyped,
        NonDecomposableReason::kRoundTripMismatch}) {
    auto it = reasons.find(r);
    out += "reason " + std::string(ReasonName(r)) + " " + std::to_string(it == reasons.end() ? 0 : it->second) + "\n";
  }
  return out;
}

DecomposabilityReport DecomposabilityStats(const std::vector<DecompositionInput>& corpus,
                                           const HeuristicTable& table, const DecomposeOptions& options) {
  DecomposabilityReport report;
  for (const auto& in : corpus) report.Add(Decompose(in, table, options));
  return report;
}

}  // namespace amtool
