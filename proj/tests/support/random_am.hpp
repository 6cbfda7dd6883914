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

// Random well-typed AM dependency trees for property tests.
#ifndef AMTOOL_TESTS_SUPPORT_RANDOM_AM_HPP_
#define AMTOOL_TESTS_SUPPORT_RANDOM_AM_HPP_

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "amtool/algebra.hpp"

namespace amtool::testing {

struct RandomTreeOptions {
  int max_depth = 3;
  int max_children = 3;
  int max_ignored = 2;
};

class RandomAmTrees {
 public:
  explicit RandomAmTrees(uint64_t seed, RandomTreeOptions options = {})
      : rng_(seed), options_(options) {}

  std::mt19937_64& rng() { return rng_; }

  AmDepTree Next() {
    protos_.clear();
    Gen(false, false, 0, -1, Operation::Root());
    const int ignored = Uniform(0, options_.max_ignored);
    const int n = static_cast<int>(protos_.size()) + ignored;
    std::vector<int> position(n);
    std::iota(position.begin(), position.end(), 1);
    std::shuffle(position.begin(), position.end(), rng_);
    AmDepTree tree;
    tree.id = "rand" + std::to_string(counter_++);
    tree.tokens.resize(n);
    for (int i = 0; i < n; ++i) {
      AmToken& t = tree.tokens[position[i] - 1];
      t.form = "w" + std::to_string(position[i]);
      if (i < static_cast<int>(protos_.size())) {
        t.supertag = protos_[i].constant;
        t.edge = protos_[i].op;
        t.head = protos_[i].parent < 0 ? 0 : position[protos_[i].parent];
      }
    }
    return tree;
  }

 private:
  struct Proto {
    AsGraph constant;
    int parent;
    Operation op;
  };

  int Uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool Coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  // Builds a subtree whose final type is {S if want_s} + {M if want_m}.
  void Gen(bool want_s, bool want_m, int depth, int parent, Operation op) {
    const int self = static_cast<int>(protos_.size());
    protos_.push_back({AsGraph::Constant("x"), parent, op});
    const int n_children = depth < options_.max_depth ? Uniform(0, options_.max_children) : 0;
    const bool own_s = want_s || (n_children > 0 && Coin(0.5));
    const bool consume_s = own_s && !want_s;

    SemGraph g;
    std::map<std::string, std::string> sources;
    std::map<std::string, RequestType> annotations;
    const std::string label = "c" + std::to_string(Uniform(0, 4));
    g.AddNode("r", label);
    g.AddRoot("r");
    if (Coin(0.2)) {
      g.AddNode("x", "inner");
      Coin(0.5) ? g.AddEdge("r", "x", "in") : g.AddEdge("x", "r", "in");
    }
    auto add_slot = [&](const std::string& source, RequestType annotation) {
      std::string id = "s" + source;
      g.AddNode(id);
      const std::string edge = "e" + std::to_string(Uniform(0, 2));
      Coin(0.7) ? g.AddEdge("r", id, edge) : g.AddEdge(id, "r", edge);
      sources[id] = source;
      annotations[source] = std::move(annotation);
    };
    if (own_s) add_slot("S", {});
    if (want_m) add_slot("M", {});

    static const std::vector<std::string> kPool = {"O", "O2", "O3", "OO", "op1", "op2"};
    std::vector<std::string> pool = kPool;
    std::shuffle(pool.begin(), pool.end(), rng_);
    RequestType s_only;
    s_only.Set("S", {});
    std::vector<std::pair<Operation, std::pair<bool, bool>>> plan;
    if (consume_s) plan.push_back({Operation::App("S"), {false, false}});
    for (int k = 0; k < n_children && !pool.empty(); ++k) {
      if (Coin(0.6)) {
        const bool control = own_s && Coin(0.4);
        const std::string source = pool.back();
        pool.pop_back();
        add_slot(source, control ? s_only : RequestType{});
        plan.push_back({Operation::App(source), {control, false}});
      } else {
        plan.push_back({Operation::Mod("M"), {own_s && Coin(0.4), true}});
      }
    }
    protos_[self].constant = AsGraph(std::move(g), std::move(sources), std::move(annotations));
    for (const auto& [child_op, want] : plan) {
      Gen(want.first, want.second, depth + 1, self, child_op);
    }
  }

  std::mt19937_64 rng_;
  RandomTreeOptions options_;
  std::vector<Proto> protos_;
  int counter_ = 0;
};

}  // namespace amtool::testing

#endif  // AMTOOL_TESTS_SUPPORT_RANDOM_AM_HPP_
