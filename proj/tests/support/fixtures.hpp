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

#ifndef AMTOOL_TESTS_SUPPORT_FIXTURES_HPP_
#define AMTOOL_TESTS_SUPPORT_FIXTURES_HPP_

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "amtool/decomposition.hpp"

namespace amtool::testing {

// Word-aligned graph: node "i" sits on token i and is labeled with its word.
inline DecompositionInput WordGraph(const std::vector<std::string>& words,
                                    const std::vector<std::tuple<int, int, std::string>>& edges,
                                    int root) {
  DecompositionInput in;
  for (const auto& w : words) {
    AmToken t;
    t.form = w;
    t.lemma = w;
    in.tokens.push_back(t);
  }
  std::set<int> used{root};
  for (const auto& [a, b, l] : edges) {
    used.insert(a);
    used.insert(b);
  }
  for (int i : used) {
    in.graph.AddNode(std::to_string(i), words[static_cast<size_t>(i - 1)]);
    in.alignment[std::to_string(i)] = i;
  }
  for (const auto& [a, b, l] : edges) in.graph.AddEdge(std::to_string(a), std::to_string(b), l);
  in.graph.AddRoot(std::to_string(root));
  return in;
}

}  // namespace amtool::testing

#endif  // AMTOOL_TESTS_SUPPORT_FIXTURES_HPP_
