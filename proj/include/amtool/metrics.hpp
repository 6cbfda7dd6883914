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

#ifndef AMTOOL_METRICS_HPP_
#define AMTOOL_METRICS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "amtool/decomposition.hpp"
#include "amtool/eds.hpp"
#include "amtool/graph.hpp"
#include "amtool/sdp.hpp"

namespace amtool {

struct PRF {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  int64_t matched = 0;
  int64_t gold = 0;
  int64_t pred = 0;

  static PRF FromCounts(int64_t matched, int64_t gold, int64_t pred);
  PRF& operator+=(const PRF& other);  // micro-average
  // "NAME precision recall f1 matched gold pred", four decimals.
  std::string Format(const std::string& name) const;
};

struct SmatchOptions {
  int restarts = 5;
  uint64_t seed = 0;
};

// Triples: one instance triple per node, one relation triple per edge and
// one TOP triple per root. `gold` defines recall.
PRF Smatch(const SemGraph& pred, const SemGraph& gold, const SmatchOptions& options = {});
// Exhaustive search over node mappings. Throws kTooLarge when the smaller
// graph has more than 8 nodes or the search space is out of reach.
PRF SmatchExact(const SemGraph& pred, const SemGraph& gold);
// Matched triples of one mapping (pred node -> gold node; absent = unmapped).
int64_t SmatchMatched(const SemGraph& pred, const SemGraph& gold,
                      const std::map<std::string, std::string>& mapping);

struct EdmScore {
  PRF nodes;
  PRF edges;
  PRF all;
};

EdmScore Edm(const EdsInstance& gold, const EdsInstance& pred);
EdmScore Edm(const std::vector<EdsInstance>& gold, const std::vector<EdsInstance>& pred);

struct SdpScoreOptions {
  bool include_frames = false;
};

// Labeled F over (head, dependent, label) and top tuples. Throws kIdMismatch.
PRF SdpLabeledF(const std::vector<SdpInstance>& gold, const std::vector<SdpInstance>& pred,
                const SdpScoreOptions& options = {});

struct DecomposabilityReport {
  size_t total = 0;
  size_t decomposable = 0;
  std::map<NonDecomposableReason, size_t> reasons;

  void Add(const DecompositionResult& result);
  double NonDecomposablePercent() const;
  std::string Format() const;
};

DecomposabilityReport DecomposabilityStats(const std::vector<DecompositionInput>& corpus,
                                           const HeuristicTable& table,
                                           const DecomposeOptions& options = {});

}  // namespace amtool

#endif  // AMTOOL_METRICS_HPP_
