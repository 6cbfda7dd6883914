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

#ifndef AMTOOL_MINICORPUS_HPP_
#define AMTOOL_MINICORPUS_HPP_

#include <cstdint>

#include "amtool/pipeline.hpp"

namespace amtool {

// Synthetic sentences annotated in the style of `bank`. Equal seeds give
// the same sentences in every bank. Constructions: determiners, adjectives,
// compounds, names, transitive and ditransitive verbs, passives, subject and
// object control, raising, copula, comparatives, NP and VP coordination,
// adverbs, prepositional modifiers and disconnected clauses.
Corpus MiniCorpus(Bank bank, size_t count, uint64_t seed);

}  // namespace amtool

#endif  // AMTOOL_MINICORPUS_HPP_
