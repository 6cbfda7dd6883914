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

// AM-CoNLL: one token per line, tab-separated columns
// ID FORM LEMMA POS NE SUPERTAG LEXLABEL HEAD EDGE.
#ifndef AMTOOL_AMCONLL_HPP_
#define AMTOOL_AMCONLL_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "amtool/algebra.hpp"

namespace amtool {

std::vector<AmDepTree> ReadAmConll(std::string_view text);
std::string WriteAmConll(const std::vector<AmDepTree>& trees);
std::string WriteAmConll(const AmDepTree& tree);

}  // namespace amtool

#endif  // AMTOOL_AMCONLL_HPP_
