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

#include "amtool/amconll.hpp"

#include <charconv>

#include "amtool/error.hpp"

namespace amtool {
namespace {

constexpr std::string_view kSentId = "# sent_id = ";
constexpr std::string_view kText = "# text = ";

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) return out;
    start = tab + 1;
  }
}

[[noreturn]] void RowError(size_t line, const std::string& what) {
  throw Error(ErrorCode::kMalformedRow, "line " + std::to_string(line) + ": " + what);
}

int ParseInt(std::string_view s, size_t line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) RowError(line, "bad integer '" + std::string(s) + "'");
  return value;
}

}  // namespace

std::vector<AmDepTree> ReadAmConll(std::string_view text) {
  std::vector<AmDepTree> trees;
  AmDepTree current;
  bool open = false;
  size_t line_no = 0;
  auto flush = [&] {
    if (open) {
      current.Validate();
      trees.push_back(std::move(current));
    }
    current = AmDepTree{};
    open = false;
  };
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) {
      flush();
      continue;
    }
    open = true;
    if (line.starts_with(kSentId)) {
      current.id = std::string(line.substr(kSentId.size()));
      continue;
    }
    if (line.starts_with(kText)) {
      current.text = std::string(line.substr(kText.size()));
      continue;
    }
    if (line.starts_with("#")) continue;
    auto cols = SplitTabs(line);
    if (cols.size() != 9) RowError(line_no, "expected 9 columns, found " + std::to_string(cols.size()));
    const int id = ParseInt(cols[0], line_no);
    if (id != static_cast<int>(current.tokens.size()) + 1) RowError(line_no, "token ids must be consecutive");
    AmToken t;
    t.form = std::string(cols[1]);
    t.lemma = std::string(cols[2]);
    t.pos = std::string(cols[3]);
    t.ne = std::string(cols[4]);
    try {
      if (cols[5] != "_") t.supertag = ParseAsGraph(cols[5]);
      if (cols[6] != "_") t.lex_label = LexPattern{std::string(cols[6])};
      t.edge = Operation::Parse(std::string(cols[8]));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
    }
    t.head = ParseInt(cols[7], line_no);
    current.tokens.push_back(std::move(t));
  }
  flush();
  return trees;
}

std::string WriteAmConll(const AmDepTree& tree) {
  std::string out;
  if (!tree.id.empty()) out += std::string(kSentId) + tree.id + "\n";
  if (!tree.text.empty()) out += std::string(kText) + tree.text + "\n";
  for (size_t i = 0; i < tree.tokens.size(); ++i) {
    const AmToken& t = tree.tokens[i];
    out += std::to_string(i + 1) + "\t" + t.form + "\t" + t.lemma + "\t" + t.pos + "\t" + t.ne +
           "\t" + (t.supertag ? SerializeAsGraph(*t.supertag) : "_") + "\t" +
           (t.lex_label ? t.lex_label->text : "_") + "\t" + std::to_string(t.head) + "\t" +
           t.edge.ToString() + "\n";
  }
  return out + "\n";
}

std::string WriteAmConll(const std::vector<AmDepTree>& trees) {
  std::string out;
  for (const auto& t : trees) out += WriteAmConll(t);
  return out;
}

}  // namespace amtool
