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

#include "amtool/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "amtool/asgraph.hpp"
#include "amtool/error.hpp"

namespace amtool {

Sentence SentenceOf(const AmDepTree& tree) {
  Sentence s;
  s.id = tree.id;
  s.text = tree.text;
  s.tokens = tree.tokens;
  for (auto& t : s.tokens) {
    t.supertag.reset();
    t.lex_label.reset();
    t.head = 0;
    t.edge = Operation::Ignore();
  }
  return s;
}

// ---- oracle -------------------------------------------------------------

OracleModel::OracleModel(const std::vector<AmDepTree>& gold) {
  for (const auto& t : gold) gold_.emplace(t.id, t);
}

const AmDepTree& OracleModel::Gold(const Sentence& sentence) const {
  auto it = gold_.find(sentence.id);
  if (it == gold_.end()) throw Error(ErrorCode::kUnknownSentence, "no gold tree for sentence '" + sentence.id + "'");
  if (it->second.size() != sentence.size()) {
    throw Error(ErrorCode::kUnknownSentence, "gold tree for '" + sentence.id + "' has a different token count");
  }
  return it->second;
}

SupertagCandidates OracleModel::Supertags(const Sentence& sentence, size_t k) const {
  const AmDepTree& gold = Gold(sentence);
  SupertagCandidates out;
  for (const auto& t : gold.tokens) {
    std::vector<SupertagCandidate> list;
    if (t.supertag) {
      if (k > 0) list.push_back({t.supertag, t.lex_label, 0});
      list.push_back({std::nullopt, std::nullopt, kWrong});
    } else {
      list.push_back({std::nullopt, std::nullopt, 0});
    }
    out.push_back(std::move(list));
  }
  return out;
}

ArcScores OracleModel::Arcs(const Sentence& sentence) const {
  const AmDepTree& gold = Gold(sentence);
  const int n = static_cast<int>(gold.size());
  ArcScores w(n, kWrong);
  for (int d = 1; d <= n; ++d) w.set(gold.at(d).head, d, 0);
  return w;
}

LabelScores OracleModel::Labels(const Sentence& sentence, int head, int dep) const {
  const AmDepTree& gold = Gold(sentence);
  LabelScores ls;
  ls.fallback = kWrong;
  if (dep >= 1 && dep <= static_cast<int>(gold.size()) && gold.at(dep).head == head) {
    ls.scores[gold.at(dep).edge] = 0;
  }
  return ls;
}

// ---- counts -------------------------------------------------------------

std::string DistanceBucket(int head, int dep) {
  if (head == 0) return "root";
  const int diff = dep - head;
  const int a = std::abs(diff);
  std::string b = a <= 3 ? std::to_string(a) : a <= 6 ? "4-6" : "7+";
  return (diff > 0 ? "+" : "-") + b;
}

namespace {

constexpr const char* kMagic = "amtool-count-model";

std::string Join(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty() || &p != parts.begin()) out += '\t';
    out += p;
  }
  return out;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\') out += "\\\\";
    else if (c == '\t') out += "\\t";
    else if (c == '\n') out += "\\n";
    else out += c;
  }
  return out;
}

std::string Unescape(const std::string& s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    if (++i == s.size()) throw Error(ErrorCode::kSyntax, "model file: dangling escape");
    out += s[i] == 't' ? '\t' : s[i] == 'n' ? '\n' : s[i];
  }
  return out;
}

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    size_t p = line.find('\t', start);
    out.push_back(line.substr(start, p == std::string::npos ? std::string::npos : p - start));
    if (p == std::string::npos) return out;
    start = p + 1;
  }
}

}  // namespace

size_t CountModel::TagIndex(const std::string& key, const Tag& tag) {
  auto [it, fresh] = tag_index_.emplace(key, tags_.size());
  if (fresh) {
    tags_.push_back(tag);
    tag_keys_.push_back(key);
  }
  return it->second;
}

size_t CountModel::OpIndex(const std::string& op) {
  auto [it, fresh] = op_index_.emplace(op, ops_.size());
  if (fresh) ops_.push_back(op);
  return it->second;
}

namespace {

std::string TagKey(const std::optional<AsGraph>& graph, const std::optional<LexPattern>& lex) {
  std::string key = graph ? "1" + SerializeAsGraph(*graph) : "0";
  key += '\t';
  key += lex ? "1" + lex->text : "0";
  return key;
}

}  // namespace

CountModel CountModel::Train(const std::vector<AmDepTree>& corpus, double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("smoothing constant must be positive");
  CountModel m;
  m.alpha_ = alpha;
  m.TagIndex(TagKey(std::nullopt, std::nullopt), Tag{});
  size_t tokens = 0;
  for (const auto& tree : corpus) {
    const int n = static_cast<int>(tree.size());
    tokens += tree.size();
    auto pos = [&](int i) { return i == 0 ? std::string(kRootPos) : tree.at(i).pos; };
    for (int i = 1; i <= n; ++i) {
      const AmToken& t = tree.at(i);
      const size_t tag = m.TagIndex(TagKey(t.supertag, t.lex_label), Tag{t.supertag, t.lex_label});
      ++m.tag_lemma_[Join({t.lemma, t.pos})][tag];
      ++m.tag_pos_[t.pos][tag];
      ++m.tag_all_[tag];
      const std::string bucket = DistanceBucket(t.head, i);
      const size_t op = m.OpIndex(t.edge.ToString());
      ++m.op_full_[Join({pos(t.head), t.pos, bucket})][op];
      ++m.op_bucket_[bucket][op];
      ++m.op_all_[op];
      for (int h = 0; h <= n; ++h) {
        if (h == i) continue;
        const size_t yes = t.head == h ? 1 : 0;
        const std::string b = DistanceBucket(h, i);
        ++m.arc_full_[Join({pos(h), t.pos, b})][yes];
        ++m.arc_bucket_[b][yes];
        ++m.arc_all_[yes];
      }
    }
  }
  if (tokens == 0) throw Error(ErrorCode::kEmptyCorpus, "cannot train on an empty corpus");
  return m;
}

std::vector<double> CountModel::Smoothed(const Counts& counts, size_t vocabulary, double alpha) {
  long long total = 0;
  for (const auto& [i, c] : counts) total += c;
  const double denom = static_cast<double>(total) + alpha * static_cast<double>(vocabulary);
  std::vector<double> out(vocabulary, std::log(alpha / denom));
  for (const auto& [i, c] : counts) {
    if (i < vocabulary) out[i] = std::log((static_cast<double>(c) + alpha) / denom);
  }
  return out;
}

const CountModel::Counts* CountModel::TagCounts(const std::string& lemma, const std::string& pos) const {
  if (auto it = tag_lemma_.find(Join({lemma, pos})); it != tag_lemma_.end()) return &it->second;
  if (auto it = tag_pos_.find(pos); it != tag_pos_.end()) return &it->second;
  return &tag_all_;
}

const CountModel::Counts* CountModel::OpCounts(const std::string& head_pos, const std::string& dep_pos,
                                               const std::string& bucket) const {
  if (auto it = op_full_.find(Join({head_pos, dep_pos, bucket})); it != op_full_.end()) return &it->second;
  if (auto it = op_bucket_.find(bucket); it != op_bucket_.end()) return &it->second;
  return &op_all_;
}

const CountModel::Counts* CountModel::ArcCounts(const std::string& head_pos, const std::string& dep_pos,
                                                const std::string& bucket) const {
  if (auto it = arc_full_.find(Join({head_pos, dep_pos, bucket})); it != arc_full_.end()) return &it->second;
  if (auto it = arc_bucket_.find(bucket); it != arc_bucket_.end()) return &it->second;
  return &arc_all_;
}

std::vector<double> CountModel::SupertagLogProbs(const std::string& lemma, const std::string& pos) const {
  return Smoothed(*TagCounts(lemma, pos), tags_.size(), alpha_);
}

std::map<std::string, double> CountModel::LabelLogProbs(const std::string& head_pos, const std::string& dep_pos,
                                                        const std::string& bucket) const {
  std::vector<double> p = Smoothed(*OpCounts(head_pos, dep_pos, bucket), ops_.size(), alpha_);
  std::map<std::string, double> out;
  for (size_t i = 0; i < ops_.size(); ++i) out[ops_[i]] = p[i];
  return out;
}

std::pair<double, double> CountModel::ArcLogProbs(const std::string& head_pos, const std::string& dep_pos,
                                                  const std::string& bucket) const {
  std::vector<double> p = Smoothed(*ArcCounts(head_pos, dep_pos, bucket), 2, alpha_);
  return {p[1], p[0]};
}

std::string CountModel::PosOf(const Sentence& sentence, int index) const {
  return index == 0 ? std::string(kRootPos) : sentence.tokens.at(static_cast<size_t>(index - 1)).pos;
}

SupertagCandidates CountModel::Supertags(const Sentence& sentence, size_t k) const {
  SupertagCandidates out;
  for (const auto& t : sentence.tokens) {
    const std::vector<double> primary = SupertagLogProbs(t.lemma, t.pos);
    auto pit = tag_pos_.find(t.pos);
    const std::vector<double> secondary = Smoothed(pit == tag_pos_.end() ? tag_all_ : pit->second, tags_.size(), alpha_);
    std::vector<size_t> order(tags_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      if (primary[a] != primary[b]) return primary[a] > primary[b];
      return secondary[a] > secondary[b];
    });
    std::vector<SupertagCandidate> list;
    size_t taken = 0;
    for (size_t i : order) {
      const Tag& tag = tags_[i];
      if (tag.graph) {
        if (taken == k) continue;
        ++taken;
      }
      list.push_back({tag.graph, tag.lex, primary[i]});
    }
    out.push_back(std::move(list));
  }
  return out;
}

ArcScores CountModel::Arcs(const Sentence& sentence) const {
  const int n = static_cast<int>(sentence.size());
  ArcScores w(n);
  for (int h = 0; h <= n; ++h) {
    for (int d = 1; d <= n; ++d) {
      if (h != d) w.set(h, d, ArcLogProbs(PosOf(sentence, h), PosOf(sentence, d), DistanceBucket(h, d)).first);
    }
  }
  return w;
}

LabelScores CountModel::Labels(const Sentence& sentence, int head, int dep) const {
  LabelScores ls;
  auto probs = LabelLogProbs(PosOf(sentence, head), PosOf(sentence, dep), DistanceBucket(head, dep));
  ls.fallback = 0;
  for (const auto& [op, p] : probs) {
    ls.scores[Operation::Parse(op)] = p;
    ls.fallback = std::min(ls.fallback, p);
  }
  if (probs.empty()) ls.fallback = -1e9;
  return ls;
}

// ---- serialization ------------------------------------------------------

namespace {

void WriteTable(std::ostringstream& os, const std::string& name, const std::map<std::string, std::map<size_t, long long>>& t) {
  size_t rows = 0;
  for (const auto& [c, counts] : t) rows += counts.size();
  os << "table " << name << ' ' << rows << '\n';
  for (const auto& [c, counts] : t) {
    for (const auto& [i, n] : counts) os << Escape(c) << '\t' << i << '\t' << n << '\n';
  }
}

}  // namespace

std::string CountModel::Save() const {
  std::ostringstream os;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", alpha_);
  os << kMagic << ' ' << kFormatVersion << '\n';
  os << "alpha " << buf << '\n';
  os << "tags " << tags_.size() << '\n';
  for (const auto& key : tag_keys_) os << Escape(key) << '\n';
  os << "ops " << ops_.size() << '\n';
  for (const auto& op : ops_) os << op << '\n';
  WriteTable(os, "tag_lemma", tag_lemma_);
  WriteTable(os, "tag_pos", tag_pos_);
  WriteTable(os, "tag_all", {{"", tag_all_}});
  WriteTable(os, "op_full", op_full_);
  WriteTable(os, "op_bucket", op_bucket_);
  WriteTable(os, "op_all", {{"", op_all_}});
  WriteTable(os, "arc_full", arc_full_);
  WriteTable(os, "arc_bucket", arc_bucket_);
  WriteTable(os, "arc_all", {{"", arc_all_}});
  return os.str();
}

CountModel CountModel::Load(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  size_t line_no = 0;
  auto fail = [&](const std::string& what) -> Error {
    return Error(ErrorCode::kSyntax, "model file line " + std::to_string(line_no) + ": " + what);
  };
  auto next = [&]() {
    if (!std::getline(is, line)) throw fail("unexpected end of file");
    ++line_no;
    return line;
  };
  auto header = [&](const std::string& word) {
    std::istringstream ls(next());
    std::string w;
    size_t n = 0;
    if (!(ls >> w >> n) || w != word) throw fail("expected '" + word + " <count>'");
    return n;
  };
  CountModel m;
  {
    std::istringstream ls(next());
    std::string magic;
    int version = 0;
    if (!(ls >> magic >> version) || magic != kMagic) throw fail("not a count model");
    if (version != kFormatVersion) throw fail("unsupported format version " + std::to_string(version));
  }
  {
    std::istringstream ls(next());
    std::string w;
    if (!(ls >> w >> m.alpha_) || w != "alpha" || !(m.alpha_ > 0)) throw fail("expected 'alpha <value>'");
  }
  const size_t ntags = header("tags");
  for (size_t i = 0; i < ntags; ++i) {
    const std::string key = Unescape(next());
    const size_t tab = key.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= key.size()) throw fail("bad supertag entry");
    Tag tag;
    try {
      if (key[0] == '1') tag.graph = ParseAsGraph(key.substr(1, tab - 1));
    } catch (const Error& e) {
      throw fail(std::string("bad supertag graph: ") + e.what());
    }
    if (key[tab + 1] == '1') tag.lex = LexPattern{key.substr(tab + 2)};
    m.TagIndex(key, tag);
  }
  const size_t nops = header("ops");
  for (size_t i = 0; i < nops; ++i) {
    const std::string op = next();
    try {
      Operation::Parse(op);
    } catch (const Error&) {
      throw fail("bad operation '" + op + "'");
    }
    m.OpIndex(op);
  }
  auto read_table = [&](const std::string& name, size_t vocabulary, auto target) {
    std::istringstream ls(next());
    std::string w, got;
    size_t rows = 0;
    if (!(ls >> w >> got >> rows) || w != "table" || got != name) throw fail("expected table " + name);
    for (size_t r = 0; r < rows; ++r) {
      auto fields = SplitTabs(next());
      if (fields.size() != 3) throw fail("expected 3 fields");
      size_t idx = 0;
      long long count = 0;
      try {
        idx = std::stoul(fields[1]);
        count = std::stoll(fields[2]);
      } catch (const std::exception&) {
        throw fail("bad number");
      }
      if (idx >= vocabulary || count < 0) throw fail("count out of range");
      target(Unescape(fields[0]))[idx] = count;
    }
  };
  auto into = [](std::map<std::string, Counts>& t) { return [&t](const std::string& c) -> Counts& { return t[c]; }; };
  auto flat = [](Counts& t) { return [&t](const std::string&) -> Counts& { return t; }; };
  read_table("tag_lemma", ntags, into(m.tag_lemma_));
  read_table("tag_pos", ntags, into(m.tag_pos_));
  read_table("tag_all", ntags, flat(m.tag_all_));
  read_table("op_full", nops, into(m.op_full_));
  read_table("op_bucket", nops, into(m.op_bucket_));
  read_table("op_all", nops, flat(m.op_all_));
  read_table("arc_full", 2, into(m.arc_full_));
  read_table("arc_bucket", 2, into(m.arc_bucket_));
  read_table("arc_all", 2, flat(m.arc_all_));
  return m;
}

}  // namespace amtool
