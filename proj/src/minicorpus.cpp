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

#include "amtool/minicorpus.hpp"

#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <tuple>

namespace amtool {
namespace {

struct Word {
  std::string form;
  std::string lemma;
  std::string pos;
};

struct Lex {
  std::string form;
  std::string lemma;
  std::string other;  // base form, participle or comparative
};

const std::vector<std::string> kNouns = {"cat", "dog", "bird", "child", "teacher",
                                         "farmer", "student", "lawyer", "horse", "doctor"};
const std::vector<std::string> kModifiers = {"school", "farm", "pet", "city", "night"};
const std::vector<std::string> kNames = {"Kim", "Sandy", "Lee", "Robin", "Alex"};
const std::vector<std::string> kDets = {"the", "a", "every", "some"};
const std::vector<std::string> kPlaces = {"garden", "park", "house", "kitchen"};
const std::vector<std::string> kPreps = {"in", "near", "behind"};
const std::vector<Lex> kAdjs = {{"happy", "happy", "happier"}, {"tall", "tall", "taller"},
                                {"quiet", "quiet", "quieter"}, {"old", "old", "older"},
                                {"young", "young", "younger"}, {"small", "small", "smaller"}};
const std::vector<Lex> kIntrans = {{"sleeps", "sleep", "sleep"}, {"runs", "run", "run"},
                                   {"laughs", "laugh", "laugh"}, {"arrives", "arrive", "arrive"},
                                   {"smiles", "smile", "smile"}, {"waits", "wait", "wait"}};
const std::vector<Lex> kTrans = {{"chases", "chase", "chased"}, {"sees", "see", "seen"},
                                 {"likes", "like", "liked"},    {"helps", "help", "helped"},
                                 {"finds", "find", "found"},    {"knows", "know", "known"}};
const std::vector<Lex> kControl = {{"wants", "want", "want"}, {"tries", "try", "try"},
                                   {"hopes", "hope", "hope"}, {"plans", "plan", "plan"}};
const std::vector<Lex> kRaising = {{"seems", "seem", "seem"}, {"appears", "appear", "appear"},
                                   {"tends", "tend", "tend"}};
const std::vector<Lex> kDitrans = {{"gives", "give", "give"}, {"sends", "send", "send"},
                                   {"shows", "show", "show"}, {"offers", "offer", "offer"}};
const std::vector<Lex> kObjControl = {{"persuades", "persuade", "persuade"}, {"asks", "ask", "ask"},
                                      {"tells", "tell", "tell"}, {"allows", "allow", "allow"}};
const std::vector<Lex> kAdverbs = {{"quickly", "quickly", "quick"}, {"quietly", "quietly", "quiet"},
                                   {"happily", "happily", "happy"}};

struct Np {
  int head = 0;
  std::string x;
  int first = 0;
  int last = 0;
};

struct ENode {
  std::string id;
  std::string label;
  int first = 0;
  int last = 0;
  std::optional<std::string> carg;
};

class Scene {
 public:
  explicit Scene(std::mt19937_64& rng) : rng_(rng) {}

  size_t Pick(size_t n) { return static_cast<size_t>(rng_() % n); }
  template <class T>
  const T& Pick(const std::vector<T>& v) {
    return v[Pick(v.size())];
  }

  int W(const std::string& form, const std::string& lemma, const std::string& pos) {
    words_.push_back({form, lemma, pos});
    return static_cast<int>(words_.size());
  }
  // One arc per bank; an empty label leaves the bank without it.
  void Arc(int h, int d, const std::string& dm, const std::string& pas, const std::string& psd) {
    if (!dm.empty()) arcs_[Bank::kDM].emplace_back(h, d, dm);
    if (!pas.empty()) arcs_[Bank::kPAS].emplace_back(h, d, pas);
    if (!psd.empty()) arcs_[Bank::kPSD].emplace_back(h, d, psd);
  }
  void Top(int t, bool dm, bool pas, bool psd) {
    if (dm) tops_[Bank::kDM].insert(t);
    if (pas) tops_[Bank::kPAS].insert(t);
    if (psd) tops_[Bank::kPSD].insert(t);
  }
  void TopAll(int t) { Top(t, true, true, true); }
  std::string Node(char kind, const std::string& label, int first, int last,
                   std::optional<std::string> carg = std::nullopt) {
    std::string id = std::string(1, kind) + std::to_string(++next_node_);
    enodes_.push_back({id, label, first, last, std::move(carg)});
    return id;
  }
  void Edge(const std::string& from, const std::string& role, const std::string& to) {
    eedges_.push_back({from, role, to});
  }
  void ETop(const std::string& id) { etop_ = id; }

  Np NounPhrase() {
    const size_t r = Pick(10);
    Np np;
    if (r < 2) {
      const std::string& name = Pick(kNames);
      np.head = np.first = np.last = W(name, name, "NNP");
      np.x = Node('x', "named", np.head, np.head, name);
      Edge(Node('q', "proper_q", np.head, np.head), "BV", np.x);
      return np;
    }
    const std::string& det = Pick(kDets);
    const int d = W(det, det, "DT");
    np.first = d;
    int adj = 0, mod = 0;
    std::string adj_lemma, mod_lemma;
    if (r < 4) {
      adj_lemma = Pick(kAdjs).lemma;
      adj = W(adj_lemma, adj_lemma, "JJ");
    } else if (r < 6) {
      mod_lemma = Pick(kModifiers);
      mod = W(mod_lemma, mod_lemma, "NN");
    }
    const std::string& noun = Pick(kNouns);
    const int n = W(noun, noun, "NN");
    np.head = np.last = n;
    Arc(d, n, "BV", "det_ARG1", "");
    np.x = Node('x', "_" + noun + "_n_1", n, n);
    Edge(Node('q', "_" + det + "_q", d, d), "BV", np.x);
    if (adj) {
      Arc(adj, n, "ARG1", "adj_ARG1", "");
      Arc(n, adj, "", "", "RSTR");
      Edge(Node('e', "_" + adj_lemma + "_a_1", adj, adj), "ARG1", np.x);
    }
    if (mod) {
      Arc(n, mod, "compound", "", "RSTR");
      Arc(mod, n, "", "noun_ARG1", "");
      const std::string xm = Node('x', "_" + mod_lemma + "_n_1", mod, mod);
      Edge(Node('q', "udef_q", mod, mod), "BV", xm);
      const std::string c = Node('e', "compound", mod, n);
      Edge(c, "ARG1", np.x);
      Edge(c, "ARG2", xm);
    }
    return np;
  }

  Np PlacePhrase() {
    Np np;
    const int d = W("the", "the", "DT");
    const std::string& noun = Pick(kPlaces);
    const int n = W(noun, noun, "NN");
    np.head = np.last = n;
    np.first = d;
    Arc(d, n, "BV", "det_ARG1", "");
    np.x = Node('x', "_" + noun + "_n_1", n, n);
    Edge(Node('q', "_the_q", d, d), "BV", np.x);
    return np;
  }

  // Verb with its subject; returns (token, event id).
  std::pair<int, std::string> Verb(const Lex& lex, bool base, const Np& subject) {
    const int v = W(base ? lex.other : lex.form, lex.lemma, base ? "VB" : "VBZ");
    const std::string e = Node('e', "_" + lex.lemma + "_v_1", v, v);
    if (subject.head) {
      Arc(v, subject.head, "ARG1", "verb_ARG1", "ACT-arg");
      Edge(e, "ARG1", subject.x);
    }
    return {v, e};
  }

  void Build(int kind);

  SdpInstance Sdp(Bank bank, const std::string& id) const;
  EdsInstance Eds(const std::string& id) const;

 private:
  std::mt19937_64& rng_;
  std::vector<Word> words_;
  std::map<Bank, std::vector<std::tuple<int, int, std::string>>> arcs_;
  std::map<Bank, std::set<int>> tops_;
  std::vector<ENode> enodes_;
  std::vector<EdsEdge> eedges_;
  std::string etop_;
  int next_node_ = 0;
};

void Scene::Build(int kind) {
  const Np none;
  switch (kind) {
    case 0: {  // intransitive
      Np s = NounPhrase();
      auto [v, e] = Verb(Pick(kIntrans), false, s);
      TopAll(v);
      ETop(e);
      break;
    }
    case 1: {  // transitive
      Np s = NounPhrase();
      auto [v, e] = Verb(Pick(kTrans), false, s);
      Np o = NounPhrase();
      Arc(v, o.head, "ARG2", "verb_ARG2", "PAT-arg");
      Edge(e, "ARG2", o.x);
      TopAll(v);
      ETop(e);
      break;
    }
    case 2: {  // subject control
      Np s = NounPhrase();
      auto [c, ec] = Verb(Pick(kControl), false, s);
      W("to", "to", "TO");
      auto [v, ev] = Verb(Pick(kIntrans), true, s);
      Arc(c, v, "ARG2", "verb_ARG2", "PAT-arg");
      Edge(ec, "ARG2", ev);
      TopAll(c);
      ETop(ec);
      break;
    }
    case 3: {  // raising
      Np s = NounPhrase();
      const Lex& r = Pick(kRaising);
      const int rt = W(r.form, r.lemma, "VBZ");
      const std::string er = Node('e', "_" + r.lemma + "_v_to", rt, rt);
      W("to", "to", "TO");
      auto [v, ev] = Verb(Pick(kIntrans), true, s);
      Arc(rt, v, "ARG1", "verb_ARG2", "PAT-arg");
      Edge(er, "ARG2", ev);
      TopAll(rt);
      ETop(er);
      break;
    }
    case 4: {  // control into raising
      Np s = NounPhrase();
      auto [c, ec] = Verb(Pick(kControl), false, s);
      W("to", "to", "TO");
      const Lex& r = Pick(kRaising);
      const int rt = W(r.other, r.lemma, "VB");
      const std::string er = Node('e', "_" + r.lemma + "_v_to", rt, rt);
      W("to", "to", "TO");
      auto [v, ev] = Verb(Pick(kIntrans), true, s);
      Arc(c, rt, "ARG2", "verb_ARG2", "PAT-arg");
      Edge(ec, "ARG2", er);
      Arc(rt, v, "ARG1", "verb_ARG2", "PAT-arg");
      Edge(er, "ARG2", ev);
      TopAll(c);
      ETop(ec);
      break;
    }
    case 5: {  // copula
      Np s = NounPhrase();
      const int is = W("is", "be", "VBZ");
      const std::string& a = Pick(kAdjs).lemma;
      const int at = W(a, a, "JJ");
      const std::string ea = Node('e', "_" + a + "_a_1", at, at);
      Arc(at, s.head, "ARG1", "adj_ARG1", "");
      Arc(is, s.head, "", "verb_ARG1", "ACT-arg");
      Arc(is, at, "", "verb_ARG2", "PAT-arg");
      Edge(ea, "ARG1", s.x);
      Top(at, true, false, false);
      Top(is, false, true, true);
      ETop(ea);
      break;
    }
    case 6: {  // comparative
      Np s = NounPhrase();
      const int is = W("is", "be", "VBZ");
      const Lex& a = Pick(kAdjs);
      const int at = W(a.other, a.lemma, "JJR");
      const std::string ea = Node('e', "_" + a.lemma + "_a_1", at, at);
      const std::string comp = Node('e', "comp", at, at);
      const int than = W("than", "than", "IN");
      Np o = NounPhrase();
      Arc(at, s.head, "ARG1", "adj_ARG1", "");
      Arc(is, s.head, "", "verb_ARG1", "ACT-arg");
      Arc(is, at, "", "verb_ARG2", "PAT-arg");
      Arc(than, at, "ARG1", "prep_ARG1", "");
      Arc(than, o.head, "ARG2", "prep_ARG2", "");
      Arc(at, o.head, "", "", "CPR");
      Edge(ea, "ARG1", s.x);
      Edge(comp, "ARG1", ea);
      Edge(comp, "ARG2", o.x);
      Top(at, true, false, false);
      Top(is, false, true, true);
      ETop(ea);
      break;
    }
    case 7: {  // NP coordination
      Np a = NounPhrase();
      const int and_t = W("and", "and", "CC");
      Np b = NounPhrase();
      auto [v, ev] = Verb(Pick(kIntrans), true, none);
      Arc(v, a.head, "ARG1", "", "ACT-arg");
      Arc(v, b.head, "", "", "ACT-arg");
      Arc(a.head, b.head, "_and_c", "", "");
      Arc(and_t, a.head, "", "coord_ARG1", "CONJ.member");
      Arc(and_t, b.head, "", "coord_ARG2", "CONJ.member");
      Arc(v, and_t, "", "verb_ARG1", "");
      const std::string ec = Node('e', "_and_c", and_t, and_t);
      Edge(ec, "L-INDEX", a.x);
      Edge(ec, "R-INDEX", b.x);
      Edge(Node('q', "udef_q", a.first, b.last), "BV", ec);
      Edge(ev, "ARG1", ec);
      TopAll(v);
      ETop(ev);
      break;
    }
    case 8: {  // VP coordination
      Np s = NounPhrase();
      auto [v1, e1] = Verb(Pick(kIntrans), false, s);
      const int and_t = W("and", "and", "CC");
      auto [v2, e2] = Verb(Pick(kIntrans), false, s);
      Arc(v1, v2, "_and_c", "", "");
      Arc(and_t, v1, "", "coord_ARG1", "CONJ.member");
      Arc(and_t, v2, "", "coord_ARG2", "CONJ.member");
      const std::string ec = Node('e', "_and_c", and_t, and_t);
      Edge(ec, "L-INDEX", e1);
      Edge(ec, "R-INDEX", e2);
      Edge(ec, "L-HNDL", e1);
      Edge(ec, "R-HNDL", e2);
      Top(v1, true, false, false);
      Top(and_t, false, true, true);
      ETop(ec);
      break;
    }
    case 9: {  // prepositional modifier
      Np s = NounPhrase();
      auto [v, ev] = Verb(Pick(kIntrans), false, s);
      const std::string& p = Pick(kPreps);
      const int pt = W(p, p, "IN");
      Np o = PlacePhrase();
      Arc(pt, v, "ARG1", "prep_ARG1", "");
      Arc(pt, o.head, "ARG2", "prep_ARG2", "");
      Arc(v, o.head, "", "", "LOC");
      const std::string ep = Node('e', "_" + p + "_p", pt, pt);
      Edge(ep, "ARG1", ev);
      Edge(ep, "ARG2", o.x);
      TopAll(v);
      ETop(ev);
      break;
    }
    case 10: {  // adverb
      Np s = NounPhrase();
      auto [v, ev] = Verb(Pick(kIntrans), false, s);
      const Lex& a = Pick(kAdverbs);
      const int at = W(a.form, a.lemma, "RB");
      Arc(at, v, "ARG1", "adj_ARG1", "");
      Arc(v, at, "", "", "MANN");
      Edge(Node('e', "_" + a.other + "_a_1", at, at), "ARG1", ev);
      TopAll(v);
      ETop(ev);
      break;
    }
    case 11: {  // ditransitive
      Np s = NounPhrase();
      auto [v, ev] = Verb(Pick(kDitrans), false, s);
      Np r = NounPhrase();
      Np o = NounPhrase();
      Arc(v, r.head, "ARG3", "verb_ARG3", "ADDR-arg");
      Arc(v, o.head, "ARG2", "verb_ARG2", "PAT-arg");
      Edge(ev, "ARG3", r.x);
      Edge(ev, "ARG2", o.x);
      TopAll(v);
      ETop(ev);
      break;
    }
    case 12: {  // passive
      Np o = NounPhrase();
      W("was", "be", "VBD");
      const Lex& lex = Pick(kTrans);
      const int v = W(lex.other, lex.lemma, "VBN");
      const std::string ev = Node('e', "_" + lex.lemma + "_v_1", v, v);
      const int by = W("by", "by", "IN");
      Np s = NounPhrase();
      Arc(v, o.head, "ARG2", "verb_ARG2", "PAT-arg");
      Arc(v, s.head, "ARG1", "", "ACT-arg");
      Arc(by, v, "", "prep_ARG1", "");
      Arc(by, s.head, "", "prep_ARG2", "");
      Edge(ev, "ARG2", o.x);
      Edge(ev, "ARG1", s.x);
      TopAll(v);
      ETop(ev);
      break;
    }
    case 13: {  // object control
      Np s = NounPhrase();
      auto [c, ec] = Verb(Pick(kObjControl), false, s);
      Np o = NounPhrase();
      W("to", "to", "TO");
      auto [v, ev] = Verb(Pick(kIntrans), true, o);
      Arc(c, o.head, "ARG2", "verb_ARG2", "PAT-arg");
      Arc(c, v, "ARG3", "verb_ARG3", "EFF-arg");
      Edge(ec, "ARG2", o.x);
      Edge(ec, "ARG3", ev);
      TopAll(c);
      ETop(ec);
      break;
    }
    default: {  // two clauses without a connecting predicate
      const int first = static_cast<int>(words_.size()) + 1;
      Np s1 = NounPhrase();
      auto [v1, e1] = Verb(Pick(kIntrans), false, s1);
      W(";", ";", ":");
      Np s2 = NounPhrase();
      auto [v2, e2] = Verb(Pick(kIntrans), false, s2);
      Top(v1, true, true, true);
      Top(v2, false, false, true);
      const std::string c = Node('e', "implicit_conj", first, v2);
      Edge(c, "L-INDEX", e1);
      Edge(c, "R-INDEX", e2);
      Edge(c, "L-HNDL", e1);
      Edge(c, "R-HNDL", e2);
      ETop(c);
      break;
    }
  }
  W(".", ".", ".");
}

SdpInstance Scene::Sdp(Bank bank, const std::string& id) const {
  SdpInstance inst;
  inst.id = id;
  std::set<int> preds;
  auto arcs = arcs_.count(bank) ? arcs_.at(bank) : std::vector<std::tuple<int, int, std::string>>{};
  for (const auto& [h, d, l] : arcs) preds.insert(h);
  const std::set<int> tops = tops_.count(bank) ? tops_.at(bank) : std::set<int>{};
  for (size_t i = 0; i < words_.size(); ++i) {
    const int t = static_cast<int>(i + 1);
    SdpToken tok;
    tok.form = words_[i].form;
    tok.lemma = words_[i].lemma;
    tok.pos = words_[i].pos;
    tok.top = tops.contains(t);
    tok.pred = preds.contains(t);
    for (int p : preds) {
      std::string cell = "_";
      for (const auto& [h, d, l] : arcs) {
        if (h == p && d == t) cell = l;
      }
      tok.args.push_back(cell);
    }
    inst.tokens.push_back(std::move(tok));
  }
  return inst;
}

bool Attached(const std::string& form) { return form == "." || form == ";"; }

EdsInstance Scene::Eds(const std::string& id) const {
  EdsInstance inst;
  inst.id = id;
  std::vector<std::pair<int, int>> span;
  for (const auto& w : words_) {
    if (!inst.text.empty() && !Attached(w.form)) inst.text += ' ';
    const int b = static_cast<int>(inst.text.size());
    inst.text += w.form;
    span.emplace_back(b, static_cast<int>(inst.text.size()));
  }
  // A word's span runs over punctuation written directly after it.
  auto end_of = [&](int t) {
    int e = span[static_cast<size_t>(t - 1)].second;
    if (static_cast<size_t>(t) < words_.size() && Attached(words_[static_cast<size_t>(t)].form)) {
      e = span[static_cast<size_t>(t)].second;
    }
    return e;
  };
  for (const auto& n : enodes_) {
    inst.nodes.push_back({n.id, n.label, span[static_cast<size_t>(n.first - 1)].first, end_of(n.last), n.carg});
  }
  inst.edges = eedges_;
  inst.top = etop_;
  return inst;
}

}  // namespace

Corpus MiniCorpus(Bank bank, size_t count, uint64_t seed) {
  Corpus c;
  c.bank = bank;
  std::mt19937_64 rng(seed);
  constexpr int kKinds = 15;
  for (size_t i = 0; i < count; ++i) {
    Scene scene(rng);
    // Cycle through the constructions so every one is present.
    scene.Build(static_cast<int>(i % kKinds));
    char id[32];
    std::snprintf(id, sizeof id, "mc%03zu", i + 1);
    if (bank == Bank::kEDS) {
      c.eds.push_back(scene.Eds(id));
    } else {
      c.sdp.push_back(scene.Sdp(bank, id));
    }
  }
  return c;
}

}  // namespace amtool
