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

#include "amtool/pipeline.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "amtool/error.hpp"

namespace amtool {

Corpus ReadCorpus(Bank bank, std::string_view text) {
  Corpus c;
  c.bank = bank;
  if (bank == Bank::kEDS) {
    c.eds = ReadEds(text);
    for (const auto& e : c.eds) e.Validate();
  } else {
    c.sdp = ReadSdp(text);
  }
  return c;
}

std::string WriteCorpus(const Corpus& corpus) {
  return corpus.bank == Bank::kEDS ? WriteEds(corpus.eds) : WriteSdp(corpus.sdp);
}

PreparedInstance Prepare(const Corpus& corpus, size_t index, const PipelineOptions& options) {
  PreparedInstance p;
  p.bank = corpus.bank;
  if (corpus.bank == Bank::kEDS) {
    p.eds = corpus.eds.at(index);
    PreparedEds prep = PrepareEds(p.eds, EdsOptions{options.drop_hndl});
    p.input = std::move(prep.input);
    p.eds_tokens = std::move(prep.tokens);
    if (prep.deleted_hndl > 0) p.log.push_back("deleted " + std::to_string(prep.deleted_hndl) + " handle edges");
    return p;
  }
  p.sdp = corpus.sdp.at(index);
  SemGraph g = SdpToGraph(p.sdp);
  if (corpus.bank == Bank::kPSD && options.psd_rewrite) {
    CoordinationRewrite cr = RewritePsdCoordination(g);
    if (cr.ambiguous) p.log.push_back("coordination left as is: " + cr.detail);
    g = std::move(cr.graph);
  }
  PreprocessedSdp pre = PreprocessSdp(g, SdpTokens(p.sdp));
  p.record = std::move(pre.record);
  p.input.id = p.sdp.id;
  for (const auto& t : p.sdp.tokens) p.input.text += (p.input.text.empty() ? "" : " ") + t.form;
  p.input.graph = std::move(pre.graph);
  p.input.alignment = std::move(pre.alignment);
  p.input.tokens = std::move(pre.tokens);
  return p;
}

PreparedInstance PrepareForParsing(const Corpus& corpus, size_t index, const PipelineOptions& options) {
  try {
    return Prepare(corpus, index, options);
  } catch (const Error& e) {
    if (corpus.bank != Bank::kEDS) throw;
    PreparedInstance p;
    p.bank = corpus.bank;
    p.eds = corpus.eds.at(index);
    p.eds_tokens = TokenizeEds(p.eds.text);
    p.input.id = p.eds.id;
    p.input.text = p.eds.text;
    p.input.tokens = EdsAmTokens(p.eds_tokens);
    p.log.push_back(e.what());
    return p;
  }
}

SdpInstance RestoreSdp(const PreparedInstance& prepared, const Evaluation& evaluation,
                       const PipelineOptions& options) {
  SemGraph g = InvertPreprocessSdp(evaluation.graph, evaluation.alignment, prepared.artificial_token());
  if (prepared.bank == Bank::kPSD && options.psd_rewrite) g = RevertPsdCoordination(g);
  return GraphToSdp(g, evaluation.alignment, prepared.sdp);
}

EdsInstance RestoreEds(const PreparedInstance& prepared, const Evaluation& evaluation, bool token_fallback) {
  EdsInstance out = RestoreSpans(evaluation.graph, evaluation.alignment, prepared.eds_tokens,
                                 RestoreOptions{token_fallback});
  out.id = prepared.eds.id;
  out.text = prepared.eds.text;
  return out;
}

Corpus RestoreCorpus(Bank bank, const std::vector<PreparedInstance>& prepared,
                     const std::vector<Evaluation>& evaluations, const PipelineOptions& options,
                     bool token_fallback) {
  Corpus c;
  c.bank = bank;
  for (size_t i = 0; i < prepared.size(); ++i) {
    if (bank == Bank::kEDS) {
      c.eds.push_back(RestoreEds(prepared[i], evaluations[i], token_fallback));
    } else {
      c.sdp.push_back(RestoreSdp(prepared[i], evaluations[i], options));
    }
  }
  return c;
}

SemGraph NativeGraph(const Corpus& corpus, size_t index) {
  return corpus.bank == Bank::kEDS ? EdsToGraph(corpus.eds.at(index)) : SdpToGraph(corpus.sdp.at(index));
}

void ParallelFor(size_t n, int jobs, const std::function<void(size_t)>& fn) {
  const size_t workers = std::min(n, static_cast<size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> threads;
  for (size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (size_t i; !stop && (i = next++) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
          stop = true;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<DecomposedInstance> DecomposeCorpus(const Corpus& corpus, const HeuristicTable& table,
                                                const PipelineOptions& options) {
  std::vector<DecomposedInstance> out(corpus.size());
  ParallelFor(corpus.size(), options.jobs, [&](size_t i) {
    DecomposedInstance& d = out[i];
    try {
      d.prepared = Prepare(corpus, i, options);
    } catch (const Error& e) {
      d.prepared.bank = corpus.bank;
      d.prepared.input.id = corpus.id(i);
      d.prepare_error = e.what();
      d.result.reason = NonDecomposableReason::kNotATree;
      d.result.detail = e.what();
      return;
    }
    d.result = Decompose(d.prepared.input, table, options.decompose);
  });
  return out;
}

std::set<std::string> EdgeLabels(const Corpus& corpus, const PipelineOptions& options) {
  std::set<std::string> out;
  for (size_t i = 0; i < corpus.size(); ++i) {
    try {
      for (const auto& e : Prepare(corpus, i, options).input.graph.edges()) out.insert(e.label);
    } catch (const Error&) {
    }
  }
  return out;
}

DecomposabilityReport Report(const std::vector<DecomposedInstance>& decomposed) {
  DecomposabilityReport r;
  for (const auto& d : decomposed) r.Add(d.result);
  return r;
}

RoundTrip CheckRoundTrip(const std::vector<DecomposedInstance>& decomposed, int jobs) {
  std::vector<std::optional<PRF>> scores(decomposed.size());
  std::vector<char> iso(decomposed.size(), 0);
  ParallelFor(decomposed.size(), jobs, [&](size_t i) {
    const auto& d = decomposed[i];
    if (!d.ok()) return;
    Evaluation ev = Evaluate(*d.result.tree);
    iso[i] = Isomorphic(ev.graph, d.prepared.input.graph);
    scores[i] = Smatch(ev.graph, d.prepared.input.graph);
  });
  RoundTrip rt;
  for (size_t i = 0; i < decomposed.size(); ++i) {
    if (!scores[i]) continue;
    ++rt.decomposable;
    rt.smatch += *scores[i];
    if (iso[i]) {
      ++rt.isomorphic;
    } else {
      rt.failures.push_back(decomposed[i].prepared.input.id);
    }
  }
  return rt;
}

Sentence SentenceFor(const PreparedInstance& prepared) {
  Sentence s;
  s.id = prepared.input.id;
  s.text = prepared.input.text;
  s.tokens = prepared.input.tokens;
  return s;
}

std::vector<ParseResult> ParseCorpus(const std::vector<PreparedInstance>& prepared, const ScoreModel& model,
                                     const ParseConfig& config, int jobs) {
  std::vector<ParseResult> out(prepared.size());
  ParallelFor(prepared.size(), jobs, [&](size_t i) { out[i] = Parse(SentenceFor(prepared[i]), model, config); });
  return out;
}

Metric ParseMetric(std::string_view name) {
  if (name == "smatch") return Metric::kSmatch;
  if (name == "sdp") return Metric::kSdp;
  if (name == "edm") return Metric::kEdm;
  throw std::invalid_argument("unknown metric '" + std::string(name) + "' (smatch, sdp, edm)");
}

CorpusScores Score(const Corpus& gold, const Corpus& pred, const std::vector<Metric>& metrics,
                   const SmatchOptions& smatch, int jobs, const SdpScoreOptions& sdp) {
  if (gold.bank != pred.bank) throw std::invalid_argument("gold and predicted corpora are in different formats");
  if (gold.size() != pred.size()) {
    throw Error(ErrorCode::kIdMismatch, "gold has " + std::to_string(gold.size()) + " instances, prediction " +
                                            std::to_string(pred.size()));
  }
  for (size_t i = 0; i < gold.size(); ++i) {
    if (gold.id(i) != pred.id(i)) {
      throw Error(ErrorCode::kIdMismatch, "instance " + std::to_string(i + 1) + ": gold id '" + gold.id(i) +
                                              "', predicted id '" + pred.id(i) + "'");
    }
  }
  CorpusScores out;
  for (Metric m : metrics) {
    switch (m) {
      case Metric::kSmatch: {
        std::vector<PRF> per(gold.size());
        ParallelFor(gold.size(), jobs, [&](size_t i) {
          SmatchOptions o = smatch;
          o.seed = smatch.seed + i;
          per[i] = Smatch(NativeGraph(pred, i), NativeGraph(gold, i), o);
        });
        PRF total;
        for (const auto& p : per) total += p;
        out.smatch = total;
        break;
      }
      case Metric::kSdp:
        if (gold.bank == Bank::kEDS) throw std::invalid_argument("the sdp metric needs an SDP corpus");
        out.sdp = SdpLabeledF(gold.sdp, pred.sdp, sdp);
        break;
      case Metric::kEdm:
        if (gold.bank != Bank::kEDS) throw std::invalid_argument("the edm metric needs an EDS corpus");
        out.edm = Edm(gold.eds, pred.eds);
        break;
    }
  }
  return out;
}

}  // namespace amtool
