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

#ifndef AMTOOL_PIPELINE_HPP_
#define AMTOOL_PIPELINE_HPP_

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "amtool/decoding.hpp"
#include "amtool/decomposition.hpp"
#include "amtool/eds.hpp"
#include "amtool/heuristics.hpp"
#include "amtool/metrics.hpp"
#include "amtool/sdp.hpp"

namespace amtool {

// A corpus in its graphbank's native format. DM, PAS and PSD are SDP
// files; EDS uses the line format.
struct Corpus {
  Bank bank = Bank::kDM;
  std::vector<SdpInstance> sdp;
  std::vector<EdsInstance> eds;

  size_t size() const { return bank == Bank::kEDS ? eds.size() : sdp.size(); }
  const std::string& id(size_t i) const { return bank == Bank::kEDS ? eds[i].id : sdp[i].id; }
};

Corpus ReadCorpus(Bank bank, std::string_view text);
std::string WriteCorpus(const Corpus& corpus);

struct PipelineOptions {
  bool psd_rewrite = true;  // PSD only
  bool drop_hndl = true;    // EDS only
  DecomposeOptions decompose;
  int jobs = 1;
};

// One instance ready for decomposition, with what is needed to map graphs
// back to the native format.
struct PreparedInstance {
  Bank bank = Bank::kDM;
  DecompositionInput input;
  std::vector<std::string> log;
  // SDP
  SdpInstance sdp;
  SdpRecord record;
  // EDS
  EdsInstance eds;
  std::vector<EdsToken> eds_tokens;

  // Token index of the artificial word, or 0.
  int artificial_token() const {
    return record.artificial ? static_cast<int>(sdp.tokens.size()) + 1 : 0;
  }
};

PreparedInstance Prepare(const Corpus& corpus, size_t index, const PipelineOptions& options);

// Like Prepare, but an EDS instance that cannot be aligned still yields its
// tokens (with an empty graph) and the error in `log`.
PreparedInstance PrepareForParsing(const Corpus& corpus, size_t index, const PipelineOptions& options);

// Maps an evaluated graph (preprocessed space) back to the native format.
// Throws kChildlessComplexNode for EDS unless `token_fallback` is set.
SdpInstance RestoreSdp(const PreparedInstance& prepared, const Evaluation& evaluation, const PipelineOptions& options);
EdsInstance RestoreEds(const PreparedInstance& prepared, const Evaluation& evaluation, bool token_fallback);

// Native-format corpus with one restored instance per entry.
Corpus RestoreCorpus(Bank bank, const std::vector<PreparedInstance>& prepared,
                     const std::vector<Evaluation>& evaluations, const PipelineOptions& options,
                     bool token_fallback);

// Graph of a native instance for Smatch.
SemGraph NativeGraph(const Corpus& corpus, size_t index);

// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
// is rethrown after all workers stop.
void ParallelFor(size_t n, int jobs, const std::function<void(size_t)>& fn);

struct DecomposedInstance {
  PreparedInstance prepared;
  DecompositionResult result;
  // Set when preparation itself failed (e.g. an unalignable EDS node).
  std::optional<std::string> prepare_error;
  bool ok() const { return !prepare_error && result.ok(); }
};

std::vector<DecomposedInstance> DecomposeCorpus(const Corpus& corpus, const HeuristicTable& table,
                                                const PipelineOptions& options);

// Edge labels of the prepared graphs, e.g. for RandomizeTable. Instances
// that fail to prepare are skipped.
std::set<std::string> EdgeLabels(const Corpus& corpus, const PipelineOptions& options);

DecomposabilityReport Report(const std::vector<DecomposedInstance>& decomposed);

struct RoundTrip {
  size_t decomposable = 0;
  size_t isomorphic = 0;
  PRF smatch;                          // evaluated vs. preprocessed input
  std::vector<std::string> failures;  // ids
};

// evaluate(decompose(g)) against g for every decomposable instance.
RoundTrip CheckRoundTrip(const std::vector<DecomposedInstance>& decomposed, int jobs = 1);

// Sentence as seen by the parser: the prepared tokens (with the artificial
// word when preprocessing added one).
Sentence SentenceFor(const PreparedInstance& prepared);

std::vector<ParseResult> ParseCorpus(const std::vector<PreparedInstance>& prepared, const ScoreModel& model,
                                        const ParseConfig& config, int jobs = 1);

struct CorpusScores {
  std::optional<PRF> smatch;
  std::optional<PRF> sdp;
  std::optional<EdmScore> edm;
};

enum class Metric { kSmatch, kSdp, kEdm };
Metric ParseMetric(std::string_view name);  // throws std::invalid_argument

// Scores `pred` against `gold` (same bank, aligned by position; ids must
// match). Smatch is micro-averaged over triples.
CorpusScores Score(const Corpus& gold, const Corpus& pred, const std::vector<Metric>& metrics,
                   const SmatchOptions& smatch = {}, int jobs = 1, const SdpScoreOptions& sdp = {});

}  // namespace amtool

#endif  // AMTOOL_PIPELINE_HPP_
