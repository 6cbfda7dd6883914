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

#include "cli.hpp"

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amtool/amconll.hpp"
#include "amtool/error.hpp"
#include "amtool/pipeline.hpp"
#include "amtool/scoring.hpp"

namespace amtool::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string bank;
  std::string in, out, log, gold, pred, model, tables;
  int jobs = 1;
  uint64_t seed = 0;
  size_t k = 6;
  double time_budget_secs = 60;
  size_t beam = 0;
  std::optional<uint64_t> randomize_tables;
  bool drop_hndl = true;
  bool psd_rewrite = true;
  std::vector<std::string> metrics;
  int restarts = 5;
  bool include_frames = false;
  double alpha = 0.1;
  size_t variant_cap = 1000;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Writes to `path`, or to `fallback` when the path is empty.
void Emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
}

const std::string& Require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
  return value;
}

Bank BankOf(const RunConfig& c) {
  try {
    return ParseBank(Require(c.bank, "--bank"));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

PipelineOptions PipelineOf(const RunConfig& c) {
  PipelineOptions o;
  o.psd_rewrite = c.psd_rewrite;
  o.drop_hndl = c.drop_hndl;
  o.decompose.variant_cap = c.variant_cap;
  o.jobs = c.jobs;
  return o;
}

Corpus ReadCorpusFile(Bank bank, const std::string& path) { return ReadCorpus(bank, ReadFile(path)); }

HeuristicTable TableOf(const RunConfig& c, Bank bank, const Corpus& corpus, const PipelineOptions& pipeline) {
  HeuristicTable base = c.tables.empty() ? BuiltinTable(bank) : ParseHeuristicTable(ReadFile(c.tables));
  if (!c.randomize_tables) return base;
  return RandomizeTable(EdgeLabels(corpus, pipeline), *c.randomize_tables, base);
}

std::vector<DecomposedInstance> DecomposeInput(const RunConfig& c, Bank* bank) {
  *bank = BankOf(c);
  Corpus corpus = ReadCorpusFile(*bank, Require(c.in, "--in"));
  PipelineOptions pipeline = PipelineOf(c);
  return DecomposeCorpus(corpus, TableOf(c, *bank, corpus, pipeline), pipeline);
}

int Decompose(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Bank bank;
  auto decomposed = DecomposeInput(c, &bank);
  std::vector<AmDepTree> trees;
  std::string log;
  for (const auto& d : decomposed) {
    if (d.ok()) {
      trees.push_back(*d.result.tree);
    } else {
      log += d.prepared.input.id + "\t" + std::string(ReasonName(d.result.reason)) + "\t" + d.result.detail + "\n";
    }
  }
  Emit(c.out, WriteAmConll(trees), out);
  Emit(c.log, log, err);
  err << "decomposed " << trees.size() << " of " << decomposed.size() << "\n";
  return kExitOk;
}

int Stats(const RunConfig& c, std::ostream& out, std::ostream&) {
  Bank bank;
  Emit(c.out, Report(DecomposeInput(c, &bank)).Format(), out);
  return kExitOk;
}

int Roundtrip(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Bank bank;
  auto decomposed = DecomposeInput(c, &bank);
  RoundTrip rt = CheckRoundTrip(decomposed, c.jobs);
  std::string text = "instances " + std::to_string(decomposed.size()) + "\ndecomposable " +
                     std::to_string(rt.decomposable) + "\nisomorphic " + std::to_string(rt.isomorphic) + "\n" +
                     rt.smatch.Format("smatch") + "\n";
  for (const auto& id : rt.failures) text += "failed " + id + "\n";
  Emit(c.out, text, out);
  if (!rt.failures.empty()) {
    err << rt.failures.size() << " decomposable instances do not round-trip\n";
    return kExitFailure;
  }
  return kExitOk;
}

int Train(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.alpha <= 0) throw UsageError("--alpha must be positive");
  auto trees = ReadAmConll(ReadFile(Require(c.in, "--in")));
  CountModel model = CountModel::Train(trees, c.alpha);
  Emit(c.out, model.Save(), out);
  err << "trained on " << trees.size() << " trees, " << model.supertag_vocabulary_size() << " supertags\n";
  return kExitOk;
}

std::unique_ptr<ScoreModel> ModelOf(const RunConfig& c) {
  const std::string& name = Require(c.model, "--model");
  if (name == "oracle") {
    return std::make_unique<OracleModel>(ReadAmConll(ReadFile(Require(c.gold, "--gold"))));
  }
  return std::make_unique<CountModel>(CountModel::Load(ReadFile(name)));
}

int ParseCommand(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Bank bank = BankOf(c);
  Corpus corpus = ReadCorpusFile(bank, Require(c.in, "--in"));
  std::unique_ptr<ScoreModel> model = ModelOf(c);
  PipelineOptions pipeline = PipelineOf(c);
  std::vector<PreparedInstance> prepared(corpus.size());
  ParallelFor(corpus.size(), c.jobs, [&](size_t i) { prepared[i] = PrepareForParsing(corpus, i, pipeline); });
  ParseConfig config;
  config.k = c.k;
  config.time_budget_secs = c.time_budget_secs;
  config.beam = c.beam;
  std::vector<ParseResult> results = ParseCorpus(prepared, *model, config, c.jobs);

  Corpus pred;
  pred.bank = bank;
  std::string log;
  size_t fallbacks = 0;
  for (size_t i = 0; i < prepared.size(); ++i) {
    for (const auto& line : prepared[i].log) log += corpus.id(i) + ": " + line + "\n";
    for (const auto& line : results[i].log) log += line + "\n";
    fallbacks += results[i].k_used == 0;
    try {
      if (bank == Bank::kEDS) {
        pred.eds.push_back(RestoreEds(prepared[i], results[i].evaluation, true));
      } else {
        pred.sdp.push_back(RestoreSdp(prepared[i], results[i].evaluation, pipeline));
      }
    } catch (const Error& e) {
      // Keep one output per input: restore the one-node graph instead.
      log += corpus.id(i) + ": cannot restore prediction: " + e.what() + "\n";
      Evaluation dummy;
      dummy.graph.AddNode("1", prepared[i].input.tokens.front().form);
      dummy.graph.AddRoot("1");
      dummy.alignment["1"] = 1;
      if (bank == Bank::kEDS) {
        pred.eds.push_back(RestoreEds(prepared[i], dummy, true));
      } else {
        pred.sdp.push_back(RestoreSdp(prepared[i], dummy, pipeline));
      }
    }
  }
  Emit(c.out, WriteCorpus(pred), out);
  Emit(c.log, log, err);
  err << "parsed " << prepared.size() << " sentences, " << fallbacks << " fell back\n";
  return kExitOk;
}

int ScoreCommand(const RunConfig& c, std::ostream& out, std::ostream&) {
  const Bank bank = BankOf(c);
  Corpus gold = ReadCorpusFile(bank, Require(c.gold, "--gold"));
  Corpus pred = ReadCorpusFile(bank, Require(c.pred, "--pred"));
  std::vector<Metric> metrics;
  try {
    for (const auto& name : c.metrics) metrics.push_back(ParseMetric(name));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (metrics.empty()) metrics = {Metric::kSmatch, bank == Bank::kEDS ? Metric::kEdm : Metric::kSdp};
  CorpusScores scores;
  try {
    scores = Score(gold, pred, metrics, SmatchOptions{c.restarts, c.seed}, c.jobs,
                   SdpScoreOptions{c.include_frames});
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::string text;
  for (Metric m : metrics) {
    switch (m) {
      case Metric::kSmatch: text += scores.smatch->Format("smatch") + "\n"; break;
      case Metric::kSdp: text += scores.sdp->Format("sdp") + "\n"; break;
      case Metric::kEdm: text += scores.edm->all.Format("edm") + "\n"; break;
    }
  }
  Emit(c.out, text, out);
  return kExitOk;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decompose, parse and score semantic graphs with the AM algebra", "amtool"};
  app.set_config("--config", "", "File of 'key = value' lines; flags on the command line win");
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig c;
  app.add_option("--bank", c.bank, "Graphbank: dm, pas, psd or eds");
  app.add_option("--in", c.in, "Input corpus (AM-CoNLL for train)");
  app.add_option("--out", c.out, "Output file (default stdout)");
  app.add_option("--log", c.log, "Log file (default stderr)");
  app.add_option("--gold", c.gold, "Gold corpus for score; gold AM-CoNLL for parse --model oracle");
  app.add_option("--pred", c.pred, "Predicted corpus for score");
  app.add_option("--model", c.model, "'oracle' or a file written by train");
  app.add_option("--tables", c.tables, "Heuristic table file (default built-in)");
  app.add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "Seed for Smatch restarts");
  app.add_option("--k", c.k, "Supertag candidates per token")->check(CLI::PositiveNumber);
  app.add_option("--time-budget-secs", c.time_budget_secs, "Decoding budget per attempt")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--beam", c.beam, "Type-state cap per node (0 = unbounded)");
  app.add_option("--randomize-tables", c.randomize_tables, "Replace the table by a random one with this seed");
  app.add_option("--drop-hndl", c.drop_hndl, "EDS: delete redundant handle edges");
  app.add_option("--psd-rewrite", c.psd_rewrite, "PSD: rewrite shared coordination arguments");
  app.add_option("--metric", c.metrics, "smatch, sdp, edm (comma separated)")->delimiter(',');
  app.add_option("--restarts", c.restarts, "Smatch hill-climbing restarts")->check(CLI::PositiveNumber);
  app.add_flag("--include-frames", c.include_frames, "SDP: count frame labels");
  app.add_option("--alpha", c.alpha, "Smoothing for train");
  app.add_option("--variant-cap", c.variant_cap, "Constant variants tried per token");

  using Command = int (*)(const RunConfig&, std::ostream&, std::ostream&);
  std::vector<std::pair<CLI::App*, Command>> commands = {
      {app.add_subcommand("decompose", "Write AM-CoNLL and a log of non-decomposable instances"), Decompose},
      {app.add_subcommand("parse", "Parse with a score model and write the graphbank format"), ParseCommand},
      {app.add_subcommand("score", "Print one line per metric"), ScoreCommand},
      {app.add_subcommand("stats", "Print the decomposability report"), Stats},
      {app.add_subcommand("train", "Fit a count model on AM-CoNLL"), Train},
      {app.add_subcommand("roundtrip", "Check evaluate(decompose(g)) against g"), Roundtrip},
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }
  try {
    for (const auto& [sub, run] : commands) {
      if (sub->parsed()) return run(c, out, err);
    }
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace amtool::cli
