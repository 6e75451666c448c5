// src/cli/cli.cc

// Copyright 2026  The phonefuse Authors

// See ../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "cli/cli.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "base/error.h"
#include "base/text-utils.h"
#include "cli/manifest.h"
#include "decoder/decoder.h"
#include "eval/sweep.h"
#include "eval/synth.h"
#include "eval/wer.h"
#include "lexicon/lexicon.h"
#include "lm/ngram.h"
#include "scorer/scorer.h"
#include "scorer/toy-las.h"

namespace phonefuse {

namespace {

namespace fs = std::filesystem;

// Every option of `app` with the value it ended up with.
nlohmann::ordered_json EchoOptions(const CLI::App &app) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const CLI::Option *opt : app.get_options()) {
    std::string name = opt->get_name();
    if (name.empty() || name == "--help") continue;
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    if (opt->count() > 0) {
      const auto &r = opt->results();
      j[name] = r.size() == 1 ? nlohmann::ordered_json(r[0]) : nlohmann::ordered_json(r);
    } else {
      j[name] = opt->get_default_str();
    }
  }
  return j;
}

std::string ManifestPath(const std::string &out) {
  if (fs::is_directory(out)) return (fs::path(out) / "manifest.json").string();
  return out + ".manifest.json";
}

std::ofstream OpenOut(const std::string &path) {
  if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  return os;
}

std::vector<std::vector<std::string>> ReadCorpus(const std::string &path) {
  std::istringstream is(ReadFileToString(path));
  std::vector<std::vector<std::string>> out;
  for (std::string line; std::getline(is, line);)
    if (!Trim(line).empty()) out.push_back(SplitFields(line));
  return out;
}

PronLexicon LoadLexicon(const std::string &lexicon, const std::string &phones) {
  auto table = std::make_shared<SymbolTable>(SymbolTable::ReadText(phones));
  return ReadLexicon(lexicon, table);
}

// --- flag groups -----------------------------------------------------------

struct ResourceFlags {
  std::string lexicon, phones, lm;

  void Add(CLI::App *app) {
    app->add_option("--lexicon", lexicon, "Pronunciation lexicon (word<TAB>phones)");
    app->add_option("--phones", phones, "Phone symbol table (symbol<TAB>id)");
    app->add_option("--lm", lm, "ARPA language model");
  }

  DecoderResources Load(RunManifest *manifest) const {
    if (lexicon.empty()) {
      if (!lm.empty()) throw ConfigError("--lm needs --lexicon");
      return DecoderResources();
    }
    if (phones.empty()) throw ConfigError("--lexicon needs --phones");
    manifest->AddInput(lexicon);
    manifest->AddInput(phones);
    auto lex = LoadLexicon(lexicon, phones);
    if (lm.empty()) return DecoderResources(std::move(lex));
    manifest->AddInput(lm);
    return DecoderResources(std::move(lex), LmToFst(ReadArpa(lm)));
  }
};

// Where scores come from: an explicit table, a trained toy model, or the
// feature emitter of a synthetic task.
struct ScorerFlags {
  std::string task, table, model;
  bool emitter = false;
  EmitterOptions emitter_opts;
  double eow_prob = 0.0;

  void Add(CLI::App *app) {
    app->add_option("--task", task, "Synthetic task directory (utterances and references)");
    app->add_option("--table", table, "JSON score table");
    app->add_option("--model", model, "Toy model checkpoint");
    app->add_flag("--emitter", emitter, "Score with the task's feature emitter");
    app->add_option("--sharpness", emitter_opts.sharpness, "Emitter softmax sharpness")
        ->capture_default_str();
    app->add_option("--eow-prob", eow_prob,
                    "Emitter: fixed non-advancing <eow> probability (0 = off)")
        ->capture_default_str();
  }

  struct Loaded {
    std::unique_ptr<Scorer> scorer;
    std::unique_ptr<ToyLasModel> model;
    std::optional<SynthTask> task;
    std::vector<Utterance> utts;
  };

  Loaded Load(RunManifest *manifest) const {
    int sources = !table.empty() + !model.empty() + emitter;
    if (sources != 1) throw ConfigError("give exactly one of --table, --model, --emitter");
    Loaded l;
    if (!task.empty()) {
      manifest->AddInput(task);
      l.task = ReadSynthTask(task);
      l.utts = l.task->utterances;
    }
    if (!table.empty()) {
      manifest->AddInput(table);
      auto ts = ReadTableScorer(table);
      if (!l.task) {
        for (const auto &id : ts->TableIds()) {
          Utterance u;
          u.id = id.empty() ? "utt" : id;
          l.utts.push_back(std::move(u));
        }
      }
      l.scorer = std::move(ts);
    } else if (!model.empty()) {
      if (!l.task) throw ConfigError("--model needs --task for its features");
      manifest->AddInput(model);
      l.model = std::make_unique<ToyLasModel>(ReadToyLas(model));
      if (!(*l.model->alphabet() == *l.task->alphabet))
        throw ConfigError("model output units do not match the task units");
      l.scorer = std::make_unique<ToyLasScorer>(*l.model);
    } else {
      if (!l.task) throw ConfigError("--emitter needs --task");
      EmitterOptions eo = emitter_opts;
      if (eow_prob > 0.0) eo.eow_prob = eow_prob;
      l.scorer = BuildEmitter(l.task->alphabet, l.utts, eo);
    }
    return l;
  }
};

struct DecodeFlags {
  DecodeConfig config;
  std::string fusion = "none", coverage_mode = "attention", eow_mode = "optional",
              units = "phoneme";
  double lm_weight = 0.0;
  std::optional<double> lm_weight_nbest;
  int jobs = 1;
  CLI::Option *units_opt = nullptr;

  void Add(CLI::App *app, bool with_weights) {
    if (with_weights) {
      app->add_option("--fusion", fusion, "none | nbest | beam | both")->capture_default_str();
      app->add_option("--lm-weight", lm_weight,
                      "LM weight: the n-best weight for --fusion nbest, the beam weight "
                      "for beam and both")
          ->capture_default_str();
      app->add_option("--lm-weight-nbest", lm_weight_nbest,
                      "N-best rescoring weight for --fusion both (or nbest)");
    }
    app->add_option("--coverage-weight", config.coverage_weight, "Coverage weight (eta)")
        ->capture_default_str();
    app->add_option("--coverage-threshold", config.coverage_threshold,
                    "Attention mass counted as covered")
        ->capture_default_str();
    app->add_option("--coverage-mode", coverage_mode, "attention | tokens")
        ->capture_default_str();
    app->add_option("--beam-width", config.beam_width, "Beam width")->capture_default_str();
    app->add_option("--nbest", config.nbest_size, "N-best list size")->capture_default_str();
    app->add_option("--max-steps", config.max_steps, "Maximum output tokens per utterance")
        ->capture_default_str();
    app->add_option("--eow-mode", eow_mode, "required | optional")->capture_default_str();
    units_opt = app->add_option("--units", units, "phoneme | grapheme (default: the task's)")
                    ->capture_default_str();
    app->add_option("--jobs", jobs, "Utterances decoded in parallel")->capture_default_str();
  }

  DecodeConfig Build(const std::optional<SynthTask> &task) const {
    DecodeConfig c = config;
    c.fusion = ParseFusion(fusion);
    c.coverage_mode = ParseCoverageMode(coverage_mode);
    c.eow_mode = ParseEowMode(eow_mode);
    c.units = task && units_opt->count() == 0 ? task->units : ParseOutputUnits(units);
    switch (c.fusion) {
      case Fusion::kNone: break;
      case Fusion::kNBest: c.lm_weight_nbest = lm_weight_nbest.value_or(lm_weight); break;
      case Fusion::kBeam: c.lm_weight_beam = lm_weight; break;
      case Fusion::kBoth:
        c.lm_weight_beam = lm_weight;
        c.lm_weight_nbest = lm_weight_nbest.value_or(0.0);
        break;
    }
    c.Check();
    if (jobs < 1) throw ConfigError("--jobs must be >= 1");
    return c;
  }
};

// --- commands ----------------------------------------------------------------

struct CompileLexiconCmd {
  std::string lexicon, phones, eow_mode = "optional", out, words;

  void Add(CLI::App *app) {
    app->add_option("--lexicon", lexicon, "Pronunciation lexicon")->required();
    app->add_option("--phones", phones, "Phone symbol table")->required();
    app->add_option("--eow-mode", eow_mode, "required | optional")->capture_default_str();
    app->add_option("--words", words, "Word symbol table to build L over (e.g. the LM's)");
    app->add_option("--out", out, "Output directory")->required();
  }

  int Run(const CLI::App &app, std::ostream &os) const {
    RunManifest m("compile-lexicon");
    m.config() = EchoOptions(app);
    m.AddInput(lexicon);
    m.AddInput(phones);
    auto lex = LoadLexicon(lexicon, phones);
    SymbolTablePtr word_table;
    if (!words.empty()) {
      m.AddInput(words);
      word_table = std::make_shared<SymbolTable>(SymbolTable::ReadText(words));
    }
    auto l = CompileL(lex, ParseEowMode(eow_mode), word_table);
    fs::create_directories(out);
    fs::path d(out);
    WriteFstText(l, (d / "L.fst.txt").string());
    l.InputSymbols().WriteText((d / "phones.txt").string());
    l.OutputSymbols().WriteText((d / "words.txt").string());
    for (const char *f : {"L.fst.txt", "phones.txt", "words.txt"}) m.AddOutput((d / f).string());
    m.Write((d / "manifest.json").string());
    os << "L: " << l.NumStates() << " states, " << lex.entries.size() << " words, "
       << lex.NumPronunciations() << " pronunciations\n";
    return kExitOk;
  }
};

struct TrainLmCmd {
  std::string corpus, out, smoothing = "absdisc", fst;
  NGramTrainOptions opts;

  void Add(CLI::App *app) {
    app->add_option("--corpus", corpus, "Training text, one sentence per line")->required();
    app->add_option("--order", opts.order, "N-gram order (1-4)")->capture_default_str();
    app->add_option("--smoothing", smoothing, "mle | absdisc")->capture_default_str();
    app->add_option("--discount", opts.discount, "Absolute discount")->capture_default_str();
    app->add_flag("--unk", opts.use_unk, "Map singletons to <unk>");
    app->add_option("--fst", fst, "Also write G in text FST format here");
    app->add_option("--out", out, "Output ARPA file")->required();
  }

  int Run(const CLI::App &app, std::ostream &os) {
    RunManifest m("train-lm");
    m.config() = EchoOptions(app);
    m.AddInput(corpus);
    opts.smoothing = ParseSmoothing(smoothing);
    auto lm = TrainNGram(ReadCorpus(corpus), opts);
    {
      auto f = OpenOut(out);
      WriteArpa(lm, f);
    }
    m.AddOutput(out);
    if (!fst.empty()) {
      auto g = LmToFst(lm);
      {
        auto f = OpenOut(fst);
        WriteFstText(g, f);
      }
      std::string syms = (fs::path(fst).parent_path() / "words.txt").string();
      lm.vocab().WriteText(syms);
      m.AddOutput(fst);
      m.AddOutput(syms);
    }
    m.Write(ManifestPath(out));
    os << "LM: order " << lm.order() << ", " << lm.vocab().size() - 1 << " words, "
       << lm.log_probs().size() << " n-grams\n";
    return kExitOk;
  }
};

struct SynthCmd {
  std::string lexicon, phones, lm, corpus, out, units = "phoneme";
  std::uint64_t seed = 1;
  bool no_eow = false;
  SynthOptions opts;

  void Add(CLI::App *app) {
    app->add_option("--lexicon", lexicon, "Pronunciation lexicon")->required();
    app->add_option("--phones", phones, "Phone symbol table")->required();
    app->add_option("--lm", lm, "ARPA LM to sample sentences from")->required();
    app->add_option("--corpus", corpus, "LM training text, stored with the task");
    app->add_option("--count", opts.count, "Number of utterances")->capture_default_str();
    app->add_option("--noise", opts.noise, "Unit confusion probability in [0, 1)")
        ->capture_default_str();
    app->add_option("--confusion-weight", opts.confusion_weight,
                    "Share of the confusing unit in a blended frame")
        ->capture_default_str();
    app->add_option("--feature-noise", opts.feature_noise, "Gaussian feature noise (std)")
        ->capture_default_str();
    app->add_option("--max-words", opts.max_words, "Longest sampled sentence")
        ->capture_default_str();
    app->add_option("--units", units, "phoneme | grapheme")->capture_default_str();
    app->add_flag("--no-eow", no_eow, "Do not render <eow> tokens");
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
    app->add_option("--out", out, "Output task directory")->required();
  }

  int Run(const CLI::App &app, std::ostream &os) {
    RunManifest m("synth");
    m.config() = EchoOptions(app);
    m.SetSeed(seed);
    m.AddInput(lexicon);
    m.AddInput(phones);
    m.AddInput(lm);
    opts.units = ParseOutputUnits(units);
    opts.eow_tokens = !no_eow;
    auto task = SynthCorpus(seed, LoadLexicon(lexicon, phones),
                            std::make_shared<NGramModel>(ReadArpa(lm)), opts);
    if (!corpus.empty()) {
      m.AddInput(corpus);
      task.lm_corpus = ReadCorpus(corpus);
    }
    WriteSynthTask(task, out);
    m.AddOutput(out);
    m.Write((fs::path(out) / "manifest.json").string());
    os << "task: " << task.utterances.size() << " utterances, " << task.alphabet->size() - 3
       << " units\n";
    return kExitOk;
  }
};

struct TrainScorerCmd {
  std::string task, out, loss_csv, optimizer = "sgd";
  std::uint64_t seed = 1;
  double init_scale = 0.1;
  ToyLasConfig config;
  ToyLasTrainOptions opts;

  void Add(CLI::App *app) {
    app->add_option("--task", task, "Synthetic task directory")->required();
    app->add_option("--epochs", opts.epochs, "Full-batch epochs")->capture_default_str();
    app->add_option("--lr", opts.learning_rate, "Learning rate")->capture_default_str();
    app->add_option("--optimizer", optimizer, "sgd | adam")->capture_default_str();
    app->add_option("--enc-hidden", config.enc_hidden, "Encoder state size")->capture_default_str();
    app->add_option("--enc-layers", config.enc_layers, "Encoder layers (1 or 2)")->capture_default_str();
    app->add_option("--heads", config.heads, "Attention heads")->capture_default_str();
    app->add_option("--att-dim", config.att_dim, "Attention projection size")->capture_default_str();
    app->add_option("--dec-hidden", config.dec_hidden, "Decoder state size")->capture_default_str();
    app->add_option("--embed-dim", config.embed_dim, "Output embedding size")->capture_default_str();
    app->add_option("--init-scale", init_scale, "Uniform initialization range")
        ->capture_default_str();
    app->add_option("--seed", seed, "Initialization seed")->capture_default_str();
    app->add_option("--loss-csv", loss_csv, "Loss trace (default: <out>.loss.csv)");
    app->add_option("--out", out, "Output checkpoint")->required();
  }

  int Run(const CLI::App &app, std::ostream &os) {
    RunManifest m("train-scorer");
    m.config() = EchoOptions(app);
    m.SetSeed(seed);
    m.AddInput(task);
    auto t = ReadSynthTask(task);
    if (optimizer == "adam") opts.optimizer = Optimizer::kAdam;
    else if (optimizer == "sgd") opts.optimizer = Optimizer::kSgd;
    else throw ConfigError("unknown optimizer '" + optimizer + "' (sgd|adam)");
    config.input_dim = static_cast<int>(t.alphabet->size());
    ToyLasModel model(config, t.alphabet);
    model.InitRandom(seed, init_scale);
    auto trace = TrainToyLas(&model, t.utterances, opts);
    {
      auto f = OpenOut(out);
      WriteToyLas(model, f);
    }
    std::string csv = loss_csv.empty() ? out + ".loss.csv" : loss_csv;
    {
      auto f = OpenOut(csv);
      WriteLossCsv(trace, f);
    }
    m.AddOutput(out);
    m.AddOutput(csv);
    m.Write(ManifestPath(out));
    os << "trained " << opts.epochs << " epochs: loss "
       << FormatDouble(MeanTokenLoss(model, t.utterances)) << ", accuracy "
       << FormatDouble(TeacherForcedAccuracy(model, t.utterances)) << "\n";
    return kExitOk;
  }
};

struct DecodeCmd {
  ResourceFlags resources;
  ScorerFlags scorer;
  DecodeFlags decode;
  std::string out;

  void Add(CLI::App *app) {
    resources.Add(app);
    scorer.Add(app);
    decode.Add(app, true);
    app->add_option("--out", out, "Output JSONL")->required();
  }

  int Run(const CLI::App &app, std::ostream &os) {
    RunManifest m("decode");
    m.config() = EchoOptions(app);
    auto loaded = scorer.Load(&m);
    auto res = resources.Load(&m);
    auto config = decode.Build(loaded.task);
    CheckDecodeSetup(*loaded.scorer, res, config);
    auto results = DecodeAll(*loaded.scorer, res, loaded.utts, config, decode.jobs);
    {
      auto f = OpenOut(out);
      for (const auto &r : results)
        f << DecodeResultToJson(r, config, *loaded.scorer->alphabet()).dump() << '\n';
    }
    m.AddOutput(out);
    m.Write(ManifestPath(out));
    int dropped_utts = 0;
    for (const auto &r : results) dropped_utts += r.words.empty();
    os << "decoded " << results.size() << " utterances";
    if (dropped_utts) os << ", " << dropped_utts << " without words";
    if (loaded.task && !loaded.utts.empty())
      os << ", WER " << ScoreResults(loaded.utts, results).ToString();
    os << "\n";
    return kExitOk;
  }
};

struct SweepCmd {
  ResourceFlags resources;
  ScorerFlags scorer;
  DecodeFlags decode;
  std::string mode = "nbest", grid = "0:0.3:0.02", out;
  double split_sum = 0.1;

  void Add(CLI::App *app) {
    resources.Add(app);
    scorer.Add(app);
    decode.Add(app, false);
    app->add_option("--mode", mode, "beam | nbest | split")->capture_default_str();
    app->add_option("--grid", grid, "lo:hi:step over the swept weight")->capture_default_str();
    app->add_option("--split-sum", split_sum, "Split mode: lambda_beam + lambda_nbest")
        ->capture_default_str();
    app->add_option("--out", out, "Output CSV")->required();
  }

  int Run(const CLI::App &app, std::ostream &os) {
    RunManifest m("sweep");
    m.config() = EchoOptions(app);
    auto loaded = scorer.Load(&m);
    if (!loaded.task) throw ConfigError("sweep needs --task for reference words");
    auto res = resources.Load(&m);
    auto config = decode.Build(loaded.task);
    std::vector<std::string> range;
    {
      std::istringstream is(grid);
      for (std::string f; std::getline(is, f, ':');) range.push_back(f);
    }
    if (range.size() != 3) throw ConfigError("--grid must be lo:hi:step");
    auto sweep_mode = ParseSweepMode(mode);
    double lo, hi, step;
    if (!ParseDouble(range[0], &lo) || !ParseDouble(range[1], &hi) ||
        !ParseDouble(range[2], &step))
      throw ConfigError("--grid must be lo:hi:step");
    auto lambdas = LinearGrid(lo, hi, step);
    auto r = SweepLmWeight(*loaded.scorer, res, loaded.utts, config,
                           MakeSweepGrid(sweep_mode, lambdas, split_sum), sweep_mode, decode.jobs);
    {
      auto f = OpenOut(out);
      WriteSweepCsv(r, f);
    }
    m.AddOutput(out);
    m.Write(ManifestPath(out));
    for (const auto &p : r.points)
      if (p.failed) os << "lambda " << p.lambda_beam << "/" << p.lambda_nbest << " failed: "
                       << p.error << "\n";
    if (r.argmin) {
      const auto &b = r.points[*r.argmin];
      os << "best: lambda_beam " << FormatDouble(b.lambda_beam) << ", lambda_nbest "
         << FormatDouble(b.lambda_nbest) << ", WER " << b.wer.ToString() << "\n";
    } else {
      os << "every grid point failed\n";
    }
    return kExitOk;
  }
};

struct ScoreCmd {
  std::string task, ref, hyp, out;

  void Add(CLI::App *app) {
    app->add_option("--task", task, "Task directory with reference words");
    app->add_option("--ref", ref, "Reference text: id word word ... per line");
    app->add_option("--hyp", hyp, "Decode JSONL")->required();
    app->add_option("--out", out, "Output JSON")->required();
  }

  int Run(const CLI::App &app, std::ostream &os) const {
    RunManifest m("score");
    m.config() = EchoOptions(app);
    if (task.empty() == ref.empty()) throw ConfigError("give exactly one of --task, --ref");
    std::vector<std::pair<std::string, std::vector<std::string>>> refs;
    if (!task.empty()) {
      m.AddInput(task);
      for (const auto &u : ReadSynthTask(task).utterances) refs.emplace_back(u.id, u.words);
    } else {
      m.AddInput(ref);
      std::istringstream is(ReadFileToString(ref));
      for (std::string line; std::getline(is, line);) {
        auto f = SplitFields(line);
        if (f.empty()) continue;
        refs.emplace_back(f[0], std::vector<std::string>(f.begin() + 1, f.end()));
      }
    }
    m.AddInput(hyp);
    std::map<std::string, std::vector<std::string>> hyps;
    {
      std::istringstream is(ReadFileToString(hyp));
      std::size_t lineno = 0;
      for (std::string line; std::getline(is, line);) {
        ++lineno;
        if (Trim(line).empty()) continue;
        try {
          auto j = nlohmann::json::parse(line);
          hyps[j.at("utt").get<std::string>()] = SplitFields(j.at("words").get<std::string>());
        } catch (const nlohmann::json::exception &e) {
          throw ParseError(std::string(hyp) + ": " + e.what(), lineno);
        }
      }
    }
    if (refs.empty()) throw Error("no reference utterances");
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs;
    int missing = 0;
    for (const auto &[id, words] : refs) {
      auto it = hyps.find(id);
      if (it == hyps.end()) ++missing;
      pairs.emplace_back(words, it == hyps.end() ? std::vector<std::string>{} : it->second);
    }
    auto w = CorpusWer(pairs);
    nlohmann::ordered_json j;
    j["wer"] = w.Wer();
    j["deletions"] = w.deletions;
    j["insertions"] = w.insertions;
    j["substitutions"] = w.substitutions;
    j["ref_words"] = w.ref_words;
    j["utterances"] = pairs.size();
    j["missing"] = missing;
    {
      auto f = OpenOut(out);
      f << j.dump(2) << '\n';
    }
    m.AddOutput(out);
    m.Write(ManifestPath(out));
    os << "WER " << w.ToString() << " over " << pairs.size() << " utterances";
    if (missing) os << " (" << missing << " without a hypothesis)";
    os << "\n";
    return kExitOk;
  }
};

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"phonefuse: phoneme decoding with lexicon and LM fusion"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);

  CompileLexiconCmd compile;
  TrainLmCmd train_lm;
  SynthCmd synth;
  TrainScorerCmd train_scorer;
  DecodeCmd decode;
  SweepCmd sweep;
  ScoreCmd score;
  auto *c_compile = app.add_subcommand("compile-lexicon", "Compile a lexicon into L");
  auto *c_train_lm = app.add_subcommand("train-lm", "Train an n-gram LM");
  auto *c_synth = app.add_subcommand("synth", "Generate a synthetic task");
  auto *c_train_scorer = app.add_subcommand("train-scorer", "Train the toy attention model");
  auto *c_decode = app.add_subcommand("decode", "Decode a task");
  auto *c_sweep = app.add_subcommand("sweep", "Sweep the LM weight");
  auto *c_score = app.add_subcommand("score", "Score decodes against references");
  compile.Add(c_compile);
  train_lm.Add(c_train_lm);
  synth.Add(c_synth);
  train_scorer.Add(c_train_scorer);
  decode.Add(c_decode);
  sweep.Add(c_sweep);
  score.Add(c_score);

  std::vector<std::string> argv_store{"phonefuse"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char *> argv;
  for (const auto &a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (c_compile->parsed()) return compile.Run(*c_compile, out);
    if (c_train_lm->parsed()) return train_lm.Run(*c_train_lm, out);
    if (c_synth->parsed()) return synth.Run(*c_synth, out);
    if (c_train_scorer->parsed()) return train_scorer.Run(*c_train_scorer, out);
    if (c_decode->parsed()) return decode.Run(*c_decode, out);
    if (c_sweep->parsed()) return sweep.Run(*c_sweep, out);
    if (c_score->parsed()) return score.Run(*c_score, out);
  } catch (const ConfigError &e) {
    err << "phonefuse: configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "phonefuse: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace phonefuse
