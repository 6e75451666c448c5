// src/eval/synth.cc

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

#include "eval/synth.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "base/error.h"
#include "base/text-utils.h"
#include "json.hpp"

namespace phonefuse {

namespace {

constexpr int kMaxResample = 1000;

std::ofstream OpenOut(const std::filesystem::path &p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error("cannot write " + p.string());
  return os;
}

std::vector<std::string> RenderWords(const std::vector<std::string> &words,
                                     const PronLexicon &lex, OutputUnits units, bool eow,
                                     std::mt19937_64 &rng) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (units == OutputUnits::kGrapheme) {
      if (i > 0) out.emplace_back(kSpaceSymbol);
      for (char c : words[i]) out.emplace_back(1, c);
      continue;
    }
    const auto &prons = lex.entries.at(words[i]);
    std::uniform_int_distribution<std::size_t> pick(0, prons.size() - 1);
    for (Label p : prons[pick(rng)]) out.push_back(lex.phones->Symbol(p));
    if (eow) out.emplace_back(kEowSymbol);
  }
  out.emplace_back(kEosSymbol);
  return out;
}

}  // namespace

void SynthOptions::Check() const {
  if (count < 0) throw ConfigError("synth: count must be >= 0");
  if (!(noise >= 0.0 && noise < 1.0)) throw ConfigError("synth: noise must be in [0, 1)");
  if (!(confusion_weight >= 0.0 && confusion_weight <= 1.0))
    throw ConfigError("synth: confusion weight must be in [0, 1]");
  if (!(feature_noise >= 0.0)) throw ConfigError("synth: feature noise must be >= 0");
  if (max_words < 1) throw ConfigError("synth: max words must be >= 1");
}

std::vector<std::string> SynthUnits(const PronLexicon &lexicon, OutputUnits units) {
  if (units == OutputUnits::kPhoneme) {
    const auto &syms = lexicon.phones->symbols();
    return {syms.begin() + 1, syms.end()};
  }
  std::set<std::string> letters;
  for (const auto &[word, prons] : lexicon.entries)
    for (char c : word) letters.emplace(1, c);
  std::vector<std::string> out(letters.begin(), letters.end());
  out.emplace_back(kSpaceSymbol);
  return out;
}

SynthTask SynthCorpus(std::uint64_t seed, const PronLexicon &lexicon,
                      std::shared_ptr<const NGramModel> lm, const SynthOptions &opts) {
  opts.Check();
  if (!lm) throw ConfigError("synth: no language model");
  const SymbolTable &vocab = lm->vocab();
  for (Label w : lm->PredictableLabels()) {
    if (w == lm->eos() || w == lm->unk()) continue;
    if (!lexicon.Contains(vocab.Symbol(w)))
      throw ConfigError("synth: LM word '" + vocab.Symbol(w) + "' has no pronunciation");
  }
  const bool eow = opts.units == OutputUnits::kPhoneme && opts.eow_tokens;
  if (eow && !lexicon.phones->Contains(kEowSymbol))
    throw ConfigError("synth: phone table has no <eow>");

  SynthTask task;
  task.lexicon = lexicon;
  task.lm = lm;
  task.units = opts.units;
  task.noise = opts.noise;
  task.seed = seed;
  task.alphabet = MakeOutputAlphabet(SynthUnits(lexicon, opts.units));
  const SymbolTable &alpha = *task.alphabet;

  // Units that may be confused with each other: everything but separators.
  std::vector<Label> content;
  for (Label l = kEosLabel + 1; l < static_cast<Label>(alpha.size()); ++l) {
    const auto &s = alpha.Symbol(l);
    if (s != kEowSymbol && s != kSpaceSymbol) content.push_back(l);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int dim = static_cast<int>(alpha.size());
  for (int n = 0; n < opts.count; ++n) {
    std::vector<std::string> words;
    for (int tries = 0;; ++tries) {
      if (tries == kMaxResample) throw ConfigError("synth: LM yields no usable sentences");
      words = SampleSentence(*lm, rng, opts.max_words);
      if (words.empty()) continue;
      if (std::none_of(words.begin(), words.end(),
                       [&](const std::string &w) { return !lexicon.Contains(w); }))
        break;
    }
    auto tokens = RenderWords(words, lexicon, opts.units, eow, rng);

    Utterance u;
    char id[32];
    std::snprintf(id, sizeof(id), "utt%04d", n + 1);
    u.id = id;
    u.words = words;
    u.features = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(tokens.size()), dim);
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      Label y = alpha.FindOrThrow(tokens[t]);
      u.reference.push_back(y);
      auto row = u.features.row(static_cast<Eigen::Index>(t));
      row(y) = 1.0;
      bool confusable = content.size() > 1 &&
                        std::find(content.begin(), content.end(), y) != content.end();
      if (confusable && unit(rng) < opts.noise) {
        std::uniform_int_distribution<std::size_t> pick(0, content.size() - 2);
        std::size_t k = pick(rng);
        Label z = content[k];
        if (z == y) z = content.back();
        row(y) = 1.0 - opts.confusion_weight;
        row(z) = opts.confusion_weight;
      }
      if (opts.feature_noise > 0.0)
        for (int j = 0; j < dim; ++j) row(j) += opts.feature_noise * gauss(rng);
    }
    task.utterances.push_back(std::move(u));
  }
  return task;
}

void WriteSynthTask(const SynthTask &task, const std::string &dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  fs::path d(dir);
  task.lexicon.phones->WriteText((d / "phones.txt").string());
  {
    auto os = OpenOut(d / "lexicon.txt");
    WriteLexicon(task.lexicon, os);
  }
  if (task.lm) WriteArpa(*task.lm, (d / "lm.arpa").string());
  {
    auto os = OpenOut(d / "corpus.txt");
    for (const auto &s : task.lm_corpus) os << Join(s) << '\n';
  }
  {
    auto os = OpenOut(d / "units.txt");
    for (std::size_t l = kEosLabel + 1; l < task.alphabet->size(); ++l)
      os << task.alphabet->Symbol(static_cast<Label>(l)) << '\n';
  }
  {
    nlohmann::ordered_json j;
    j["units"] = OutputUnitsName(task.units);
    j["noise"] = task.noise;
    j["seed"] = task.seed;
    j["count"] = task.utterances.size();
    auto os = OpenOut(d / "task.json");
    os << j.dump(2) << '\n';
  }
  auto os = OpenOut(d / "utterances.jsonl");
  for (const auto &u : task.utterances) {
    nlohmann::ordered_json j;
    j["id"] = u.id;
    j["words"] = u.words;
    std::vector<std::string> ref;
    for (Label l : u.reference) ref.push_back(task.alphabet->Symbol(l));
    j["reference"] = ref;
    auto &feats = j["features"] = nlohmann::ordered_json::array();
    for (Eigen::Index t = 0; t < u.features.rows(); ++t) {
      std::vector<double> row(u.features.cols());
      for (Eigen::Index k = 0; k < u.features.cols(); ++k) row[k] = u.features(t, k);
      feats.push_back(row);
    }
    os << j.dump() << '\n';
  }
}

SynthTask ReadSynthTask(const std::string &dir) {
  namespace fs = std::filesystem;
  fs::path d(dir);
  SynthTask task;
  auto phones = std::make_shared<SymbolTable>(SymbolTable::ReadText((d / "phones.txt").string()));
  task.lexicon = ReadLexicon((d / "lexicon.txt").string(), phones);
  if (fs::exists(d / "lm.arpa"))
    task.lm = std::make_shared<NGramModel>(ReadArpa((d / "lm.arpa").string()));
  {
    std::istringstream is(ReadFileToString((d / "corpus.txt").string()));
    std::string line;
    while (std::getline(is, line))
      if (!Trim(line).empty()) task.lm_corpus.push_back(SplitFields(line));
  }
  {
    std::istringstream is(ReadFileToString((d / "units.txt").string()));
    std::vector<std::string> units;
    std::string line;
    while (std::getline(is, line))
      if (!Trim(line).empty()) units.emplace_back(Trim(line));
    task.alphabet = MakeOutputAlphabet(units);
  }
  try {
    auto meta = nlohmann::json::parse(ReadFileToString((d / "task.json").string()));
    task.units = ParseOutputUnits(meta.at("units").get<std::string>());
    task.noise = meta.at("noise").get<double>();
    task.seed = meta.at("seed").get<std::uint64_t>();

    std::istringstream is(ReadFileToString((d / "utterances.jsonl").string()));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      if (Trim(line).empty()) continue;
      auto j = nlohmann::json::parse(line);
      Utterance u;
      u.id = j.at("id").get<std::string>();
      u.words = j.at("words").get<std::vector<std::string>>();
      for (const auto &s : j.at("reference")) {
        auto l = task.alphabet->Find(s.get<std::string>());
        if (!l) throw ParseError("unknown unit '" + s.get<std::string>() + "'", lineno);
        u.reference.push_back(*l);
      }
      auto rows = j.at("features").get<std::vector<std::vector<double>>>();
      const auto dim = static_cast<Eigen::Index>(task.alphabet->size());
      u.features.resize(static_cast<Eigen::Index>(rows.size()), dim);
      for (std::size_t t = 0; t < rows.size(); ++t) {
        if (static_cast<Eigen::Index>(rows[t].size()) != dim)
          throw ParseError("feature row has wrong dimension", lineno);
        for (Eigen::Index k = 0; k < dim; ++k) u.features(t, k) = rows[t][k];
      }
      task.utterances.push_back(std::move(u));
    }
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("task ") + dir + ": " + e.what());
  }
  return task;
}

std::unique_ptr<TableScorer> BuildEmitter(const SymbolTablePtr &alphabet,
                                          const std::vector<Utterance> &utts,
                                          const EmitterOptions &opts) {
  CheckOutputAlphabet(*alphabet);
  std::optional<Label> eow;
  if (opts.eow_prob) {
    if (!(*opts.eow_prob > 0.0 && *opts.eow_prob < 1.0))
      throw ConfigError("emitter: <eow> probability must be in (0, 1)");
    eow = alphabet->Find(kEowSymbol);
    if (!eow) throw ConfigError("emitter: alphabet has no <eow>");
  }
  const auto dim = static_cast<Eigen::Index>(alphabet->size());
  std::map<std::string, TableScorer::Table> tables;
  for (const auto &u : utts) {
    if (u.features.cols() != dim)
      throw ConfigError("emitter: utterance " + u.id + " does not match the alphabet");
    TableScorer::Table table;
    for (Eigen::Index t = 0; t < u.features.rows(); ++t) {
      std::vector<double> row(alphabet->size(), 0.0);
      double mx = -INFINITY;
      for (Eigen::Index k = kEosLabel; k < dim; ++k)
        if (!eow || k != *eow) mx = std::max(mx, opts.sharpness * u.features(t, k));
      double sum = 0.0;
      for (Eigen::Index k = kEosLabel; k < dim; ++k) {
        if (eow && k == *eow) continue;
        row[k] = std::exp(opts.sharpness * u.features(t, k) - mx);
        sum += row[k];
      }
      double scale = eow ? (1.0 - *opts.eow_prob) / sum : 1.0 / sum;
      for (double &p : row) p *= scale;
      if (eow) row[*eow] = *opts.eow_prob;
      table.push_back(std::move(row));
    }
    tables.emplace(u.id, std::move(table));
  }
  return std::make_unique<TableScorer>(alphabet, std::move(tables), eow);
}

}  // namespace phonefuse
