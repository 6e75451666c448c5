// tests/eval-test.cc

// Copyright 2026  The phonefuse Authors

// See ../COPYING for clarification regarding multiple authors
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

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "doctest.h"

#include "base/error.h"
#include "base/text-utils.h"
#include "eval/sweep.h"
#include "eval/synth.h"
#include "eval/wer.h"
#include "task-fixtures.h"
#include "wer-fixtures.h"

namespace phonefuse {
namespace {

using testing::BruteAlign;
using testing::LoadToyData;
using testing::WerCases;

WerBreakdown W(const char *ref, const char *hyp) {
  return AlignWer(SplitFields(ref), SplitFields(hyp));
}

std::vector<std::string> RandomWords(std::mt19937 &rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), sym(0, 2);
  std::vector<std::string> out(len(rng));
  for (auto &w : out) w = std::string(1, static_cast<char>('a' + sym(rng)));
  return out;
}

std::string TempDir(const std::string &name) {
  auto p = std::filesystem::temp_directory_path() / ("phonefuse-eval-" + name);
  std::filesystem::remove_all(p);
  return p.string();
}

std::map<std::string, std::string> DirContents(const std::string &dir) {
  std::map<std::string, std::string> out;
  for (const auto &e : std::filesystem::directory_iterator(dir))
    out[e.path().filename().string()] = ReadFileToString(e.path().string());
  return out;
}

// Five words, no homophones.
struct PlainData {
  SymbolTablePtr phones = std::make_shared<SymbolTable>(
      std::vector<std::string>{"<eow>", "k", "ae", "t", "s", "dh", "ah", "m", "aa", "n"});
  PronLexicon lexicon = ParseLexicon(
      "cat\tk ae t\nsat\ts ae t\nthe\tdh ah\non\taa n\nmat\tm ae t\n", phones);
  std::shared_ptr<const NGramModel> lm = std::make_shared<NGramModel>(TrainNGram(
      {SplitFields("the cat sat on the mat"), SplitFields("the cat sat"), SplitFields("the mat")},
      NGramTrainOptions{}));
};

TEST_CASE("align_wer: worked examples") {
  CHECK(W("the cat sat", "the cat sat") == WerBreakdown{0, 0, 0, 3});
  auto one = W("the cat sat", "the cat");
  CHECK(one == WerBreakdown{1, 0, 0, 3});
  CHECK(one.Wer() == doctest::Approx(1.0 / 3.0));
  auto mixed = W("a b c", "a x c d");
  CHECK(mixed == WerBreakdown{0, 1, 1, 3});
  CHECK(mixed.Wer() == 2.0 / 3.0);
  CHECK(W("", "").Wer() == 0.0);
  CHECK(std::isinf(W("", "a").Wer()));
  CHECK(mixed.ToString() == "66.67 (0/1/1)");
}

TEST_CASE("align_wer: fixture table matches the hand counts and the enumerator") {
  for (const auto &c : WerCases()) {
    CAPTURE(c.ref);
    CAPTURE(c.hyp);
    auto ref = SplitFields(c.ref), hyp = SplitFields(c.hyp);
    auto w = AlignWer(ref, hyp);
    CHECK(w.deletions == c.del);
    CHECK(w.insertions == c.ins);
    CHECK(w.substitutions == c.sub);
    CHECK(w.ref_words == static_cast<long>(ref.size()));
    auto brute = BruteAlign(ref, hyp);
    REQUIRE(brute.size() == 1);
    CHECK(*brute.begin() == std::make_tuple(c.del, c.ins, c.sub));
  }
}

TEST_CASE("align_wer: random sequences agree with the enumerator") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = RandomWords(rng, 5), b = RandomWords(rng, 5);
    auto w = AlignWer(a, b);
    auto brute = BruteAlign(a, b);
    REQUIRE(brute.size() == 1);
    CHECK(*brute.begin() == std::make_tuple(w.deletions, w.insertions, w.substitutions));
  }
}

TEST_CASE("align_wer: metric properties") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = RandomWords(rng, 6), b = RandomWords(rng, 6), c = RandomWords(rng, 6);
    CHECK(AlignWer(a, a).Errors() == 0);
    auto ab = AlignWer(a, b), ba = AlignWer(b, a);
    CHECK(ab.Errors() == ba.Errors());
    CHECK(ab.deletions == ba.insertions);
    CHECK(ab.insertions == ba.deletions);
    CHECK(AlignWer(a, c).Errors() <= ab.Errors() + AlignWer(b, c).Errors());
  }
}

TEST_CASE("corpus_wer: counts are summed before dividing") {
  auto p = std::make_pair(SplitFields("the cat sat"), SplitFields("the cat"));
  CHECK(CorpusWer({p, p}).Wer() == doctest::Approx(1.0 / 3.0));
  auto perfect = std::make_pair(SplitFields("a b c"), SplitFields("a b c"));
  auto wrong = std::make_pair(SplitFields("a b c"), SplitFields("x y z"));
  CHECK(CorpusWer({perfect, wrong}).Wer() == 0.5);
  auto empty = std::make_pair(SplitFields("a b c"), std::vector<std::string>{});
  auto all_del = CorpusWer({empty, empty});
  CHECK(all_del == WerBreakdown{6, 0, 0, 6});
  CHECK(all_del.Wer() == 1.0);
  CHECK(CorpusWer({wrong}) == AlignWer(wrong.first, wrong.second));
  CHECK_THROWS_AS(CorpusWer({}), Error);

  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> fixtures;
  for (const auto &c : WerCases()) fixtures.emplace_back(SplitFields(c.ref), SplitFields(c.hyp));
  auto total = CorpusWer(fixtures);
  CHECK(total == WerBreakdown{11, 7, 14, 55});
  CHECK(total.Wer() == 32.0 / 55.0);
}

TEST_CASE("synth: shape, references and vocabulary") {
  auto data = LoadToyData();
  SynthOptions so;
  so.count = 20;
  so.noise = 0.2;
  auto task = SynthCorpus(3, data.lexicon, data.lm, so);
  REQUIRE(task.utterances.size() == 20);
  CHECK(task.alphabet->Symbol(kEosLabel) == kEosSymbol);
  for (const auto &u : task.utterances) {
    CHECK(!u.words.empty());
    for (const auto &w : u.words) CHECK(task.lexicon.Contains(w));
    REQUIRE(!u.reference.empty());
    CHECK(u.reference.back() == kEosLabel);
    CHECK(u.features.rows() == static_cast<Eigen::Index>(u.reference.size()));
    CHECK(u.features.cols() == static_cast<Eigen::Index>(task.alphabet->size()));
    long eows = std::count(u.reference.begin(), u.reference.end(),
                           task.alphabet->FindOrThrow(kEowSymbol));
    CHECK(eows == static_cast<long>(u.words.size()));
  }

  so.count = 0;
  CHECK(SynthCorpus(3, data.lexicon, data.lm, so).utterances.empty());
}

TEST_CASE("synth: the same seed gives identical task bytes") {
  auto data = LoadToyData();
  SynthOptions so;
  so.count = 10;
  so.noise = 0.2;
  auto a = TempDir("a"), b = TempDir("b"), c = TempDir("c");
  WriteSynthTask(SynthCorpus(9, data.lexicon, data.lm, so), a);
  WriteSynthTask(SynthCorpus(9, data.lexicon, data.lm, so), b);
  WriteSynthTask(SynthCorpus(10, data.lexicon, data.lm, so), c);
  CHECK(DirContents(a) == DirContents(b));
  CHECK(DirContents(a).at("utterances.jsonl") != DirContents(c).at("utterances.jsonl"));
}

TEST_CASE("synth: task directory round trip") {
  auto data = LoadToyData();
  SynthOptions so;
  so.count = 5;
  so.noise = 0.2;
  auto task = SynthCorpus(4, data.lexicon, data.lm, so);
  task.lm_corpus = data.corpus;
  auto dir = TempDir("rt");
  WriteSynthTask(task, dir);
  auto back = ReadSynthTask(dir);
  CHECK(*back.alphabet == *task.alphabet);
  CHECK(back.noise == task.noise);
  CHECK(back.seed == 4);
  CHECK(back.lm_corpus == data.corpus);
  CHECK(back.lexicon.entries == task.lexicon.entries);
  REQUIRE(back.utterances.size() == task.utterances.size());
  for (std::size_t i = 0; i < back.utterances.size(); ++i) {
    CHECK(back.utterances[i].id == task.utterances[i].id);
    CHECK(back.utterances[i].words == task.utterances[i].words);
    CHECK(back.utterances[i].reference == task.utterances[i].reference);
    CHECK(back.utterances[i].features == task.utterances[i].features);
  }
  auto again = TempDir("rt2");
  WriteSynthTask(back, again);
  CHECK(DirContents(dir) == DirContents(again));
}

TEST_CASE("synth: errors") {
  auto data = LoadToyData();
  SynthOptions so;
  so.noise = 1.0;
  CHECK_THROWS_AS(SynthCorpus(1, data.lexicon, data.lm, so), ConfigError);
  so.noise = -0.1;
  CHECK_THROWS_AS(SynthCorpus(1, data.lexicon, data.lm, so), ConfigError);
  so.noise = 0.0;
  PlainData plain;
  // The toy LM has words the plain lexicon cannot pronounce.
  CHECK_THROWS_AS(SynthCorpus(1, plain.lexicon, data.lm, so), ConfigError);
}

TEST_CASE("synth: grapheme rendering") {
  PlainData plain;
  SynthOptions so;
  so.count = 5;
  so.units = OutputUnits::kGrapheme;
  auto task = SynthCorpus(2, plain.lexicon, plain.lm, so);
  CHECK(task.alphabet->Contains(kSpaceSymbol));
  CHECK(!task.alphabet->Contains(kEowSymbol));
  for (const auto &u : task.utterances) {
    std::string text;
    for (Label l : u.reference) {
      const auto &s = task.alphabet->Symbol(l);
      if (l == kEosLabel) break;
      text += s == kSpaceSymbol ? " " : s;
    }
    CHECK(text == Join(u.words));
  }
}

TEST_CASE("emitter: rows follow the features") {
  PlainData plain;
  SynthOptions so;
  so.count = 5;
  auto task = SynthCorpus(6, plain.lexicon, plain.lm, so);
  auto em = BuildEmitter(task.alphabet, task.utterances, EmitterOptions{});
  for (const auto &u : task.utterances) {
    const auto &table = em->TableFor(u.id);
    REQUIRE(table.size() == u.reference.size());
    for (std::size_t t = 0; t < table.size(); ++t) {
      auto best = std::max_element(table[t].begin(), table[t].end()) - table[t].begin();
      CHECK(best == u.reference[t]);
      CHECK(table[t][0] == 0.0);
      CHECK(table[t][kSosLabel] == 0.0);
    }
  }

  EmitterOptions eo;
  eo.eow_prob = 0.01;
  auto eow_em = BuildEmitter(task.alphabet, task.utterances, eo);
  Label eow = task.alphabet->FindOrThrow(kEowSymbol);
  CHECK(eow_em->non_advancing() == eow);
  for (const auto &row : eow_em->TableFor(task.utterances[0].id)) CHECK(row[eow] == 0.01);
  eo.eow_prob = 1.5;
  CHECK_THROWS_AS(BuildEmitter(task.alphabet, task.utterances, eo), ConfigError);
}

TEST_CASE("closed loop: noise 0 decodes every reference for every strategy") {
  PlainData plain;
  SynthOptions so;
  so.count = 30;
  auto task = SynthCorpus(8, plain.lexicon, plain.lm, so);
  auto em = BuildEmitter(task.alphabet, task.utterances, EmitterOptions{});
  DecoderResources res(plain.lexicon, LmToFst(*plain.lm));
  for (Fusion f : {Fusion::kNone, Fusion::kNBest, Fusion::kBeam, Fusion::kBoth}) {
    CAPTURE(FusionName(f));
    DecodeConfig c;
    c.fusion = f;
    c.lm_weight_beam = f == Fusion::kNBest ? 0.0 : 0.05;
    c.lm_weight_nbest = 0.05;
    auto results = DecodeAll(*em, res, task.utterances, c);
    CHECK(ScoreResults(task.utterances, results).Errors() == 0);
  }
}

TEST_CASE("sweep: noise 0 gives a flat zero curve") {
  PlainData plain;
  SynthOptions so;
  so.count = 10;
  auto task = SynthCorpus(8, plain.lexicon, plain.lm, so);
  auto em = BuildEmitter(task.alphabet, task.utterances, EmitterOptions{});
  DecoderResources res(plain.lexicon, LmToFst(*plain.lm));
  auto grid = MakeSweepGrid(SweepMode::kNBest, {0.0, 0.1, 0.2});
  auto r = SweepLmWeight(*em, res, task.utterances, DecodeConfig{}, grid, SweepMode::kNBest);
  REQUIRE(r.points.size() == 3);
  for (const auto &p : r.points) {
    CHECK(!p.failed);
    CHECK(p.wer.Errors() == 0);
  }
  CHECK(r.argmin == 0u);
}

TEST_CASE("sweep: grids") {
  auto g = LinearGrid(0.0, 0.3, 0.02);
  REQUIRE(g.size() == 16);
  CHECK(g[3] == 0.06);
  CHECK(g.back() == 0.3);
  auto split = MakeSweepGrid(SweepMode::kSplit, LinearGrid(0.0, 0.1, 0.02), 0.1);
  REQUIRE(split.size() == 6);
  CHECK(split.front() == std::make_pair(0.0, 0.1));
  CHECK(split.back() == std::make_pair(0.1, 0.0));
  CHECK(MakeSweepGrid(SweepMode::kBeam, {0.5}).front() == std::make_pair(0.5, 0.0));
  CHECK_THROWS_AS(LinearGrid(0.0, 1.0, 0.0), ConfigError);
  CHECK(ParseSweepMode("split") == SweepMode::kSplit);
  CHECK_THROWS_AS(ParseSweepMode("both"), ConfigError);
}

TEST_CASE("sweep: split mode, CSV and failures") {
  auto data = LoadToyData();
  SynthOptions so;
  so.count = 20;
  so.noise = 0.2;
  auto task = SynthCorpus(12, data.lexicon, data.lm, so);
  auto em = BuildEmitter(task.alphabet, task.utterances, EmitterOptions{});
  DecoderResources res(data.lexicon, LmToFst(*data.lm));
  auto grid = MakeSweepGrid(SweepMode::kSplit, LinearGrid(0.0, 0.1, 0.02), 0.1);
  auto r = SweepLmWeight(*em, res, task.utterances, DecodeConfig{}, grid, SweepMode::kSplit);
  REQUIRE(r.points.size() == grid.size());
  std::ostringstream csv;
  WriteSweepCsv(r, csv);
  std::vector<std::string> lines;
  std::istringstream is(csv.str());
  for (std::string line; std::getline(is, line);) lines.push_back(line);
  REQUIRE(lines.size() == grid.size() + 1);
  CHECK(lines[0] == "lambda_beam,lambda_nbest,wer,del,ins,sub");
  CHECK(lines[1].rfind("0,0.1,", 0) == 0);
  for (const auto &p : r.points) {
    CHECK(!p.failed);
    CHECK(p.wer.ref_words > 0);
  }

  auto again = SweepLmWeight(*em, res, task.utterances, DecodeConfig{}, grid, SweepMode::kSplit);
  std::ostringstream csv2;
  WriteSweepCsv(again, csv2);
  CHECK(csv.str() == csv2.str());

  CHECK_THROWS_AS(SweepLmWeight(*em, res, task.utterances, DecodeConfig{}, {}, SweepMode::kNBest),
                  ConfigError);
  CHECK_THROWS_AS(SweepLmWeight(*em, res, task.utterances, DecodeConfig{},
                                {{0.0, 0.1}, {0.05, 0.1}}, SweepMode::kSplit),
                  ConfigError);

  // Without an LM every fused point fails; the sweep still completes.
  DecoderResources no_lm(data.lexicon);
  auto failed = SweepLmWeight(*em, no_lm, task.utterances, DecodeConfig{},
                              MakeSweepGrid(SweepMode::kBeam, {0.0, 0.1}), SweepMode::kBeam);
  REQUIRE(failed.points.size() == 2);
  CHECK(failed.points[0].failed);
  CHECK(!failed.argmin);
  std::ostringstream csv3;
  WriteSweepCsv(failed, csv3);
  CHECK(csv3.str() == "lambda_beam,lambda_nbest,wer,del,ins,sub\n0,0,nan,nan,nan,nan\n"
                      "0.1,0,nan,nan,nan,nan\n");
}

TEST_CASE("sweep: the LM helps on the noisy homophone task") {
  auto data = LoadToyData();
  SynthOptions so;
  so.count = 60;
  so.noise = 0.2;
  auto task = SynthCorpus(21, data.lexicon, data.lm, so);
  auto em = BuildEmitter(task.alphabet, task.utterances, EmitterOptions{});
  DecoderResources res(data.lexicon, LmToFst(*data.lm));
  auto r = SweepLmWeight(*em, res, task.utterances, DecodeConfig{},
                         MakeSweepGrid(SweepMode::kNBest, {0.0, 0.02, 0.1}), SweepMode::kNBest);
  REQUIRE(r.argmin);
  CHECK(r.points[*r.argmin].wer.Wer() < r.points[0].wer.Wer());
}

}  // namespace
}  // namespace phonefuse
