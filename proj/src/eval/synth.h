// src/eval/synth.h

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

#ifndef PHONEFUSE_EVAL_SYNTH_H_
#define PHONEFUSE_EVAL_SYNTH_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "decoder/decoder.h"
#include "lexicon/lexicon.h"
#include "lm/ngram.h"
#include "scorer/scorer.h"

namespace phonefuse {

struct SynthOptions {
  int count = 100;
  /// Probability that a phone (or letter) frame is blended with a random
  /// other unit.
  double noise = 0.0;
  /// Share of the confusing unit in a blended frame; above 0.5 it wins.
  double confusion_weight = 0.4;
  /// Standard deviation of the Gaussian noise added to every feature.
  double feature_noise = 0.1;
  OutputUnits units = OutputUnits::kPhoneme;
  /// Phoneme units only: render an <eow> token after every word.
  bool eow_tokens = true;
  int max_words = 12;

  void Check() const;
};

/// A seeded desk-scale recognition task.  Each utterance has one feature
/// frame per reference token: the token's one-hot vector over the output
/// alphabet, possibly blended with a confusing unit, plus Gaussian noise.
struct SynthTask {
  PronLexicon lexicon;
  std::shared_ptr<const NGramModel> lm;
  /// Sentences the LM was trained on, if known.
  std::vector<std::vector<std::string>> lm_corpus;
  SymbolTablePtr alphabet;
  OutputUnits units = OutputUnits::kPhoneme;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::vector<Utterance> utterances;
};

/// Samples `opts.count` non-empty sentences from `lm` and renders them with
/// a uniformly chosen pronunciation per word.  Sentences containing <unk> are
/// resampled.  Throws ConfigError when an LM word has no pronunciation.
SynthTask SynthCorpus(std::uint64_t seed, const PronLexicon &lexicon,
                      std::shared_ptr<const NGramModel> lm, const SynthOptions &opts);

/// Output units of a task: the lexicon phones in table order, or the sorted
/// letters of the lexicon words followed by <space>.
std::vector<std::string> SynthUnits(const PronLexicon &lexicon, OutputUnits units);

/// Directory layout: phones.txt, lexicon.txt, lm.arpa, corpus.txt,
/// units.txt, task.json and utterances.jsonl.
void WriteSynthTask(const SynthTask &task, const std::string &dir);
SynthTask ReadSynthTask(const std::string &dir);

struct EmitterOptions {
  /// Row t is softmax(sharpness * x_t) over the emittable symbols.
  double sharpness = 8.0;
  /// When set, <eow> gets this fixed probability in every row and does not
  /// advance the table.
  std::optional<double> eow_prob;
};

/// A TableScorer with one table per utterance, derived from its features.
std::unique_ptr<TableScorer> BuildEmitter(const SymbolTablePtr &alphabet,
                                          const std::vector<Utterance> &utts,
                                          const EmitterOptions &opts);

}  // namespace phonefuse

#endif  // PHONEFUSE_EVAL_SYNTH_H_
