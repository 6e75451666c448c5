// src/lm/ngram.h

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

#ifndef PHONEFUSE_LM_NGRAM_H_
#define PHONEFUSE_LM_NGRAM_H_

#include <iosfwd>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fst/weighted-fst.h"

namespace phonefuse {

enum class Smoothing { kMle, kAbsoluteDiscount };

std::string_view SmoothingName(Smoothing s);
Smoothing ParseSmoothing(std::string_view name);  // "mle" | "absdisc"

struct NGramTrainOptions {
  int order = 2;
  Smoothing smoothing = Smoothing::kAbsoluteDiscount;
  double discount = 0.4;
  // Replace corpus singletons with <unk> before counting.
  bool use_unk = false;
};

/// Backoff n-gram model over words.  Log probabilities are natural logs.
///
/// The vocabulary table is canonical: <eps>, <s>, </s>, then <unk> if the
/// model has it, then the remaining words in byte order.  It doubles as the
/// symbol table of the exported G acceptor.
class NGramModel {
 public:
  using NGram = std::vector<Label>;

  /// Validates that every n-gram's context and every backoff context is
  /// itself present (or is the empty context).
  NGramModel(int order, SymbolTablePtr vocab, std::map<NGram, double> log_probs,
             std::map<NGram, double> log_backoffs);

  int order() const { return order_; }
  const SymbolTable &vocab() const { return *vocab_; }
  const SymbolTablePtr &vocab_ptr() const { return vocab_; }
  Label bos() const { return bos_; }
  Label eos() const { return eos_; }
  /// kEpsilon if the model has no <unk>.
  Label unk() const { return unk_; }

  const std::map<NGram, double> &log_probs() const { return log_probs_; }
  const std::map<NGram, double> &log_backoffs() const { return log_backoffs_; }

  /// Backoff-resolved ln P(word | context).  Only the last order-1 context
  /// words are used.  -inf if the word is unreachable.
  double LogProb(std::span<const Label> context, Label word) const;

  /// Sum of ln P over the words and the closing </s>, starting from <s>.
  /// Unknown words map to <unk> when available, otherwise the score is -inf.
  double ScoreSequence(const std::vector<std::string> &words) const;

  /// Words that can be predicted (everything but <eps> and <s>), </s>
  /// included.
  std::vector<Label> PredictableLabels() const;

 private:
  int order_;
  SymbolTablePtr vocab_;
  Label bos_, eos_, unk_ = kEpsilon;
  std::map<NGram, double> log_probs_;
  std::map<NGram, double> log_backoffs_;
};

/// Absolute discounting interpolates every order with the next lower one and
/// the unigram level with the uniform distribution over predictable words;
/// MLE keeps raw relative frequencies and zero backoff mass.  Throws Error on
/// an empty corpus or an order outside 1..4.
NGramModel TrainNGram(const std::vector<std::vector<std::string>> &corpus,
                      const NGramTrainOptions &opts);

/// ARPA subset: \data\, "ngram N=count", \N-grams: sections with
/// log10prob<TAB>words[<TAB>log10backoff], \end\.  log10 of zero is
/// written as -99 and read back as -inf.
NGramModel ReadArpa(std::istream &is);
NGramModel ReadArpa(const std::string &path);
void WriteArpa(const NGramModel &lm, std::ostream &os);
void WriteArpa(const NGramModel &lm, const std::string &path);

/// G acceptor with one state per context, word arcs weighted -ln P, epsilon
/// backoff arcs weighted -ln backoff and final weights -ln P(</s> | h).
/// Because backoff is an alternative path under (min, +), a string's weight
/// can undercut -ScoreSequence when a backoff path reaches a cheaper
/// higher-order state; for bigram models the two agree.
WeightedFst LmToFst(const NGramModel &lm);

/// Ancestral sample of one sentence (without <s>/</s>), at most `max_words`
/// long.
std::vector<std::string> SampleSentence(const NGramModel &lm, std::mt19937_64 &rng,
                                        int max_words);

}  // namespace phonefuse

#endif  // PHONEFUSE_LM_NGRAM_H_
