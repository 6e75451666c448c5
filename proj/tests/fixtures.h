// tests/fixtures.h

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

// Shared decoder fixtures.

#ifndef PHONEFUSE_TESTS_FIXTURES_H_
#define PHONEFUSE_TESTS_FIXTURES_H_

#include <string>
#include <vector>

#include "base/text-utils.h"
#include "decoder/decoder.h"
#include "lexicon/lexicon.h"
#include "lm/ngram.h"
#include "scorer/scorer.h"

namespace phonefuse::testing {

// Lexicon {I, eye -> ay; am -> ae m} and a bigram G trained on
// "I am" x3, "eye" x1.
struct HomophoneFixture {
  SymbolTablePtr phones = std::make_shared<SymbolTable>(
      std::vector<std::string>{"<eow>", "ay", "ae", "m"});
  SymbolTablePtr alphabet = MakeOutputAlphabet({"ay", "ae", "m", "<eow>"});
  PronLexicon lexicon = ParseLexicon("I\tay\neye\tay\nam\tae m\n", phones);
  NGramModel lm = TrainNGram({{"I", "am"}, {"I", "am"}, {"I", "am"}, {"eye"}}, NGramTrainOptions{});
  DecoderResources resources{lexicon, LmToFst(lm)};

  // Point masses on a token string such as "ay <eow> <eos>".
  TableScorer PointMass(const std::string &tokens) const {
    TableScorer::Table t;
    for (const auto &s : SplitFields(tokens)) t.push_back(PointMassRow(*alphabet, s));
    return TableScorer(alphabet, {{"", t}});
  }

  // ay, <eow>, then {ae: p_am, <eos>: 1 - p_am}, m, <eow>, <eos>.
  TableScorer Fork(double p_am) const {
    TableScorer::Table t{PointMassRow(*alphabet, "ay"), PointMassRow(*alphabet, "<eow>"),
                         RowFromPairs(*alphabet, {{"ae", p_am}, {"<eos>", 1.0 - p_am}}),
                         PointMassRow(*alphabet, "m"), PointMassRow(*alphabet, "<eow>"),
                         PointMassRow(*alphabet, "<eos>")};
    return TableScorer(alphabet, {{"", t}});
  }
};

inline Utterance EmptyUtterance(const std::string &id = "u") {
  Utterance u;
  u.id = id;
  return u;
}

inline DecodeConfig NBestConfig(double lambda) {
  DecodeConfig c;
  c.fusion = Fusion::kNBest;
  c.lm_weight_nbest = lambda;
  c.eow_mode = EowMode::kRequired;
  return c;
}

}  // namespace phonefuse::testing

#endif  // PHONEFUSE_TESTS_FIXTURES_H_
