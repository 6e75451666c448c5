// tests/task-fixtures.h

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

// The homophone-rich toy task under data/homophones.

#ifndef PHONEFUSE_TESTS_TASK_FIXTURES_H_
#define PHONEFUSE_TESTS_TASK_FIXTURES_H_

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "base/text-utils.h"
#include "lexicon/lexicon.h"
#include "lm/ngram.h"

namespace phonefuse::testing {

struct ToyData {
  PronLexicon lexicon;
  std::vector<std::vector<std::string>> corpus;
  std::shared_ptr<const NGramModel> lm;
};

inline ToyData LoadToyData(const std::string &name = "homophones") {
  const std::string dir = std::string(PHONEFUSE_DATA_DIR) + "/" + name + "/";
  ToyData d;
  auto phones = std::make_shared<SymbolTable>(SymbolTable::ReadText(dir + "phones.txt"));
  d.lexicon = ReadLexicon(dir + "lexicon.txt", phones);
  std::istringstream is(ReadFileToString(dir + "corpus.txt"));
  std::string line;
  while (std::getline(is, line))
    if (!Trim(line).empty()) d.corpus.push_back(SplitFields(line));
  d.lm = std::make_shared<NGramModel>(TrainNGram(d.corpus, NGramTrainOptions{}));
  return d;
}

}  // namespace phonefuse::testing

#endif  // PHONEFUSE_TESTS_TASK_FIXTURES_H_
