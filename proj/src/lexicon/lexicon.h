// src/lexicon/lexicon.h

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

#ifndef PHONEFUSE_LEXICON_LEXICON_H_
#define PHONEFUSE_LEXICON_LEXICON_H_

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fst/weighted-fst.h"

namespace phonefuse {

constexpr std::string_view kEowSymbol = "<eow>";

enum class EowMode { kRequired, kOptional };

std::string_view EowModeName(EowMode mode);
/// "required" or "optional"; throws ConfigError otherwise.
EowMode ParseEowMode(std::string_view name);

/// Word -> unweighted pronunciation alternatives over `phones`.
struct PronLexicon {
  SymbolTablePtr phones;
  std::map<std::string, std::vector<std::vector<Label>>> entries;

  std::size_t NumPronunciations() const;
  bool Contains(const std::string &word) const { return entries.count(word) > 0; }
};

/// Lines are `word<TAB>phone phone ...`; blank lines and lines starting with
/// '#' are skipped and duplicate (word, pronunciation) pairs are merged.
/// Throws ParseError (with the line number) on unknown or reserved phones and
/// on empty pronunciations.
PronLexicon ParseLexicon(std::istream &is, SymbolTablePtr phones);
PronLexicon ParseLexicon(std::string_view text, SymbolTablePtr phones);
PronLexicon ReadLexicon(const std::string &path, SymbolTablePtr phones);
void WriteLexicon(const PronLexicon &lex, std::ostream &os);

/// "<eps>" followed by the lexicon's words in sorted order.
SymbolTablePtr LexiconWordTable(const PronLexicon &lex);

/// Builds the L transducer (phones -> words, all weights 0).  The word is
/// emitted on the first phone of each pronunciation; every word returns to
/// the start state through an <eow> arc, plus a parallel epsilon arc in
/// optional mode, so L accepts word sequences.  Homophones stay separate
/// paths.
///
/// With `words` set (typically the LM vocabulary) L is built over that table:
/// lexicon words outside it are left out, and any vocabulary word (other
/// than <s>, </s>, <unk>) missing from the lexicon is a ConfigError.
WeightedFst CompileL(const PronLexicon &lex, EowMode mode, SymbolTablePtr words = nullptr);

/// All distinct word sequences L maps `phones` to, sorted lexicographically.
/// Unknown phone symbols throw Error; no parse gives an empty list.
std::vector<std::vector<std::string>> PhonesToWords(const WeightedFst &l,
                                                    const std::vector<std::string> &phones);
std::vector<std::vector<std::string>> PhonesToWords(const WeightedFst &l,
                                                    const std::vector<Label> &phones);

}  // namespace phonefuse

#endif  // PHONEFUSE_LEXICON_LEXICON_H_
