// src/lexicon/lexicon.cc

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

#include "lexicon/lexicon.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "base/error.h"
#include "base/text-utils.h"
#include "fst/fst-ops.h"

namespace phonefuse {

std::string_view EowModeName(EowMode mode) {
  return mode == EowMode::kRequired ? "required" : "optional";
}

EowMode ParseEowMode(std::string_view name) {
  if (name == "required") return EowMode::kRequired;
  if (name == "optional") return EowMode::kOptional;
  throw ConfigError("unknown <eow> mode '" + std::string(name) + "'");
}

std::size_t PronLexicon::NumPronunciations() const {
  std::size_t n = 0;
  for (const auto &[w, prons] : entries) n += prons.size();
  return n;
}

PronLexicon ParseLexicon(std::istream &is, SymbolTablePtr phones) {
  if (!phones) throw Error("ParseLexicon: phone table required");
  PronLexicon lex;
  lex.phones = phones;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto fields = SplitFields(trimmed);
    if (fields.size() < 2) throw ParseError("empty pronunciation for '" + fields[0] + "'", lineno);
    std::vector<Label> pron;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto &p = fields[i];
      if (p == kEowSymbol || p == SymbolTable::kEpsilonSymbol)
        throw ParseError("reserved symbol '" + p + "' inside a pronunciation", lineno);
      auto id = phones->Find(p);
      if (!id) throw ParseError("unknown phoneme '" + p + "'", lineno);
      pron.push_back(*id);
    }
    auto &prons = lex.entries[fields[0]];
    if (std::find(prons.begin(), prons.end(), pron) == prons.end()) prons.push_back(pron);
  }
  return lex;
}

PronLexicon ParseLexicon(std::string_view text, SymbolTablePtr phones) {
  std::istringstream is{std::string(text)};
  return ParseLexicon(is, std::move(phones));
}

PronLexicon ReadLexicon(const std::string &path, SymbolTablePtr phones) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open lexicon " + path);
  return ParseLexicon(is, std::move(phones));
}

void WriteLexicon(const PronLexicon &lex, std::ostream &os) {
  for (const auto &[word, prons] : lex.entries) {
    for (const auto &pron : prons) {
      os << word << '\t';
      for (std::size_t i = 0; i < pron.size(); ++i)
        os << (i ? " " : "") << lex.phones->Symbol(pron[i]);
      os << '\n';
    }
  }
}

SymbolTablePtr LexiconWordTable(const PronLexicon &lex) {
  auto words = std::make_shared<SymbolTable>();
  for (const auto &[w, prons] : lex.entries) words->AddSymbol(w);
  return words;
}

WeightedFst CompileL(const PronLexicon &lex, EowMode mode, SymbolTablePtr words) {
  if (!lex.phones) throw Error("CompileL: lexicon has no phone table");
  auto eow = lex.phones->Find(kEowSymbol);
  if (!eow) throw ConfigError("phone set has no <eow> symbol");
  if (!words) {
    words = LexiconWordTable(lex);
  } else {
    for (std::size_t i = 1; i < words->size(); ++i) {
      const auto &w = words->Symbol(static_cast<Label>(i));
      if (w == "<s>" || w == "</s>" || w == "<unk>") continue;
      if (!lex.Contains(w)) throw ConfigError("word '" + w + "' is not in the lexicon");
    }
  }

  FstBuilder b(lex.phones, words);
  StateId start = b.AddState();
  b.SetStart(start);
  b.SetFinal(start, 0.0);
  for (const auto &[word, prons] : lex.entries) {
    auto wid = words->Find(word);
    if (!wid) continue;
    for (const auto &pron : prons) {
      StateId s = start;
      for (std::size_t i = 0; i < pron.size(); ++i) {
        StateId next = b.AddState();
        b.AddArc(s, next, pron[i], i == 0 ? *wid : kEpsilon, 0.0);
        s = next;
      }
      b.AddArc(s, start, *eow, kEpsilon, 0.0);
      if (mode == EowMode::kOptional) b.AddArc(s, start, kEpsilon, kEpsilon, 0.0);
    }
  }
  return b.Build();
}

std::vector<std::vector<std::string>> PhonesToWords(const WeightedFst &l,
                                                    const std::vector<Label> &phones) {
  for (Label p : phones)
    if (p == kEpsilon || !l.InputSymbols().Contains(p))
      throw Error("PhonesToWords: label " + std::to_string(p) + " is not a phone");
  WeightedFst c = Compose(LinearAcceptor(phones, l.InputSymbolsPtr()), l);
  std::set<std::vector<std::string>> found;
  if (c.NumStates() > 0) {
    // c is acyclic: every cycle of L consumes a phone.
    std::vector<std::string> out;
    std::function<void(StateId)> dfs = [&](StateId s) {
      if (c.IsFinal(s)) found.insert(out);
      for (const Arc &a : c.Arcs(s)) {
        if (a.olabel != kEpsilon) out.push_back(c.OutputSymbols().Symbol(a.olabel));
        dfs(a.dst);
        if (a.olabel != kEpsilon) out.pop_back();
      }
    };
    dfs(c.Start());
  }
  return {found.begin(), found.end()};
}

std::vector<std::vector<std::string>> PhonesToWords(const WeightedFst &l,
                                                    const std::vector<std::string> &phones) {
  std::vector<Label> ids;
  ids.reserve(phones.size());
  for (const auto &p : phones) ids.push_back(l.InputSymbols().FindOrThrow(p));
  return PhonesToWords(l, ids);
}

}  // namespace phonefuse
