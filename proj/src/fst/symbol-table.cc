// src/fst/symbol-table.cc

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

#include "fst/symbol-table.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "base/error.h"
#include "base/text-utils.h"

namespace phonefuse {

SymbolTable::SymbolTable() { AddSymbol(kEpsilonSymbol); }

SymbolTable::SymbolTable(const std::vector<std::string> &symbols)
    : SymbolTable() {
  for (const auto &s : symbols) AddSymbol(s);
}

Label SymbolTable::AddSymbol(std::string_view symbol) {
  if (symbol.empty()) throw Error("empty symbol");
  std::string key(symbol);
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  Label id = static_cast<Label>(symbols_.size());
  symbols_.push_back(key);
  ids_.emplace(std::move(key), id);
  return id;
}

std::optional<Label> SymbolTable::Find(std::string_view symbol) const {
  auto it = ids_.find(std::string(symbol));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Label SymbolTable::FindOrThrow(std::string_view symbol) const {
  auto id = Find(symbol);
  if (!id) throw Error("unknown symbol '" + std::string(symbol) + "'");
  return *id;
}

const std::string &SymbolTable::Symbol(Label id) const {
  if (!Contains(id)) throw Error("symbol id " + std::to_string(id) + " out of range");
  return symbols_[id];
}

SymbolTable SymbolTable::ReadText(std::istream &is) {
  std::vector<std::pair<std::string, long>> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto fields = SplitFields(line);
    if (fields.empty()) continue;
    if (fields.size() != 2)
      throw ParseError("expected 'symbol<TAB>id', got '" + line + "'", lineno);
    long id;
    if (!ParseInt(fields[1], &id) || id < 0)
      throw ParseError("bad symbol id '" + fields[1] + "'", lineno);
    entries.emplace_back(fields[0], id);
  }
  std::vector<std::string> by_id(entries.size());
  std::vector<bool> seen(entries.size(), false);
  for (const auto &[sym, id] : entries) {
    if (static_cast<std::size_t>(id) >= entries.size())
      throw ParseError("symbol ids are not dense (id " + std::to_string(id) + ")");
    if (seen[id]) throw ParseError("duplicate symbol id " + std::to_string(id));
    seen[id] = true;
    by_id[id] = sym;
  }
  if (by_id.empty() || by_id[0] != kEpsilonSymbol)
    throw ParseError("symbol table must map <eps> to 0");
  SymbolTable table;
  for (std::size_t i = 1; i < by_id.size(); ++i) {
    if (table.Contains(by_id[i]))
      throw ParseError("duplicate symbol '" + by_id[i] + "'");
    table.AddSymbol(by_id[i]);
  }
  return table;
}

SymbolTable SymbolTable::ReadText(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open symbol table " + path);
  return ReadText(is);
}

void SymbolTable::WriteText(std::ostream &os) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    os << symbols_[i] << '\t' << i << '\n';
}

void SymbolTable::WriteText(const std::string &path) const {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path);
  WriteText(os);
}

}  // namespace phonefuse
