// src/fst/symbol-table.h

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

#ifndef PHONEFUSE_FST_SYMBOL_TABLE_H_
#define PHONEFUSE_FST_SYMBOL_TABLE_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace phonefuse {

using Label = std::int32_t;
constexpr Label kEpsilon = 0;

/// Bijective map between symbol strings and dense integer ids.  Id 0 is
/// always "<eps>"; new symbols get the next free id.
class SymbolTable {
 public:
  static constexpr std::string_view kEpsilonSymbol = "<eps>";

  SymbolTable();
  explicit SymbolTable(const std::vector<std::string> &symbols);

  /// Returns the id of `symbol`, adding it if absent.
  Label AddSymbol(std::string_view symbol);

  std::optional<Label> Find(std::string_view symbol) const;
  /// Like Find() but throws Error naming the symbol when it is absent.
  Label FindOrThrow(std::string_view symbol) const;
  const std::string &Symbol(Label id) const;

  bool Contains(std::string_view symbol) const { return Find(symbol).has_value(); }
  bool Contains(Label id) const {
    return id >= 0 && static_cast<std::size_t>(id) < symbols_.size();
  }
  std::size_t size() const { return symbols_.size(); }
  const std::vector<std::string> &symbols() const { return symbols_; }

  bool operator==(const SymbolTable &other) const {
    return symbols_ == other.symbols_;
  }

  /// `symbol<TAB>id` per line.  Lines may appear in any order but the ids
  /// must be dense and "<eps>" must map to 0.
  static SymbolTable ReadText(std::istream &is);
  static SymbolTable ReadText(const std::string &path);
  void WriteText(std::ostream &os) const;
  void WriteText(const std::string &path) const;

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Label> ids_;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

}  // namespace phonefuse

#endif  // PHONEFUSE_FST_SYMBOL_TABLE_H_
