// src/scorer/scorer.cc

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

#include "scorer/scorer.h"

#include <cmath>

#include "json.hpp"

#include "base/error.h"
#include "base/text-utils.h"

namespace phonefuse {

SymbolTablePtr MakeOutputAlphabet(const std::vector<std::string> &units) {
  auto t = std::make_shared<SymbolTable>();
  t->AddSymbol(std::string(kSosSymbol));
  t->AddSymbol(std::string(kEosSymbol));
  for (const auto &u : units) {
    if (t->Contains(u)) throw ConfigError("duplicate or reserved output unit '" + u + "'");
    t->AddSymbol(u);
  }
  return t;
}

void CheckOutputAlphabet(const SymbolTable &alphabet) {
  if (alphabet.size() < 3 || alphabet.Symbol(kSosLabel) != kSosSymbol ||
      alphabet.Symbol(kEosLabel) != kEosSymbol)
    throw ConfigError("output alphabet must start with <eps>, <sos>, <eos>");
}

std::vector<double> StepDistributions(const Scorer &scorer, const Utterance &utt,
                                      const std::vector<Label> &prefix) {
  auto session = scorer.Begin(utt);
  ScorerStatePtr st = session->Initial();
  for (Label y : prefix) {
    if (y == kEosLabel) throw Error("prefix continues past <eos>");
    if (st->probs.empty())
      throw Error("prefix of length " + std::to_string(prefix.size()) +
                  " exceeds what the scorer can extend");
    st = session->Advance(st, y);
  }
  if (st->probs.empty()) throw Error("prefix exhausts the scorer");
  return st->probs;
}

namespace {

struct TableState : ScorerState {
  std::size_t row = 0;
};

class TableSession : public ScorerSession {
 public:
  TableSession(const TableScorer::Table &table, std::optional<Label> non_advancing,
               std::size_t alphabet_size)
      : table_(table), non_advancing_(non_advancing), alphabet_size_(alphabet_size) {}

  ScorerStatePtr Initial() override { return Make(0, false); }

  ScorerStatePtr Advance(const ScorerStatePtr &state, Label token) override {
    const auto &st = static_cast<const TableState &>(*state);
    if (token < 0 || static_cast<std::size_t>(token) >= alphabet_size_ || !IsEmittable(token) ||
        token == kEosLabel)
      throw Error("cannot advance a table scorer with label " + std::to_string(token));
    if (st.probs.empty()) throw Error("table scorer has no rows left");
    if (non_advancing_ && token == *non_advancing_) return Make(st.row, true);
    return Make(st.row + 1, false);
  }

 private:
  ScorerStatePtr Make(std::size_t row, bool after_non_advancing) const {
    auto st = std::make_shared<TableState>();
    st->row = row;
    if (row < table_.size()) {
      st->probs = table_[row];
      if (after_non_advancing) {
        double &p = st->probs[*non_advancing_];
        double rest = 1.0 - p;
        p = 0.0;
        if (rest > 0.0) {
          for (double &q : st->probs) q /= rest;
        } else {
          st->probs.clear();
        }
      }
    }
    return st;
  }

  const TableScorer::Table &table_;
  std::optional<Label> non_advancing_;
  std::size_t alphabet_size_;
};

}  // namespace

TableScorer::TableScorer(SymbolTablePtr alphabet, std::map<std::string, Table> tables,
                         std::optional<Label> non_advancing)
    : alphabet_(std::move(alphabet)), tables_(std::move(tables)), non_advancing_(non_advancing) {
  CheckOutputAlphabet(*alphabet_);
  if (non_advancing_ && (!IsEmittable(*non_advancing_) || *non_advancing_ == kEosLabel ||
                         !alphabet_->Contains(*non_advancing_)))
    throw ConfigError("invalid non-advancing token");
  for (const auto &[id, table] : tables_) {
    for (std::size_t r = 0; r < table.size(); ++r) {
      const auto &row = table[r];
      std::string where = "table '" + id + "' row " + std::to_string(r);
      if (row.size() != alphabet_->size())
        throw ConfigError(where + " has " + std::to_string(row.size()) + " entries, expected " +
                          std::to_string(alphabet_->size()));
      double sum = 0.0;
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (!(row[j] >= 0.0) || !std::isfinite(row[j]))
          throw ConfigError(where + " has an invalid probability");
        if (!IsEmittable(static_cast<Label>(j)) && row[j] != 0.0)
          throw ConfigError(where + " puts mass on <eps> or <sos>");
        sum += row[j];
      }
      if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError(where + " sums to " + FormatDouble(sum) + ", not 1");
    }
  }
}

const TableScorer::Table &TableScorer::TableFor(const std::string &utt_id) const {
  auto it = tables_.find(utt_id);
  if (it == tables_.end()) it = tables_.find("");
  if (it == tables_.end()) throw Error("no score table for utterance '" + utt_id + "'");
  return it->second;
}

std::vector<std::string> TableScorer::TableIds() const {
  std::vector<std::string> ids;
  for (const auto &[id, t] : tables_) ids.push_back(id);
  return ids;
}

std::unique_ptr<ScorerSession> TableScorer::Begin(const Utterance &utt) const {
  return std::make_unique<TableSession>(TableFor(utt.id), non_advancing_, alphabet_->size());
}

std::vector<double> PointMassRow(const SymbolTable &alphabet, std::string_view symbol) {
  std::vector<double> row(alphabet.size(), 0.0);
  row[alphabet.FindOrThrow(std::string(symbol))] = 1.0;
  return row;
}

std::vector<double> RowFromPairs(const SymbolTable &alphabet,
                                 const std::vector<std::pair<std::string, double>> &pairs) {
  std::vector<double> row(alphabet.size(), 0.0);
  for (const auto &[sym, p] : pairs) row[alphabet.FindOrThrow(sym)] += p;
  return row;
}

std::unique_ptr<TableScorer> ParseTableScorer(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("table scorer JSON: ") + e.what());
  }
  try {
    auto alphabet = MakeOutputAlphabet(j.at("units").get<std::vector<std::string>>());
    std::optional<Label> non_advancing;
    if (j.contains("non_advancing"))
      non_advancing = alphabet->FindOrThrow(j.at("non_advancing").get<std::string>());
    std::map<std::string, TableScorer::Table> tables;
    for (const auto &[id, rows] : j.at("utterances").items()) {
      auto &table = tables[id];
      for (const auto &row : rows) {
        std::vector<std::pair<std::string, double>> pairs;
        for (const auto &[sym, p] : row.items()) pairs.emplace_back(sym, p.get<double>());
        table.push_back(RowFromPairs(*alphabet, pairs));
      }
    }
    return std::make_unique<TableScorer>(alphabet, std::move(tables), non_advancing);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("table scorer JSON: ") + e.what());
  }
}

std::unique_ptr<TableScorer> ReadTableScorer(const std::string &path) {
  return ParseTableScorer(ReadFileToString(path));
}

}  // namespace phonefuse
