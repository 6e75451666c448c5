// src/scorer/scorer.h

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

#ifndef PHONEFUSE_SCORER_SCORER_H_
#define PHONEFUSE_SCORER_SCORER_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "fst/symbol-table.h"

namespace phonefuse {

constexpr std::string_view kSosSymbol = "<sos>";
constexpr std::string_view kEosSymbol = "<eos>";

/// Output alphabet layout shared by every scorer: <eps> = 0, <sos> = 1,
/// <eos> = 2, then `units` in the given order.  <eps> and <sos> are never
/// emitted.
SymbolTablePtr MakeOutputAlphabet(const std::vector<std::string> &units);

/// Checks the fixed layout above; throws ConfigError otherwise.
void CheckOutputAlphabet(const SymbolTable &alphabet);

inline constexpr Label kSosLabel = 1;
inline constexpr Label kEosLabel = 2;

inline bool IsEmittable(Label l) { return l > kSosLabel; }

struct Utterance {
  std::string id;
  /// One row per frame.
  Eigen::MatrixXd features;
  /// Reference output tokens, ending in <eos>.  May be empty when unknown.
  std::vector<Label> reference;
  /// Reference words, for scoring.
  std::vector<std::string> words;
};

/// What a scorer knows after consuming a prefix.
struct ScorerState {
  virtual ~ScorerState() = default;
  /// P(next token | prefix) over the alphabet.  Empty once the scorer has
  /// nothing more to say (a table that ran out of rows).
  std::vector<double> probs;
  /// Cumulative attention mass per encoder frame (head average).  Empty for
  /// scorers without attention.
  std::vector<double> attention_mass;
};
using ScorerStatePtr = std::shared_ptr<const ScorerState>;

/// Per-utterance scoring context.  Sessions are independent of each other,
/// so different utterances can be scored on different threads.
class ScorerSession {
 public:
  virtual ~ScorerSession() = default;
  /// State for the empty prefix (the <sos> step).
  virtual ScorerStatePtr Initial() = 0;
  /// State for prefix + token.  `token` must be emittable and not <eos>.
  virtual ScorerStatePtr Advance(const ScorerStatePtr &state, Label token) = 0;
};

class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual const SymbolTablePtr &alphabet() const = 0;
  virtual std::unique_ptr<ScorerSession> Begin(const Utterance &utt) const = 0;
};

/// Distribution after feeding `prefix` (without <sos>).  Throws Error when
/// the prefix is longer than the scorer can handle or contains <eos>.
std::vector<double> StepDistributions(const Scorer &scorer, const Utterance &utt,
                                      const std::vector<Label> &prefix);

/// Explicit row-stochastic tables, one per utterance id.  Row k is the
/// distribution after k advancing tokens.  An optional non-advancing token
/// (used for <eow>) keeps the current row; directly after it is emitted its
/// own probability is zeroed and the row renormalized, so it cannot repeat.
class TableScorer : public Scorer {
 public:
  using Table = std::vector<std::vector<double>>;

  /// Rows must have one entry per alphabet symbol, be non-negative, put no
  /// mass on <eps>/<sos>, and sum to 1 within 1e-9.  The table stored under
  /// the empty id applies to utterances without an own table.
  TableScorer(SymbolTablePtr alphabet, std::map<std::string, Table> tables,
              std::optional<Label> non_advancing = std::nullopt);

  const SymbolTablePtr &alphabet() const override { return alphabet_; }
  std::unique_ptr<ScorerSession> Begin(const Utterance &utt) const override;

  const Table &TableFor(const std::string &utt_id) const;
  /// Ids with their own table, sorted ("" included if present).
  std::vector<std::string> TableIds() const;
  std::optional<Label> non_advancing() const { return non_advancing_; }

 private:
  SymbolTablePtr alphabet_;
  std::map<std::string, Table> tables_;
  std::optional<Label> non_advancing_;
};

/// One-hot row on `symbol`.
std::vector<double> PointMassRow(const SymbolTable &alphabet, std::string_view symbol);

/// Row from (symbol, probability) pairs; unlisted symbols get zero.
std::vector<double> RowFromPairs(const SymbolTable &alphabet,
                                 const std::vector<std::pair<std::string, double>> &pairs);

/// JSON table file:
///   {"units": [...], "non_advancing": "<eow>",
///    "utterances": {"utt1": [{"ay": 1.0}, {"<eos>": 1.0}], ...}}
/// "non_advancing" is optional.  Rows list symbol probabilities.
std::unique_ptr<TableScorer> ReadTableScorer(const std::string &path);
std::unique_ptr<TableScorer> ParseTableScorer(std::string_view json_text);

}  // namespace phonefuse

#endif  // PHONEFUSE_SCORER_SCORER_H_
