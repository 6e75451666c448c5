// src/fst/weighted-fst.h

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

#ifndef PHONEFUSE_FST_WEIGHTED_FST_H_
#define PHONEFUSE_FST_WEIGHTED_FST_H_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fst/symbol-table.h"

namespace phonefuse {

using StateId = std::int32_t;
constexpr StateId kNoState = -1;

// Tropical weights: negative log probabilities under (min, +).  +inf is the
// semiring zero (no path), 0 is the semiring one.
using Weight = double;
constexpr Weight kInfWeight = std::numeric_limits<double>::infinity();

inline bool IsZeroWeight(Weight w) { return w == kInfWeight; }

struct Arc {
  StateId src = 0;
  StateId dst = 0;
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  Weight weight = 0.0;

  bool operator==(const Arc &) const = default;
};

/// Immutable weighted transducer.  Arcs are stored sorted by
/// (src, ilabel, olabel, dst, weight) with a per-state offset index, so
/// Arcs(s) is a contiguous, ilabel-sorted span.  Instances are only produced
/// by BuildFst()/FstBuilder and are safe to share between threads.
class WeightedFst {
 public:
  /// The empty machine: no states, accepts nothing.
  WeightedFst();

  StateId NumStates() const { return static_cast<StateId>(finals_.size()); }
  StateId Start() const { return start_; }
  Weight Final(StateId s) const { return finals_.at(s); }
  bool IsFinal(StateId s) const { return !IsZeroWeight(Final(s)); }

  std::span<const Arc> Arcs(StateId s) const {
    return {arcs_.data() + offsets_.at(s), arcs_.data() + offsets_.at(s + 1)};
  }
  /// Arcs leaving `s` whose ilabel equals `ilabel` (binary search).
  std::span<const Arc> ArcsWithInput(StateId s, Label ilabel) const;
  const std::vector<Arc> &AllArcs() const { return arcs_; }
  std::size_t NumArcs() const { return arcs_.size(); }

  const SymbolTable &InputSymbols() const { return *isyms_; }
  const SymbolTable &OutputSymbols() const { return *osyms_; }
  const SymbolTablePtr &InputSymbolsPtr() const { return isyms_; }
  const SymbolTablePtr &OutputSymbolsPtr() const { return osyms_; }

  /// Final weights as (state, weight) for every final state, ascending.
  std::vector<std::pair<StateId, Weight>> Finals() const;

 private:
  friend WeightedFst BuildFst(StateId, StateId, std::vector<Arc>,
                              const std::vector<std::pair<StateId, Weight>> &,
                              SymbolTablePtr, SymbolTablePtr);

  StateId start_ = kNoState;
  std::vector<Weight> finals_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> offsets_;
  SymbolTablePtr isyms_;
  SymbolTablePtr osyms_;
};

/// Validates and freezes a machine.  `num_states` may be 0 (empty machine,
/// `start` must then be kNoState).  Arcs carrying +inf weight are dropped.
/// Throws Error on dangling state ids, unknown labels, NaN or -inf weights and
/// duplicate final entries.
WeightedFst BuildFst(StateId num_states, StateId start, std::vector<Arc> arcs,
                     const std::vector<std::pair<StateId, Weight>> &finals,
                     SymbolTablePtr isyms, SymbolTablePtr osyms);

/// Mutable staging area for BuildFst().
class FstBuilder {
 public:
  FstBuilder(SymbolTablePtr isyms, SymbolTablePtr osyms)
      : isyms_(std::move(isyms)), osyms_(std::move(osyms)) {}
  /// Copies every state, arc and final weight of `fst`.
  static FstBuilder FromFst(const WeightedFst &fst);

  StateId AddState() { return num_states_++; }
  StateId NumStates() const { return num_states_; }
  void SetStart(StateId s) { start_ = s; }
  void AddArc(StateId src, StateId dst, Label ilabel, Label olabel, Weight w) {
    arcs_.push_back({src, dst, ilabel, olabel, w});
  }
  void SetFinal(StateId s, Weight w) { finals_.emplace_back(s, w); }

  WeightedFst Build() const {
    return BuildFst(num_states_, start_, arcs_, finals_, isyms_, osyms_);
  }

 private:
  SymbolTablePtr isyms_, osyms_;
  StateId num_states_ = 0;
  StateId start_ = kNoState;
  std::vector<Arc> arcs_;
  std::vector<std::pair<StateId, Weight>> finals_;
};

// Text format, one record per line:
//   src<TAB>dst<TAB>ilabel<TAB>olabel[<TAB>weight]   (arc)
//   state[<TAB>weight]                               (final)
// The state named on the first line is the start state.  Labels are symbol
// strings resolved through the supplied tables.
WeightedFst ReadFstText(std::istream &is, SymbolTablePtr isyms, SymbolTablePtr osyms);
WeightedFst ReadFstText(const std::string &path, SymbolTablePtr isyms,
                        SymbolTablePtr osyms);
void WriteFstText(const WeightedFst &fst, std::ostream &os);
void WriteFstText(const WeightedFst &fst, const std::string &path);

}  // namespace phonefuse

#endif  // PHONEFUSE_FST_WEIGHTED_FST_H_
