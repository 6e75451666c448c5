// src/fst/fst-ops.h

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

#ifndef PHONEFUSE_FST_FST_OPS_H_
#define PHONEFUSE_FST_FST_OPS_H_

#include <optional>
#include <string>
#include <vector>

#include "fst/weighted-fst.h"

namespace phonefuse {

/// An accepting path with epsilons stripped from both label sequences.
struct FstPath {
  std::vector<Label> ilabels;
  std::vector<Label> olabels;
  Weight weight = 0.0;
};

/// Composition a ∘ b in the tropical semiring.  Requires a's output table to
/// equal b's input table.  Epsilons on either side are matched through the
/// three-state epsilon filter, so every alignment of the two machines yields
/// exactly one composed path.  The result is trimmed to useful states.
WeightedFst Compose(const WeightedFst &a, const WeightedFst &b);

/// Removes states that are not both reachable from the start and able to
/// reach a final state.  State order is otherwise preserved.
WeightedFst Connect(const WeightedFst &fst);

/// The `n` lowest-weight accepting paths, ascending by weight; equal weights
/// are ordered by olabel sequence, then ilabel sequence (lexicographic over
/// ids).  Returns an empty list when nothing is accepted.  Weights must not
/// produce negative cycles.
std::vector<FstPath> ShortestPaths(const WeightedFst &fst, int n);

/// Min over accepting paths whose epsilon-free input equals `ilabels`, or
/// nullopt if there is none.  Throws Error on labels outside the input table.
std::optional<Weight> StringWeight(const WeightedFst &fst, const std::vector<Label> &ilabels);
std::optional<Weight> StringWeight(const WeightedFst &fst,
                                   const std::vector<std::string> &isymbols);

/// Linear acceptor for `labels` (ilabel == olabel) over `syms`.
WeightedFst LinearAcceptor(const std::vector<Label> &labels, SymbolTablePtr syms);

/// Sparse tropical state distribution, sorted by state id.
using StateWeights = std::vector<std::pair<StateId, Weight>>;

/// Closes `states` under input-epsilon arcs, keeping the min weight per
/// state.  Throws Error if a negative-weight epsilon cycle is detected.
StateWeights EpsilonClosure(const WeightedFst &fst, const StateWeights &states);

/// Follows arcs labelled `ilabel` from every state in `states`, then takes
/// the epsilon closure.  An empty result means the label sequence has left
/// the machine.
StateWeights AdvanceStates(const WeightedFst &fst, const StateWeights &states, Label ilabel);

/// The min over `states` of weight + final weight (+inf if none is final).
Weight BestFinalWeight(const WeightedFst &fst, const StateWeights &states);

}  // namespace phonefuse

#endif  // PHONEFUSE_FST_FST_OPS_H_
