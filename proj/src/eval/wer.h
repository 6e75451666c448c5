// src/eval/wer.h

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

#ifndef PHONEFUSE_EVAL_WER_H_
#define PHONEFUSE_EVAL_WER_H_

#include <string>
#include <utility>
#include <vector>

namespace phonefuse {

struct WerBreakdown {
  long deletions = 0;
  long insertions = 0;
  long substitutions = 0;
  long ref_words = 0;

  long Errors() const { return deletions + insertions + substitutions; }
  /// Errors over reference words.  With no reference words this is 0 for a
  /// perfect match and +inf otherwise.
  double Wer() const;
  /// "12.50 (1/0/2)" style: percent WER, then del/ins/sub.
  std::string ToString() const;

  WerBreakdown &operator+=(const WerBreakdown &o);
  bool operator==(const WerBreakdown &) const = default;
};

/// Levenshtein alignment with unit costs.  Among alignments with the fewest
/// edits, those using substitutions instead of deletion + insertion pairs
/// win, so the del/ins/sub split is unique.
WerBreakdown AlignWer(const std::vector<std::string> &ref, const std::vector<std::string> &hyp);

/// Counts summed over all pairs before dividing.  Throws Error when empty.
WerBreakdown CorpusWer(
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> &pairs);

}  // namespace phonefuse

#endif  // PHONEFUSE_EVAL_WER_H_
