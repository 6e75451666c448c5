// src/eval/wer.cc

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

#include "eval/wer.h"

#include <cstdio>
#include <limits>

#include "base/error.h"

namespace phonefuse {

double WerBreakdown::Wer() const {
  if (ref_words == 0) return Errors() == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return static_cast<double>(Errors()) / static_cast<double>(ref_words);
}

std::string WerBreakdown::ToString() const {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.2f (%ld/%ld/%ld)", 100.0 * Wer(), deletions, insertions,
                substitutions);
  return buf;
}

WerBreakdown &WerBreakdown::operator+=(const WerBreakdown &o) {
  deletions += o.deletions;
  insertions += o.insertions;
  substitutions += o.substitutions;
  ref_words += o.ref_words;
  return *this;
}

namespace {

// Cell cost, compared lexicographically: total edits, then ins + del.
struct Cost {
  long edits = 0, indels = 0;
  long del = 0, ins = 0, sub = 0;
  bool operator<(const Cost &o) const {
    return edits != o.edits ? edits < o.edits : indels < o.indels;
  }
};

}  // namespace

WerBreakdown AlignWer(const std::vector<std::string> &ref, const std::vector<std::string> &hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<Cost> prev(m + 1), cur(m + 1);
  for (std::size_t j = 1; j <= m; ++j) {
    prev[j] = prev[j - 1];
    ++prev[j].edits, ++prev[j].indels, ++prev[j].ins;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = prev[0];
    ++cur[0].edits, ++cur[0].indels, ++cur[0].del;
    for (std::size_t j = 1; j <= m; ++j) {
      // Diagonal first so that ties resolve to match/substitution.
      Cost best = prev[j - 1];
      if (ref[i - 1] != hyp[j - 1]) ++best.edits, ++best.sub;
      Cost d = prev[j];
      ++d.edits, ++d.indels, ++d.del;
      if (d < best) best = d;
      Cost s = cur[j - 1];
      ++s.edits, ++s.indels, ++s.ins;
      if (s < best) best = s;
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  WerBreakdown w;
  w.deletions = prev[m].del;
  w.insertions = prev[m].ins;
  w.substitutions = prev[m].sub;
  w.ref_words = static_cast<long>(n);
  return w;
}

WerBreakdown CorpusWer(
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> &pairs) {
  if (pairs.empty()) throw Error("corpus WER of an empty corpus");
  WerBreakdown total;
  for (const auto &[ref, hyp] : pairs) total += AlignWer(ref, hyp);
  return total;
}

}  // namespace phonefuse
