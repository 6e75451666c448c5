// tests/wer-fixtures.h

// Copyright 2026  The phonefuse Authors

// See ../COPYING for clarification regarding multiple authors
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

// Hand-checked WER fixtures and a brute-force alignment enumerator.

#ifndef PHONEFUSE_TESTS_WER_FIXTURES_H_
#define PHONEFUSE_TESTS_WER_FIXTURES_H_

#include <functional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "base/text-utils.h"

namespace phonefuse::testing {

struct WerCase {
  const char *ref, *hyp;
  long del, ins, sub;
};

// Counts worked out by hand.  Cost-equal sub vs. del+ins cases resolve to
// substitutions; "a b c" / "c a b" is cheaper with one deletion + insertion.
inline const std::vector<WerCase> &WerCases() {
  static const std::vector<WerCase> cases = {
      {"the cat sat", "the cat sat", 0, 0, 0},
      {"the cat sat", "the cat", 1, 0, 0},
      {"a b c", "a x c d", 0, 1, 1},
      {"", "", 0, 0, 0},
      {"", "a b", 0, 2, 0},
      {"a b", "", 2, 0, 0},
      {"a", "b", 0, 0, 1},
      {"a b", "b a", 0, 0, 2},
      {"a b c", "b c", 1, 0, 0},
      {"a b c", "a b c d", 0, 1, 0},
      {"a b c d", "a c", 2, 0, 0},
      {"a a a", "a a", 1, 0, 0},
      {"a b c", "x y z", 0, 0, 3},
      {"a b", "x y z", 0, 1, 2},
      {"x y z", "a b", 1, 0, 2},
      {"a b c d e", "a x c y e", 0, 0, 2},
      {"a b c", "c a b", 1, 1, 0},
      {"I am", "eye am", 0, 0, 1},
      {"the cat sat on the mat", "the cat on the mat", 1, 0, 0},
      {"a b c d", "b c d e", 1, 1, 0},
  };
  return cases;
}

// Every alignment of ref against hyp, keeping those with the fewest edits
// and, among them, the fewest insertions + deletions.  Returns the distinct
// (del, ins, sub) triples found at that optimum.
inline std::set<std::tuple<long, long, long>> BruteAlign(const std::vector<std::string> &ref,
                                                         const std::vector<std::string> &hyp) {
  std::pair<long, long> best{1L << 30, 0};
  std::set<std::tuple<long, long, long>> out;
  std::function<void(std::size_t, std::size_t, long, long, long)> rec =
      [&](std::size_t i, std::size_t j, long d, long n, long s) {
        if (i == ref.size() && j == hyp.size()) {
          std::pair<long, long> key{d + n + s, d + n};
          if (key < best) best = key, out.clear();
          if (key == best) out.emplace(d, n, s);
          return;
        }
        if (i < ref.size() && j < hyp.size())
          rec(i + 1, j + 1, d, n, s + (ref[i] == hyp[j] ? 0 : 1));
        if (i < ref.size()) rec(i + 1, j, d + 1, n, s);
        if (j < hyp.size()) rec(i, j + 1, d, n + 1, s);
      };
  rec(0, 0, 0, 0, 0);
  return out;
}

}  // namespace phonefuse::testing

#endif  // PHONEFUSE_TESTS_WER_FIXTURES_H_
