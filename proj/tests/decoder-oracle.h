// tests/decoder-oracle.h

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

// Test-only brute-force search over explicit score tables.  It enumerates
// every token sequence directly from the table rows and scores it by summing
// row log-probabilities, the string weight through L o G, and the token-count
// coverage; nothing here touches the beam search.

#ifndef PHONEFUSE_TESTS_DECODER_ORACLE_H_
#define PHONEFUSE_TESTS_DECODER_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "fst/fst-ops.h"
#include "scorer/scorer.h"

namespace phonefuse::testing {

struct BruteHyp {
  std::vector<Label> tokens;  // without <eos>
  double model = 0.0, lm = 0.0, coverage = 0.0, total = 0.0;
};

inline bool BruteBetter(const BruteHyp &a, const BruteHyp &b) {
  if (a.total != b.total) return a.total > b.total;
  auto ta = a.tokens, tb = b.tokens;
  ta.push_back(kEosLabel);
  tb.push_back(kEosLabel);
  return ta < tb;
}

/// Every finished sequence of at most `max_steps` tokens (<eos> included),
/// best first.  With `lg`, sequences L o G does not accept are skipped.
inline std::vector<BruteHyp> BruteForce(const TableScorer::Table &table,
                                        const SymbolTable &alphabet, const WeightedFst *lg,
                                        int max_steps, double lambda, double eta) {
  std::vector<BruteHyp> out;
  std::vector<Label> cur;
  std::function<void(double)> rec = [&](double model) {
    std::size_t k = cur.size();
    if (k >= table.size() || static_cast<int>(k) + 1 > max_steps) return;
    const auto &row = table[k];
    for (Label y = kEosLabel; y < static_cast<Label>(row.size()); ++y) {
      if (!(row[y] > 0.0)) continue;
      double m = model + std::log(row[y]);
      if (y == kEosLabel) {
        BruteHyp h;
        h.tokens = cur;
        h.model = m;
        h.coverage = static_cast<double>(cur.size());
        if (lg) {
          std::vector<std::string> syms;
          for (Label t : cur) syms.push_back(alphabet.Symbol(t));
          bool known = true;
          for (const auto &s : syms) known = known && lg->InputSymbols().Contains(s);
          if (!known) continue;
          auto w = StringWeight(*lg, syms);
          if (!w) continue;
          h.lm = -*w;
        }
        h.total = h.model + lambda * h.lm + eta * h.coverage;
        out.push_back(h);
      } else {
        cur.push_back(y);
        rec(m);
        cur.pop_back();
      }
    }
  };
  rec(0.0);
  std::sort(out.begin(), out.end(), BruteBetter);
  return out;
}

/// `rows` random rows over the emittable symbols; about one entry in five is
/// zeroed out (never all of them).
inline TableScorer::Table RandomTable(std::mt19937 &rng, const SymbolTable &alphabet, int rows) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  TableScorer::Table t;
  for (int r = 0; r < rows; ++r) {
    std::vector<double> row(alphabet.size(), 0.0);
    double sum = 0.0;
    for (std::size_t j = kEosLabel; j < row.size(); ++j) {
      row[j] = coin(rng) < 0.2 ? 0.0 : u(rng);
      sum += row[j];
    }
    if (sum == 0.0) row[kEosLabel] = sum = 1.0;
    for (double &p : row) p /= sum;
    t.push_back(row);
  }
  return t;
}

}  // namespace phonefuse::testing

#endif  // PHONEFUSE_TESTS_DECODER_ORACLE_H_
