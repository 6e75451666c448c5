// tests/fst-oracle.h

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

// Test-only helpers: random machine generators and exhaustive path
// enumeration.  Only ComposeOracleCheck calls into the code under test, and
// only to compare its result against the enumeration.

#ifndef PHONEFUSE_TESTS_FST_ORACLE_H_
#define PHONEFUSE_TESTS_FST_ORACLE_H_

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fst/fst-ops.h"
#include "fst/weighted-fst.h"

namespace phonefuse::testing {

inline SymbolTablePtr LetterTable(int n, char first = 'a') {
  auto t = std::make_shared<SymbolTable>();
  for (int i = 0; i < n; ++i) t->AddSymbol(std::string(1, char(first + i)));
  return t;
}

struct RandomFstOptions {
  int num_states = 4;
  int max_arcs_per_state = 3;
  double input_eps_prob = 0.0;   // epsilon-input arcs always point forward
  double output_eps_prob = 0.0;
  bool acyclic = false;          // every arc points to a higher state
  bool integer_weights = false;  // weights in {0,1,2}: forces ties
  double final_prob = 0.5;
};

/// Random machine whose epsilon-input arcs only go to higher-numbered
/// states, so there is no epsilon-input cycle and path enumeration
/// terminates.
inline WeightedFst RandomFst(std::mt19937 &rng, SymbolTablePtr isyms, SymbolTablePtr osyms,
                             const RandomFstOptions &opt) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> narcs(0, opt.max_arcs_per_state);
  auto pick_label = [&](const SymbolTable &t) {
    return std::uniform_int_distribution<Label>(1, t.size() - 1)(rng);
  };
  auto weight = [&]() {
    return opt.integer_weights ? double(std::uniform_int_distribution<int>(0, 2)(rng))
                               : std::round(unit(rng) * 3.0 * 1024) / 1024;
  };
  FstBuilder b(isyms, osyms);
  for (int i = 0; i < opt.num_states; ++i) b.AddState();
  b.SetStart(0);
  for (StateId s = 0; s < opt.num_states; ++s) {
    int k = narcs(rng);
    for (int j = 0; j < k; ++j) {
      Label il = unit(rng) < opt.input_eps_prob ? kEpsilon : pick_label(*isyms);
      Label ol = unit(rng) < opt.output_eps_prob ? kEpsilon : pick_label(*osyms);
      bool forward = opt.acyclic || il == kEpsilon;
      if (forward && s == opt.num_states - 1) continue;
      StateId dst = forward
          ? std::uniform_int_distribution<StateId>(s + 1, opt.num_states - 1)(rng)
          : std::uniform_int_distribution<StateId>(0, opt.num_states - 1)(rng);
      b.AddArc(s, dst, il, ol, weight());
    }
    if (unit(rng) < opt.final_prob || s == opt.num_states - 1) b.SetFinal(s, weight());
  }
  return b.Build();
}

struct EnumeratedPath {
  std::vector<Label> ilabels, olabels;
  double weight;
};

/// Every accepting path consuming at most `max_inputs` non-epsilon input
/// labels.  Requires the machine to have no epsilon-input cycle.
inline std::vector<EnumeratedPath> EnumeratePaths(const WeightedFst &f, int max_inputs) {
  std::vector<EnumeratedPath> out;
  if (f.NumStates() == 0) return out;
  std::vector<Label> il, ol;
  std::function<void(StateId, double)> dfs = [&](StateId s, double w) {
    if (f.IsFinal(s)) out.push_back({il, ol, w + f.Final(s)});
    for (const Arc &a : f.Arcs(s)) {
      if (a.ilabel != kEpsilon && static_cast<int>(il.size()) == max_inputs) continue;
      if (a.ilabel != kEpsilon) il.push_back(a.ilabel);
      if (a.olabel != kEpsilon) ol.push_back(a.olabel);
      dfs(a.dst, w + a.weight);
      if (a.ilabel != kEpsilon) il.pop_back();
      if (a.olabel != kEpsilon) ol.pop_back();
    }
  };
  dfs(f.Start(), 0.0);
  return out;
}

using PairKey = std::pair<std::vector<Label>, std::vector<Label>>;

/// Min weight per (input, output) string pair over the enumerated paths.
inline std::map<PairKey, double> PairWeights(const std::vector<EnumeratedPath> &paths) {
  std::map<PairKey, double> m;
  for (const auto &p : paths) {
    auto [it, inserted] = m.emplace(PairKey{p.ilabels, p.olabels}, p.weight);
    if (!inserted) it->second = std::min(it->second, p.weight);
  }
  return m;
}

/// Draws a random pair (each 1-6 states) and compares Compose against the
/// enumeration of every path pair sharing the middle string, keeping the
/// min weight per outer string pair with at most `max_len` input labels.
/// Returns an empty string on agreement, else what differed.
inline std::string ComposeOracleCheck(std::mt19937 &rng, int max_len, double tol) {
  auto s1 = LetterTable(3);
  auto s2 = LetterTable(3, 'p');
  auto s3 = LetterTable(3, 'x');
  RandomFstOptions oa;
  oa.num_states = std::uniform_int_distribution<int>(1, 6)(rng);
  oa.output_eps_prob = 0.25;
  RandomFstOptions ob;
  ob.num_states = std::uniform_int_distribution<int>(1, 6)(rng);
  ob.input_eps_prob = 0.25;
  ob.output_eps_prob = 0.25;
  WeightedFst a = RandomFst(rng, s1, s2, oa);
  WeightedFst b = RandomFst(rng, s2, s3, ob);

  // Every arc of `a` consumes input, so |middle| <= |input| <= max_len.
  std::map<std::vector<Label>, std::vector<EnumeratedPath>> b_by_input;
  for (auto &p : EnumeratePaths(b, max_len)) b_by_input[p.ilabels].push_back(p);
  std::map<PairKey, double> want;
  for (const auto &pa : EnumeratePaths(a, max_len)) {
    auto it = b_by_input.find(pa.olabels);
    if (it == b_by_input.end()) continue;
    for (const auto &pb : it->second) {
      PairKey k{pa.ilabels, pb.olabels};
      double w = pa.weight + pb.weight;
      auto [jt, inserted] = want.emplace(k, w);
      if (!inserted) jt->second = std::min(jt->second, w);
    }
  }
  auto got = PairWeights(EnumeratePaths(Compose(a, b), max_len));
  if (got.size() != want.size())
    return "string pairs: got " + std::to_string(got.size()) + ", want " +
           std::to_string(want.size());
  for (const auto &[k, w] : want) {
    auto it = got.find(k);
    if (it == got.end()) return "missing string pair";
    if (!(std::abs(it->second - w) <= tol))
      return "weight " + std::to_string(it->second) + " vs " + std::to_string(w);
  }
  return "";
}

}  // namespace phonefuse::testing

#endif  // PHONEFUSE_TESTS_FST_ORACLE_H_
