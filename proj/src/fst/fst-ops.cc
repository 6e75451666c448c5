// src/fst/fst-ops.cc

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

#include "fst/fst-ops.h"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "base/error.h"

namespace phonefuse {

WeightedFst Compose(const WeightedFst &a, const WeightedFst &b) {
  if (!(a.OutputSymbols() == b.InputSymbols()))
    throw Error("Compose: output symbols of the left machine differ from the "
                "input symbols of the right machine");
  FstBuilder out(a.InputSymbolsPtr(), b.OutputSymbolsPtr());
  if (a.NumStates() == 0 || b.NumStates() == 0) return Connect(out.Build());

  // Filter state 0: free; 1: only the left machine has moved on an epsilon
  // since the last real match; 2: only the right machine has.
  using Key = std::tuple<StateId, StateId, int>;
  std::map<Key, StateId> ids;
  std::deque<Key> queue;
  auto state_of = [&](StateId qa, StateId qb, int f) {
    Key k{qa, qb, f};
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    StateId s = out.AddState();
    ids.emplace(k, s);
    queue.push_back(k);
    return s;
  };
  out.SetStart(state_of(a.Start(), b.Start(), 0));

  while (!queue.empty()) {
    auto [qa, qb, f] = queue.front();
    queue.pop_front();
    StateId src = ids.at({qa, qb, f});
    if (a.IsFinal(qa) && b.IsFinal(qb)) out.SetFinal(src, a.Final(qa) + b.Final(qb));
    auto b_eps = b.ArcsWithInput(qb, kEpsilon);
    for (const Arc &ea : a.Arcs(qa)) {
      if (ea.olabel != kEpsilon) {
        for (const Arc &eb : b.ArcsWithInput(qb, ea.olabel))
          out.AddArc(src, state_of(ea.dst, eb.dst, 0), ea.ilabel, eb.olabel,
                     ea.weight + eb.weight);
        continue;
      }
      if (f != 2)
        out.AddArc(src, state_of(ea.dst, qb, 1), ea.ilabel, kEpsilon, ea.weight);
      if (f == 0) {
        for (const Arc &eb : b_eps)
          out.AddArc(src, state_of(ea.dst, eb.dst, 0), ea.ilabel, eb.olabel,
                     ea.weight + eb.weight);
      }
    }
    if (f != 1) {
      for (const Arc &eb : b_eps)
        out.AddArc(src, state_of(qa, eb.dst, 2), kEpsilon, eb.olabel, eb.weight);
    }
  }
  return Connect(out.Build());
}

WeightedFst Connect(const WeightedFst &fst) {
  const StateId n = fst.NumStates();
  FstBuilder out(fst.InputSymbolsPtr(), fst.OutputSymbolsPtr());
  if (n == 0) return out.Build();

  std::vector<bool> access(n, false), coaccess(n, false);
  std::vector<StateId> stack{fst.Start()};
  access[fst.Start()] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Arc &a : fst.Arcs(s))
      if (!access[a.dst]) access[a.dst] = true, stack.push_back(a.dst);
  }
  std::vector<std::vector<StateId>> preds(n);
  for (const Arc &a : fst.AllArcs()) preds[a.dst].push_back(a.src);
  for (StateId s = 0; s < n; ++s)
    if (fst.IsFinal(s)) coaccess[s] = true, stack.push_back(s);
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : preds[s])
      if (!coaccess[p]) coaccess[p] = true, stack.push_back(p);
  }
  if (!coaccess[fst.Start()]) return out.Build();

  std::vector<StateId> remap(n, kNoState);
  for (StateId s = 0; s < n; ++s)
    if (access[s] && coaccess[s]) remap[s] = out.AddState();
  out.SetStart(remap[fst.Start()]);
  for (const Arc &a : fst.AllArcs())
    if (remap[a.src] != kNoState && remap[a.dst] != kNoState)
      out.AddArc(remap[a.src], remap[a.dst], a.ilabel, a.olabel, a.weight);
  for (const auto &[s, w] : fst.Finals())
    if (remap[s] != kNoState) out.SetFinal(remap[s], w);
  return out.Build();
}

namespace {

struct PartialPath {
  Weight weight;
  std::vector<Label> olabels;
  std::vector<Label> ilabels;
  StateId state;  // kNoState once the final weight has been taken
  std::uint64_t seq;

  auto Key() const { return std::tie(weight, olabels, ilabels, seq); }
};

struct PathGreater {
  bool operator()(const PartialPath &x, const PartialPath &y) const {
    return x.Key() > y.Key();
  }
};

}  // namespace

std::vector<FstPath> ShortestPaths(const WeightedFst &fst, int n) {
  if (n < 1) throw Error("ShortestPaths: n must be >= 1");
  std::vector<FstPath> result;
  if (fst.NumStates() == 0) return result;

  // Best-first over partial paths.  Keys never decrease along an extension
  // (weights are non-negative and label sequences only grow), so complete
  // paths pop in (weight, olabels, ilabels) order.  A partial path at a state
  // already popped n times is dropped only if it is strictly heavier than the
  // n-th: its completions then lose to n others.  The hard cap bounds work
  // on zero-weight cycles, where exact lexicographic ties are unbounded.
  const int cap = 8 * n + 16;
  std::vector<int> pops(fst.NumStates(), 0);
  std::vector<Weight> nth(fst.NumStates(), kInfWeight);
  std::priority_queue<PartialPath, std::vector<PartialPath>, PathGreater> heap;
  std::uint64_t seq = 0;
  heap.push({0.0, {}, {}, fst.Start(), seq++});

  while (!heap.empty() && static_cast<int>(result.size()) < n) {
    PartialPath p = heap.top();
    heap.pop();
    if (p.state == kNoState) {
      result.push_back({std::move(p.ilabels), std::move(p.olabels), p.weight});
      continue;
    }
    StateId s = p.state;
    if (pops[s] >= n && (p.weight > nth[s] || pops[s] >= cap)) continue;
    if (++pops[s] == n) nth[s] = p.weight;

    if (fst.IsFinal(s))
      heap.push({p.weight + fst.Final(s), p.olabels, p.ilabels, kNoState, seq++});
    for (const Arc &a : fst.Arcs(s)) {
      PartialPath next{p.weight + a.weight, p.olabels, p.ilabels, a.dst, seq++};
      if (a.olabel != kEpsilon) next.olabels.push_back(a.olabel);
      if (a.ilabel != kEpsilon) next.ilabels.push_back(a.ilabel);
      heap.push(std::move(next));
    }
  }
  return result;
}

StateWeights EpsilonClosure(const WeightedFst &fst, const StateWeights &states) {
  std::map<StateId, Weight> dist;
  std::map<StateId, int> relaxations;
  std::deque<StateId> queue;
  for (const auto &[s, w] : states) {
    auto [it, inserted] = dist.emplace(s, w);
    if (!inserted) it->second = std::min(it->second, w);
    queue.push_back(s);
  }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    Weight ws = dist.at(s);
    for (const Arc &a : fst.ArcsWithInput(s, kEpsilon)) {
      Weight cand = ws + a.weight;
      auto it = dist.find(a.dst);
      if (it != dist.end() && it->second <= cand) continue;
      dist[a.dst] = cand;
      if (++relaxations[a.dst] > fst.NumStates())
        throw Error("EpsilonClosure: negative-weight epsilon cycle");
      queue.push_back(a.dst);
    }
  }
  return {dist.begin(), dist.end()};
}

StateWeights AdvanceStates(const WeightedFst &fst, const StateWeights &states, Label ilabel) {
  std::map<StateId, Weight> next;
  for (const auto &[s, w] : states) {
    for (const Arc &a : fst.ArcsWithInput(s, ilabel)) {
      Weight cand = w + a.weight;
      auto [it, inserted] = next.emplace(a.dst, cand);
      if (!inserted) it->second = std::min(it->second, cand);
    }
  }
  if (next.empty()) return {};
  return EpsilonClosure(fst, StateWeights(next.begin(), next.end()));
}

Weight BestFinalWeight(const WeightedFst &fst, const StateWeights &states) {
  Weight best = kInfWeight;
  for (const auto &[s, w] : states)
    if (fst.IsFinal(s)) best = std::min(best, w + fst.Final(s));
  return best;
}

std::optional<Weight> StringWeight(const WeightedFst &fst, const std::vector<Label> &ilabels) {
  for (Label l : ilabels)
    if (l == kEpsilon || !fst.InputSymbols().Contains(l))
      throw Error("StringWeight: label " + std::to_string(l) + " is not an input symbol");
  if (fst.NumStates() == 0) return std::nullopt;
  StateWeights cur = EpsilonClosure(fst, {{fst.Start(), 0.0}});
  for (Label l : ilabels) {
    cur = AdvanceStates(fst, cur, l);
    if (cur.empty()) return std::nullopt;
  }
  Weight w = BestFinalWeight(fst, cur);
  if (IsZeroWeight(w)) return std::nullopt;
  return w;
}

std::optional<Weight> StringWeight(const WeightedFst &fst,
                                   const std::vector<std::string> &isymbols) {
  std::vector<Label> ids;
  ids.reserve(isymbols.size());
  for (const auto &s : isymbols) ids.push_back(fst.InputSymbols().FindOrThrow(s));
  return StringWeight(fst, ids);
}

WeightedFst LinearAcceptor(const std::vector<Label> &labels, SymbolTablePtr syms) {
  FstBuilder b(syms, syms);
  StateId s = b.AddState();
  b.SetStart(s);
  for (Label l : labels) {
    StateId next = b.AddState();
    b.AddArc(s, next, l, l, 0.0);
    s = next;
  }
  b.SetFinal(s, 0.0);
  return b.Build();
}

}  // namespace phonefuse
