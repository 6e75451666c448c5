// src/fst/weighted-fst.cc

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

#include "fst/weighted-fst.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <tuple>

#include "base/error.h"
#include "base/text-utils.h"

namespace phonefuse {

namespace {

bool ArcLess(const Arc &a, const Arc &b) {
  return std::tie(a.src, a.ilabel, a.olabel, a.dst, a.weight) <
         std::tie(b.src, b.ilabel, b.olabel, b.dst, b.weight);
}

}  // namespace

WeightedFst::WeightedFst()
    : offsets_{0},
      isyms_(std::make_shared<SymbolTable>()),
      osyms_(std::make_shared<SymbolTable>()) {}

std::span<const Arc> WeightedFst::ArcsWithInput(StateId s, Label ilabel) const {
  auto all = Arcs(s);
  auto lo = std::lower_bound(all.begin(), all.end(), ilabel,
                             [](const Arc &a, Label l) { return a.ilabel < l; });
  auto hi = std::upper_bound(lo, all.end(), ilabel,
                             [](Label l, const Arc &a) { return l < a.ilabel; });
  return {lo, hi};
}

std::vector<std::pair<StateId, Weight>> WeightedFst::Finals() const {
  std::vector<std::pair<StateId, Weight>> out;
  for (StateId s = 0; s < NumStates(); ++s)
    if (IsFinal(s)) out.emplace_back(s, finals_[s]);
  return out;
}

WeightedFst BuildFst(StateId num_states, StateId start, std::vector<Arc> arcs,
                     const std::vector<std::pair<StateId, Weight>> &finals,
                     SymbolTablePtr isyms, SymbolTablePtr osyms) {
  if (!isyms || !osyms) throw Error("BuildFst: symbol tables are required");
  if (num_states < 0) throw Error("BuildFst: negative state count");
  if (num_states == 0) {
    if (start != kNoState || !arcs.empty() || !finals.empty())
      throw Error("BuildFst: empty machine cannot have a start, arcs or finals");
  } else if (start < 0 || start >= num_states) {
    throw Error("BuildFst: start state " + std::to_string(start) +
                " out of range for " + std::to_string(num_states) + " states");
  }
  auto check_state = [&](StateId s) {
    if (s < 0 || s >= num_states)
      throw Error("BuildFst: dangling state id " + std::to_string(s) + " (" +
                  std::to_string(num_states) + " states)");
  };
  auto check_weight = [](Weight w) {
    if (std::isnan(w) || w == -kInfWeight)
      throw Error("BuildFst: weight must be finite or +inf");
  };

  WeightedFst fst;
  fst.isyms_ = std::move(isyms);
  fst.osyms_ = std::move(osyms);
  fst.start_ = start;
  fst.finals_.assign(num_states, kInfWeight);
  std::vector<bool> has_final(num_states, false);
  for (const auto &[s, w] : finals) {
    check_state(s);
    check_weight(w);
    if (has_final[s]) throw Error("BuildFst: duplicate final entry for state " + std::to_string(s));
    has_final[s] = true;
    fst.finals_[s] = w;
  }
  std::erase_if(arcs, [](const Arc &a) { return IsZeroWeight(a.weight); });
  for (const Arc &a : arcs) {
    check_state(a.src);
    check_state(a.dst);
    check_weight(a.weight);
    if (!fst.isyms_->Contains(a.ilabel) || !fst.osyms_->Contains(a.olabel))
      throw Error("BuildFst: arc label outside its symbol table");
  }
  std::sort(arcs.begin(), arcs.end(), ArcLess);
  fst.arcs_ = std::move(arcs);
  fst.offsets_.assign(num_states + 1, 0);
  for (const Arc &a : fst.arcs_) ++fst.offsets_[a.src + 1];
  for (StateId s = 0; s < num_states; ++s) fst.offsets_[s + 1] += fst.offsets_[s];
  return fst;
}

FstBuilder FstBuilder::FromFst(const WeightedFst &fst) {
  FstBuilder b(fst.InputSymbolsPtr(), fst.OutputSymbolsPtr());
  b.num_states_ = fst.NumStates();
  b.start_ = fst.Start();
  b.arcs_ = fst.AllArcs();
  b.finals_ = fst.Finals();
  return b;
}

WeightedFst ReadFstText(std::istream &is, SymbolTablePtr isyms, SymbolTablePtr osyms) {
  std::vector<Arc> arcs;
  std::vector<std::pair<StateId, Weight>> finals;
  StateId start = kNoState, max_state = -1;
  std::string line;
  std::size_t lineno = 0;
  auto parse_state = [&](const std::string &f) {
    long v;
    if (!ParseInt(f, &v) || v < 0 || v > std::numeric_limits<StateId>::max())
      throw ParseError("bad state id '" + f + "'", lineno);
    return static_cast<StateId>(v);
  };
  auto parse_weight = [&](const std::string &f) {
    double w;
    if (!ParseDouble(f, &w)) throw ParseError("bad weight '" + f + "'", lineno);
    return w;
  };
  auto label = [&](const SymbolTable &syms, const std::string &f) {
    auto id = syms.Find(f);
    if (!id) throw ParseError("unknown symbol '" + f + "'", lineno);
    return *id;
  };
  while (std::getline(is, line)) {
    ++lineno;
    auto fields = SplitFields(line);
    if (fields.empty()) continue;
    if (fields.size() == 4 || fields.size() == 5) {
      Arc a;
      a.src = parse_state(fields[0]);
      a.dst = parse_state(fields[1]);
      a.ilabel = label(*isyms, fields[2]);
      a.olabel = label(*osyms, fields[3]);
      a.weight = fields.size() == 5 ? parse_weight(fields[4]) : 0.0;
      if (start == kNoState) start = a.src;
      max_state = std::max({max_state, a.src, a.dst});
      arcs.push_back(a);
    } else if (fields.size() == 1 || fields.size() == 2) {
      StateId s = parse_state(fields[0]);
      Weight w = fields.size() == 2 ? parse_weight(fields[1]) : 0.0;
      if (start == kNoState) start = s;
      max_state = std::max(max_state, s);
      finals.emplace_back(s, w);
    } else {
      throw ParseError("expected an arc (4-5 fields) or a final (1-2 fields)", lineno);
    }
  }
  return BuildFst(max_state + 1, start, std::move(arcs), finals, std::move(isyms),
                  std::move(osyms));
}

WeightedFst ReadFstText(const std::string &path, SymbolTablePtr isyms, SymbolTablePtr osyms) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open FST " + path);
  return ReadFstText(is, std::move(isyms), std::move(osyms));
}

void WriteFstText(const WeightedFst &fst, std::ostream &os) {
  if (fst.NumStates() == 0) return;
  const auto &is = fst.InputSymbols();
  const auto &osy = fst.OutputSymbols();
  auto write_state = [&](StateId s) {
    for (const Arc &a : fst.Arcs(s)) {
      os << a.src << '\t' << a.dst << '\t' << is.Symbol(a.ilabel) << '\t'
         << osy.Symbol(a.olabel) << '\t' << FormatDouble(a.weight) << '\n';
    }
    if (fst.IsFinal(s)) os << s << '\t' << FormatDouble(fst.Final(s)) << '\n';
  };
  // The reader takes the first line's state as the start; a start state with
  // neither arcs nor a final weight means the machine accepts nothing.
  if (fst.Arcs(fst.Start()).empty() && !fst.IsFinal(fst.Start())) return;
  write_state(fst.Start());
  for (StateId s = 0; s < fst.NumStates(); ++s)
    if (s != fst.Start()) write_state(s);
}

void WriteFstText(const WeightedFst &fst, const std::string &path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path);
  WriteFstText(fst, os);
}

}  // namespace phonefuse
