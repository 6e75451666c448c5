// tests/fst-test.cc

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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <tuple>

#include "doctest.h"
#include "base/error.h"
#include "fst/fst-ops.h"
#include "fst/weighted-fst.h"
#include "fst-oracle.h"

namespace phonefuse {
namespace {

using testing::ComposeOracleCheck;
using testing::EnumeratePaths;
using testing::LetterTable;
using testing::PairWeights;
using testing::RandomFst;
using testing::RandomFstOptions;

constexpr double kTol = 1e-9;

WeightedFst SingleArc(SymbolTablePtr syms, double w) {
  FstBuilder b(syms, syms);
  b.AddState();
  b.AddState();
  b.SetStart(0);
  b.AddArc(0, 1, 1, 1, w);
  b.SetFinal(1, 0.0);
  return b.Build();
}

TEST_CASE("build: epsilon-only machine") {
  auto syms = LetterTable(1);
  FstBuilder b(syms, syms);
  b.SetStart(b.AddState());
  b.SetFinal(0, 0.0);
  WeightedFst f = b.Build();
  CHECK(f.NumStates() == 1);
  auto w = StringWeight(f, std::vector<Label>{});
  REQUIRE(w);
  CHECK(*w == 0.0);
}

TEST_CASE("build: single path") {
  auto syms = LetterTable(1);
  WeightedFst f = SingleArc(syms, 1.5);
  auto w = StringWeight(f, std::vector<std::string>{"a"});
  REQUIRE(w);
  CHECK(*w == doctest::Approx(1.5).epsilon(kTol));
  CHECK_FALSE(StringWeight(f, std::vector<Label>{}));
  CHECK_THROWS_AS(StringWeight(f, std::vector<std::string>{"zz"}), Error);
}

TEST_CASE("build: precondition violations") {
  auto syms = LetterTable(1);
  CHECK_THROWS_AS(BuildFst(2, 0, {{0, 7, 1, 1, 0.0}}, {}, syms, syms), Error);
  CHECK_THROWS_AS(BuildFst(2, 0, {{0, 1, 1, 1, 0.0}}, {{1, 0.0}, {1, 1.0}}, syms, syms), Error);
  CHECK_THROWS_AS(BuildFst(2, 0, {{0, 1, 5, 1, 0.0}}, {}, syms, syms), Error);
  CHECK_THROWS_AS(BuildFst(2, 3, {}, {}, syms, syms), Error);
  CHECK_THROWS_AS(BuildFst(2, 0, {{0, 1, 1, 1, std::nan("")}}, {}, syms, syms), Error);
}

TEST_CASE("build: arcs are sorted and freezing is idempotent") {
  std::mt19937 rng(7);
  auto syms = LetterTable(3);
  RandomFstOptions opt;
  opt.num_states = 5;
  opt.input_eps_prob = 0.3;
  WeightedFst f = RandomFst(rng, syms, syms, opt);
  for (StateId s = 0; s < f.NumStates(); ++s) {
    auto arcs = f.Arcs(s);
    for (std::size_t i = 1; i < arcs.size(); ++i)
      CHECK(std::tie(arcs[i - 1].ilabel, arcs[i - 1].olabel) <=
            std::tie(arcs[i].ilabel, arcs[i].olabel));
  }
  WeightedFst g = FstBuilder::FromFst(f).Build();
  CHECK(g.AllArcs() == f.AllArcs());
  CHECK(g.Finals() == f.Finals());
  CHECK(g.Start() == f.Start());
}

TEST_CASE("symbol table: text round trip and validation") {
  SymbolTable t({"ay", "ae", "m"});
  std::stringstream ss;
  t.WriteText(ss);
  CHECK(SymbolTable::ReadText(ss) == t);
  std::stringstream bad("<eps>\t0\nx\t2\n");
  CHECK_THROWS_AS(SymbolTable::ReadText(bad), ParseError);
  std::stringstream noeps("x\t0\n");
  CHECK_THROWS_AS(SymbolTable::ReadText(noeps), ParseError);
  CHECK(t.AddSymbol("ae") == 2);
}

TEST_CASE("text format round trip") {
  std::mt19937 rng(11);
  auto syms = LetterTable(3);
  RandomFstOptions opt;
  opt.num_states = 6;
  opt.input_eps_prob = 0.2;
  opt.output_eps_prob = 0.2;
  for (int trial = 0; trial < 20; ++trial) {
    WeightedFst f = Connect(RandomFst(rng, syms, syms, opt));
    std::stringstream ss;
    WriteFstText(f, ss);
    WeightedFst g = ReadFstText(ss, syms, syms);
    auto pf = PairWeights(EnumeratePaths(f, 4));
    auto pg = PairWeights(EnumeratePaths(g, 4));
    REQUIRE(pf.size() == pg.size());
    for (const auto &[k, w] : pf) CHECK(pg.at(k) == doctest::Approx(w).epsilon(kTol));
  }
  std::stringstream bad("0\t1\ta\tq\t1.0\n");
  CHECK_THROWS_AS(ReadFstText(bad, syms, syms), ParseError);
}

TEST_CASE("compose: single-path product") {
  auto x = LetterTable(1, 'x');
  auto p = LetterTable(1, 'p');
  auto w = LetterTable(1, 'w');
  FstBuilder a(x, p), b(p, w);
  a.AddState(), a.AddState(), a.SetStart(0), a.SetFinal(1, 0.0);
  a.AddArc(0, 1, 1, 1, 1.0);
  b.AddState(), b.AddState(), b.SetStart(0), b.SetFinal(1, 0.0);
  b.AddArc(0, 1, 1, 1, 2.0);
  WeightedFst c = Compose(a.Build(), b.Build());
  auto paths = ShortestPaths(c, 5);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].weight == doctest::Approx(3.0));
  CHECK(paths[0].ilabels == std::vector<Label>{1});
  CHECK(paths[0].olabels == std::vector<Label>{1});
  CHECK_THROWS_AS(Compose(b.Build(), b.Build()), Error);
}

TEST_CASE("compose: identity acceptor preserves weights") {
  std::mt19937 rng(3);
  auto syms = LetterTable(3);
  FstBuilder id(syms, syms);
  id.SetStart(id.AddState());
  id.SetFinal(0, 0.0);
  for (Label l = 1; l < 4; ++l) id.AddArc(0, 0, l, l, 0.0);
  WeightedFst identity = id.Build();
  RandomFstOptions opt;
  opt.output_eps_prob = 0.3;
  for (int trial = 0; trial < 20; ++trial) {
    WeightedFst a = RandomFst(rng, syms, syms, opt);
    auto want = PairWeights(EnumeratePaths(a, 5));
    auto got = PairWeights(EnumeratePaths(Compose(a, identity), 5));
    REQUIRE(want.size() == got.size());
    for (const auto &[k, w] : want) CHECK(got.at(k) == doctest::Approx(w).epsilon(kTol));
  }
}

TEST_CASE("compose: epsilon filter yields one path per alignment") {
  // a: x:<eps> then y:q.  b: <eps>:r then q:s.  Without a filter the two
  // epsilon moves could interleave in three ways.
  auto in = LetterTable(2, 'x');
  auto mid = LetterTable(1, 'q');
  auto out = LetterTable(2, 'r');
  FstBuilder a(in, mid), b(mid, out);
  for (int i = 0; i < 3; ++i) a.AddState(), b.AddState();
  a.SetStart(0), b.SetStart(0);
  a.AddArc(0, 1, 1, kEpsilon, 0.5);
  a.AddArc(1, 2, 2, 1, 0.25);
  a.SetFinal(2, 0.0);
  b.AddArc(0, 1, kEpsilon, 1, 1.0);
  b.AddArc(1, 2, 1, 2, 2.0);
  b.SetFinal(2, 0.0);
  WeightedFst c = Compose(a.Build(), b.Build());
  auto paths = EnumeratePaths(c, 4);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].weight == doctest::Approx(3.75));
  CHECK(paths[0].ilabels == std::vector<Label>{1, 2});
  CHECK(paths[0].olabels == std::vector<Label>{1, 2});
}

TEST_CASE("compose: agrees with path-pair enumeration") {
  std::mt19937 rng(20260);
  for (int trial = 0; trial < 30; ++trial) CHECK(ComposeOracleCheck(rng, 6, kTol) == "");
}

TEST_CASE("compose: associativity on fixtures") {
  std::mt19937 rng(99);
  auto s = LetterTable(2);
  RandomFstOptions opt;
  opt.num_states = 3;
  opt.output_eps_prob = 0.2;
  for (int trial = 0; trial < 15; ++trial) {
    WeightedFst a = RandomFst(rng, s, s, opt);
    WeightedFst b = RandomFst(rng, s, s, opt);
    WeightedFst c = RandomFst(rng, s, s, opt);
    auto left = PairWeights(EnumeratePaths(Compose(Compose(a, b), c), 4));
    auto right = PairWeights(EnumeratePaths(Compose(a, Compose(b, c)), 4));
    REQUIRE(left.size() == right.size());
    for (const auto &[k, w] : left) CHECK(std::abs(right.at(k) - w) <= kTol);
  }
}

TEST_CASE("shortest paths: single path and ordering") {
  auto syms = LetterTable(2);
  auto one = ShortestPaths(SingleArc(syms, 1.5), 3);
  REQUIRE(one.size() == 1);
  CHECK(one[0].weight == doctest::Approx(1.5));

  FstBuilder b(syms, syms);
  b.AddState(), b.AddState();
  b.SetStart(0);
  b.AddArc(0, 1, 1, 1, 2.0);
  b.AddArc(0, 1, 2, 2, 1.0);
  b.SetFinal(1, 0.0);
  auto two = ShortestPaths(b.Build(), 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].weight == doctest::Approx(1.0));
  CHECK(two[0].olabels == std::vector<Label>{2});
  CHECK(two[1].weight == doctest::Approx(2.0));

  CHECK(ShortestPaths(WeightedFst(), 4).empty());
  CHECK_THROWS_AS(ShortestPaths(b.Build(), 0), Error);
}

TEST_CASE("shortest paths: match enumeration on random acyclic machines") {
  std::mt19937 rng(42);
  auto syms = LetterTable(3);
  for (int trial = 0; trial < 50; ++trial) {
    RandomFstOptions opt;
    opt.num_states = 8;
    opt.acyclic = true;
    opt.input_eps_prob = 0.2;
    opt.output_eps_prob = 0.2;
    opt.integer_weights = trial % 2 == 1;
    WeightedFst f = RandomFst(rng, syms, syms, opt);
    auto all = EnumeratePaths(f, 100);
    std::sort(all.begin(), all.end(), [](const auto &x, const auto &y) {
      return std::tie(x.weight, x.olabels, x.ilabels) < std::tie(y.weight, y.olabels, y.ilabels);
    });
    auto got = ShortestPaths(f, 5);
    REQUIRE(got.size() == std::min<std::size_t>(5, all.size()));
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(std::abs(got[i].weight - all[i].weight) <= kTol);
      CHECK(got[i].olabels == all[i].olabels);
      CHECK(got[i].ilabels == all[i].ilabels);
    }
    if (!got.empty()) CHECK(ShortestPaths(f, 1)[0].weight == got[0].weight);
  }
}

TEST_CASE("string weight: matches enumeration on random machines") {
  std::mt19937 rng(5);
  auto syms = LetterTable(2);
  for (int trial = 0; trial < 30; ++trial) {
    RandomFstOptions opt;
    opt.num_states = 5;
    opt.input_eps_prob = 0.25;
    WeightedFst f = RandomFst(rng, syms, syms, opt);
    std::map<std::vector<Label>, double> want;
    for (const auto &p : EnumeratePaths(f, 4)) {
      auto [it, inserted] = want.emplace(p.ilabels, p.weight);
      if (!inserted) it->second = std::min(it->second, p.weight);
    }
    // All strings over {a, b} up to length 4.
    std::vector<std::vector<Label>> strings{{}};
    for (std::size_t i = 0; i < strings.size(); ++i)
      if (strings[i].size() < 4)
        for (Label l = 1; l <= 2; ++l) {
          auto s = strings[i];
          s.push_back(l);
          strings.push_back(s);
        }
    for (const auto &s : strings) {
      auto got = StringWeight(f, s);
      auto it = want.find(s);
      if (it == want.end()) {
        CHECK_FALSE(got);
      } else {
        REQUIRE(got);
        CHECK(std::abs(*got - it->second) <= kTol);
      }
    }
  }
}

TEST_CASE("connect trims dead states") {
  auto syms = LetterTable(1);
  FstBuilder b(syms, syms);
  for (int i = 0; i < 4; ++i) b.AddState();
  b.SetStart(0);
  b.AddArc(0, 1, 1, 1, 0.0);
  b.AddArc(0, 2, 1, 1, 0.0);  // 2 is a dead end
  b.SetFinal(1, 0.0);         // 3 is unreachable
  WeightedFst c = Connect(b.Build());
  CHECK(c.NumStates() == 2);
  CHECK(c.NumArcs() == 1);
}

}  // namespace
}  // namespace phonefuse
