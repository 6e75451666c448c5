// src/eval/sweep.cc

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

#include "eval/sweep.h"

#include <cmath>
#include <ostream>
#include <tuple>

#include "base/error.h"
#include "base/text-utils.h"

namespace phonefuse {

std::string_view SweepModeName(SweepMode m) {
  switch (m) {
    case SweepMode::kBeam: return "beam";
    case SweepMode::kNBest: return "nbest";
    case SweepMode::kSplit: return "split";
  }
  return "?";
}

SweepMode ParseSweepMode(std::string_view name) {
  if (name == "beam") return SweepMode::kBeam;
  if (name == "nbest") return SweepMode::kNBest;
  if (name == "split") return SweepMode::kSplit;
  throw ConfigError("unknown sweep mode '" + std::string(name) + "' (beam|nbest|split)");
}

std::vector<double> LinearGrid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw ConfigError("bad grid range");
  std::vector<double> out;
  for (long k = 0;; ++k) {
    double x = lo + static_cast<double>(k) * step;
    if (x > hi + 1e-9 * step) break;
    out.push_back(std::round(x * 1e9) / 1e9);
  }
  return out;
}

std::vector<std::pair<double, double>> MakeSweepGrid(SweepMode mode,
                                                     const std::vector<double> &lambdas,
                                                     double split_sum) {
  std::vector<std::pair<double, double>> grid;
  for (double l : lambdas) {
    switch (mode) {
      case SweepMode::kBeam: grid.emplace_back(l, 0.0); break;
      case SweepMode::kNBest: grid.emplace_back(0.0, l); break;
      case SweepMode::kSplit:
        grid.emplace_back(l, std::round((split_sum - l) * 1e9) / 1e9);
        break;
    }
  }
  return grid;
}

WerBreakdown ScoreResults(const std::vector<Utterance> &utts,
                          const std::vector<DecodeResult> &results) {
  if (utts.size() != results.size()) throw Error("result count does not match the corpus");
  WerBreakdown total;
  for (std::size_t i = 0; i < utts.size(); ++i) total += AlignWer(utts[i].words, results[i].BestWords());
  return total;
}

SweepResult SweepLmWeight(const Scorer &scorer, const DecoderResources &resources,
                          const std::vector<Utterance> &utts, const DecodeConfig &base,
                          const std::vector<std::pair<double, double>> &grid, SweepMode mode,
                          int jobs) {
  if (grid.empty()) throw ConfigError("sweep grid is empty");
  if (mode == SweepMode::kSplit) {
    double sum = grid.front().first + grid.front().second;
    for (const auto &[b, n] : grid)
      if (std::abs(b + n - sum) > 1e-9) throw ConfigError("split grid sums are not constant");
  }
  SweepResult result;
  result.mode = mode;
  for (const auto &[lb, ln] : grid) {
    SweepPoint pt;
    pt.lambda_beam = lb;
    pt.lambda_nbest = ln;
    DecodeConfig config = base;
    config.lm_weight_beam = lb;
    config.lm_weight_nbest = ln;
    config.fusion = mode == SweepMode::kBeam    ? Fusion::kBeam
                    : mode == SweepMode::kNBest ? Fusion::kNBest
                                                : Fusion::kBoth;
    try {
      CheckDecodeSetup(scorer, resources, config);
      pt.results = DecodeAll(scorer, resources, utts, config, jobs);
      pt.wer = ScoreResults(utts, pt.results);
    } catch (const Error &e) {
      pt.failed = true;
      pt.error = e.what();
      pt.results.clear();
    }
    result.points.push_back(std::move(pt));
  }
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto &p = result.points[i];
    if (p.failed) continue;
    if (!result.argmin) {
      result.argmin = i;
      continue;
    }
    const auto &b = result.points[*result.argmin];
    if (std::make_tuple(p.wer.Wer(), p.lambda_beam, p.lambda_nbest) <
        std::make_tuple(b.wer.Wer(), b.lambda_beam, b.lambda_nbest))
      result.argmin = i;
  }
  return result;
}

void WriteSweepCsv(const SweepResult &result, std::ostream &os) {
  os << "lambda_beam,lambda_nbest,wer,del,ins,sub\n";
  for (const auto &p : result.points) {
    os << FormatDouble(p.lambda_beam) << ',' << FormatDouble(p.lambda_nbest) << ',';
    if (p.failed) {
      os << "nan,nan,nan,nan\n";
      continue;
    }
    os << FormatDouble(p.wer.Wer()) << ',' << p.wer.deletions << ',' << p.wer.insertions << ','
       << p.wer.substitutions << '\n';
  }
}

}  // namespace phonefuse
