// src/eval/sweep.h

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

#ifndef PHONEFUSE_EVAL_SWEEP_H_
#define PHONEFUSE_EVAL_SWEEP_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "decoder/decoder.h"
#include "eval/wer.h"

namespace phonefuse {

/// beam: fusion=beam at (lambda, 0).  nbest: fusion=nbest at (0, lambda).
/// split: fusion=both at (lambda_beam, lambda_nbest).
enum class SweepMode { kBeam, kNBest, kSplit };

std::string_view SweepModeName(SweepMode m);
SweepMode ParseSweepMode(std::string_view name);  // beam | nbest | split

struct SweepPoint {
  double lambda_beam = 0.0;
  double lambda_nbest = 0.0;
  bool failed = false;
  std::string error;
  WerBreakdown wer;
  std::vector<DecodeResult> results;
};

struct SweepResult {
  SweepMode mode = SweepMode::kNBest;
  std::vector<SweepPoint> points;
  /// Lowest WER among the points that decoded; ties go to the smallest
  /// (lambda_beam, lambda_nbest).  Empty only if every point failed.
  std::optional<std::size_t> argmin;
};

/// `lambdas` as grid points for `mode`.  For split, each lambda is the beam
/// weight and the n-best weight is `split_sum - lambda`.
std::vector<std::pair<double, double>> MakeSweepGrid(SweepMode mode,
                                                     const std::vector<double> &lambdas,
                                                     double split_sum = 0.0);

/// lo, lo + step, ... up to hi (inclusive, with a small tolerance), each
/// rounded to 1e-9 so that printed values stay short.
std::vector<double> LinearGrid(double lo, double hi, double step);

/// Decodes `utts` at every grid point; the base config supplies everything
/// but the fusion strategy and the two LM weights.  A point whose decode
/// throws is marked failed.  Throws ConfigError on an empty grid or a split
/// grid whose sums differ by more than 1e-9.
SweepResult SweepLmWeight(const Scorer &scorer, const DecoderResources &resources,
                          const std::vector<Utterance> &utts, const DecodeConfig &base,
                          const std::vector<std::pair<double, double>> &grid, SweepMode mode,
                          int jobs = 1);

/// Header `lambda_beam,lambda_nbest,wer,del,ins,sub`; failed points print
/// nan in the last four columns.
void WriteSweepCsv(const SweepResult &result, std::ostream &os);

/// Corpus WER of decode results against the utterances' reference words.
WerBreakdown ScoreResults(const std::vector<Utterance> &utts,
                          const std::vector<DecodeResult> &results);

}  // namespace phonefuse

#endif  // PHONEFUSE_EVAL_SWEEP_H_
