// src/decoder/decoder.h

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

#ifndef PHONEFUSE_DECODER_DECODER_H_
#define PHONEFUSE_DECODER_DECODER_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fst/fst-ops.h"
#include "lexicon/lexicon.h"
#include "scorer/scorer.h"

namespace phonefuse {

enum class Fusion { kNone, kNBest, kBeam, kBoth };
enum class CoverageMode { kAttention, kTokens };
enum class OutputUnits { kPhoneme, kGrapheme };

std::string_view FusionName(Fusion f);
Fusion ParseFusion(std::string_view name);  // none | nbest | beam | both
std::string_view CoverageModeName(CoverageMode m);
CoverageMode ParseCoverageMode(std::string_view name);  // attention | tokens
std::string_view OutputUnitsName(OutputUnits u);
OutputUnits ParseOutputUnits(std::string_view name);  // phoneme | grapheme

constexpr std::string_view kSpaceSymbol = "<space>";

struct DecodeConfig {
  int beam_width = 8;
  /// Upper bound on emitted tokens, <eos> included.
  int max_steps = 64;
  int nbest_size = 8;
  Fusion fusion = Fusion::kNone;
  double lm_weight_beam = 0.0;
  double lm_weight_nbest = 0.0;
  double coverage_weight = 0.0;
  double coverage_threshold = 0.5;
  /// kAttention falls back to token counting for scorers without attention.
  CoverageMode coverage_mode = CoverageMode::kAttention;
  EowMode eow_mode = EowMode::kOptional;
  OutputUnits units = OutputUnits::kPhoneme;

  /// Throws ConfigError on out-of-range values.
  void Check() const;
};

/// Lexicon and LM transducers.  L and L o G are kept for both <eow> modes.
class DecoderResources {
 public:
  /// No lexicon, no LM: only fusion=none decoding.
  DecoderResources() = default;
  /// Lexicon only; L maps phones to the lexicon's own words.
  explicit DecoderResources(PronLexicon lexicon);
  /// Lexicon plus G (built over the LM vocabulary, see LmToFst).
  DecoderResources(PronLexicon lexicon, WeightedFst g);

  bool has_lexicon() const { return lexicon_.has_value(); }
  bool has_lm() const { return g_ != nullptr; }
  const PronLexicon &lexicon() const;
  const WeightedFst &L(EowMode mode) const;
  const WeightedFst &G() const;
  const WeightedFst &LG(EowMode mode) const;

 private:
  std::optional<PronLexicon> lexicon_;
  std::shared_ptr<const WeightedFst> g_;
  std::shared_ptr<const WeightedFst> l_[2], lg_[2];
};

/// One output-token hypothesis.  Scores are log-domain (higher is better):
/// lm_score is minus the best L o G weight of the token prefix (plus the final
/// weight once finished), and total = model_score + lm_weight * lm_score +
/// coverage_weight * coverage.
struct TokenHypothesis {
  std::vector<Label> tokens;  // scorer labels, <eos> excluded
  bool finished = false;
  double model_score = 0.0;
  double lm_score = 0.0;
  double coverage = 0.0;
  double total = 0.0;
};

struct WordHypothesis {
  std::vector<std::string> words;
  double model_score = 0.0;
  double lm_score = 0.0;
  double coverage = 0.0;
  double total = 0.0;
  /// Index of the token hypothesis this came from.
  std::size_t source = 0;
};

struct DecodeResult {
  std::string utt_id;
  std::vector<TokenHypothesis> nbest;
  /// Best first.  Empty when nothing could be mapped to words.
  std::vector<WordHypothesis> words;
  /// N-best entries without a parse through L o G.
  int dropped = 0;
  /// No hypothesis reached <eos>; nbest holds the best unfinished one.
  bool unfinished = false;

  std::vector<std::string> BestWords() const {
    return words.empty() ? std::vector<std::string>{} : words.front().words;
  }
};

/// Beam search over `scorer`.  With `lg` set, every candidate's prefix must
/// stay inside L o G, its score includes lm_weight times the prefix LM log
/// probability, and a hypothesis may only finish in a final configuration.
/// Candidates are ranked by total score, ties broken by token sequence
/// (lexicographic over label ids, finished before unfinished).
std::vector<TokenHypothesis> BeamSearch(const Scorer &scorer, const Utterance &utt,
                                        const DecodeConfig &config, const WeightedFst *lg,
                                        double lm_weight, bool *unfinished);

/// Composes each hypothesis with L and then G and keeps the best word path.
/// total = model_score + lm_weight * log p_LM + coverage_weight * coverage.
/// Hypotheses without a parse are dropped and counted in *dropped.  The
/// result is sorted best first (ties by word sequence).
std::vector<WordHypothesis> NBestRescore(const std::vector<TokenHypothesis> &nbest,
                                         const SymbolTable &alphabet, const WeightedFst &l,
                                         const WeightedFst &g, double lm_weight,
                                         double coverage_weight, int *dropped);

/// Runs the configured fusion strategy end to end.
DecodeResult Decode(const Scorer &scorer, const DecoderResources &resources,
                    const Utterance &utt, const DecodeConfig &config);

/// Decodes every utterance, `jobs` at a time; results keep input order.
std::vector<DecodeResult> DecodeAll(const Scorer &scorer, const DecoderResources &resources,
                                    const std::vector<Utterance> &utts, const DecodeConfig &config,
                                    int jobs = 1);

/// Checks that the scorer and resources fit the config; throws ConfigError.
void CheckDecodeSetup(const Scorer &scorer, const DecoderResources &resources,
                      const DecodeConfig &config);

/// One JSON object: utt, strategy, config echo, n-best with score
/// components, chosen words.
nlohmann::json DecodeResultToJson(const DecodeResult &result, const DecodeConfig &config,
                                  const SymbolTable &alphabet);

}  // namespace phonefuse

#endif  // PHONEFUSE_DECODER_DECODER_H_
