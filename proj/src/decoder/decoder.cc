// src/decoder/decoder.cc

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

#include "decoder/decoder.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "base/error.h"
#include "base/text-utils.h"

namespace phonefuse {

std::string_view FusionName(Fusion f) {
  switch (f) {
    case Fusion::kNone: return "none";
    case Fusion::kNBest: return "nbest";
    case Fusion::kBeam: return "beam";
    case Fusion::kBoth: return "both";
  }
  return "?";
}

Fusion ParseFusion(std::string_view name) {
  for (Fusion f : {Fusion::kNone, Fusion::kNBest, Fusion::kBeam, Fusion::kBoth})
    if (FusionName(f) == name) return f;
  throw ConfigError("unknown fusion strategy '" + std::string(name) + "'");
}

std::string_view CoverageModeName(CoverageMode m) {
  return m == CoverageMode::kAttention ? "attention" : "tokens";
}

CoverageMode ParseCoverageMode(std::string_view name) {
  if (name == "attention") return CoverageMode::kAttention;
  if (name == "tokens") return CoverageMode::kTokens;
  throw ConfigError("unknown coverage mode '" + std::string(name) + "'");
}

std::string_view OutputUnitsName(OutputUnits u) {
  return u == OutputUnits::kPhoneme ? "phoneme" : "grapheme";
}

OutputUnits ParseOutputUnits(std::string_view name) {
  if (name == "phoneme") return OutputUnits::kPhoneme;
  if (name == "grapheme") return OutputUnits::kGrapheme;
  throw ConfigError("unknown output units '" + std::string(name) + "'");
}

void DecodeConfig::Check() const {
  if (beam_width < 1) throw ConfigError("beam width must be >= 1");
  if (max_steps < 1) throw ConfigError("max steps must be >= 1");
  if (nbest_size < 1) throw ConfigError("n-best size must be >= 1");
  for (double w : {lm_weight_beam, lm_weight_nbest, coverage_weight})
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("weights must be finite and >= 0");
  if (!(coverage_threshold >= 0.0)) throw ConfigError("coverage threshold must be >= 0");
}

DecoderResources::DecoderResources(PronLexicon lexicon) : lexicon_(std::move(lexicon)) {
  for (EowMode m : {EowMode::kRequired, EowMode::kOptional})
    l_[static_cast<int>(m)] = std::make_shared<WeightedFst>(CompileL(*lexicon_, m));
}

DecoderResources::DecoderResources(PronLexicon lexicon, WeightedFst g)
    : lexicon_(std::move(lexicon)), g_(std::make_shared<WeightedFst>(std::move(g))) {
  if (!(g_->InputSymbols() == g_->OutputSymbols()))
    throw ConfigError("G must be an acceptor over one word table");
  for (EowMode m : {EowMode::kRequired, EowMode::kOptional}) {
    int i = static_cast<int>(m);
    l_[i] = std::make_shared<WeightedFst>(CompileL(*lexicon_, m, g_->InputSymbolsPtr()));
    lg_[i] = std::make_shared<WeightedFst>(Compose(*l_[i], *g_));
  }
}

const PronLexicon &DecoderResources::lexicon() const {
  if (!lexicon_) throw ConfigError("no lexicon loaded");
  return *lexicon_;
}

const WeightedFst &DecoderResources::L(EowMode mode) const {
  if (!lexicon_) throw ConfigError("no lexicon loaded");
  return *l_[static_cast<int>(mode)];
}

const WeightedFst &DecoderResources::G() const {
  if (!g_) throw ConfigError("no language model loaded");
  return *g_;
}

const WeightedFst &DecoderResources::LG(EowMode mode) const {
  if (!g_) throw ConfigError("no language model loaded");
  return *lg_[static_cast<int>(mode)];
}

namespace {

struct Node {
  TokenHypothesis hyp;
  ScorerStatePtr state;
  StateWeights lm;
};

struct Candidate {
  std::size_t parent;
  Label token;
  TokenHypothesis hyp;
  StateWeights lm;
};

// Full label sequence used for tie-breaking; <eos> (the smallest emittable
// id) is appended to finished hypotheses.
bool Better(const TokenHypothesis &a, const TokenHypothesis &b) {
  if (a.total != b.total) return a.total > b.total;
  std::size_t n = std::min(a.tokens.size(), b.tokens.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a.tokens[i] != b.tokens[i]) return a.tokens[i] < b.tokens[i];
  auto next = [&](const TokenHypothesis &h) -> Label {
    if (h.tokens.size() > n) return h.tokens[n];
    return h.finished ? kEosLabel : -1;
  };
  Label na = next(a), nb = next(b);
  if (na != nb) return na < nb;
  return a.finished && !b.finished;
}

double MinWeight(const StateWeights &s) {
  double w = kInfWeight;
  for (const auto &[st, x] : s) w = std::min(w, x);
  return w;
}

bool HasNegativeWeights(const WeightedFst &f) {
  for (const Arc &a : f.AllArcs())
    if (a.weight < 0) return true;
  for (const auto &[s, w] : f.Finals())
    if (w < 0) return true;
  return false;
}

std::vector<Label> MapToFstInputs(const SymbolTable &alphabet, const WeightedFst &f) {
  std::vector<Label> out(alphabet.size(), -1);
  for (Label j = kEosLabel + 1; j < static_cast<Label>(alphabet.size()); ++j) {
    auto id = f.InputSymbols().Find(alphabet.Symbol(j));
    if (id && *id != kEpsilon) out[j] = *id;
  }
  return out;
}

double AttentionCoverage(const ScorerState &st, double threshold) {
  double n = 0;
  for (double m : st.attention_mass) n += m > threshold;
  return n;
}

}  // namespace

std::vector<TokenHypothesis> BeamSearch(const Scorer &scorer, const Utterance &utt,
                                        const DecodeConfig &config, const WeightedFst *lg,
                                        double lm_weight, bool *unfinished) {
  config.Check();
  const SymbolTable &alphabet = *scorer.alphabet();
  CheckOutputAlphabet(alphabet);
  const Label num_labels = static_cast<Label>(alphabet.size());
  std::vector<Label> to_lg;
  if (lg) {
    to_lg = MapToFstInputs(alphabet, *lg);
    if (std::all_of(to_lg.begin(), to_lg.end(), [](Label l) { return l < 0; }))
      throw ConfigError("scorer alphabet and L o G input alphabet do not intersect");
  }
  const bool monotone = config.coverage_weight == 0.0 &&
                        (!lg || lm_weight == 0.0 || !HasNegativeWeights(*lg));
  const double eta = config.coverage_weight;

  auto session = scorer.Begin(utt);
  std::vector<Node> live(1);
  live[0].state = session->Initial();
  if (lg && lg->NumStates() > 0) live[0].lm = EpsilonClosure(*lg, {{lg->Start(), 0.0}});
  if (lg && live[0].lm.empty()) live.clear();

  std::vector<TokenHypothesis> finished, stuck;
  for (int step = 1; step <= config.max_steps && !live.empty(); ++step) {
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < live.size(); ++i) {
      const Node &node = live[i];
      const auto &probs = node.state->probs;
      if (probs.empty()) {
        stuck.push_back(node.hyp);
        continue;
      }
      const bool by_tokens =
          config.coverage_mode == CoverageMode::kTokens || node.state->attention_mass.empty();
      const double att_cov =
          by_tokens ? 0.0 : AttentionCoverage(*node.state, config.coverage_threshold);
      for (Label y = kEosLabel; y < num_labels; ++y) {
        double p = probs[y];
        if (!(p > 0.0)) continue;
        Candidate c;
        c.parent = i;
        c.token = y;
        TokenHypothesis &h = c.hyp;
        h.model_score = node.hyp.model_score + std::log(p);
        if (y == kEosLabel) {
          h.finished = true;
          if (lg) {
            double fw = BestFinalWeight(*lg, node.lm);
            if (fw == kInfWeight) continue;
            h.lm_score = -fw;
          }
          h.coverage = by_tokens ? static_cast<double>(node.hyp.tokens.size()) : att_cov;
        } else {
          if (lg) {
            if (to_lg[y] < 0) continue;
            c.lm = AdvanceStates(*lg, node.lm, to_lg[y]);
            if (c.lm.empty()) continue;
            h.lm_score = -MinWeight(c.lm);
          }
          h.coverage = by_tokens ? static_cast<double>(node.hyp.tokens.size() + 1) : att_cov;
        }
        h.total = h.model_score + lm_weight * h.lm_score + eta * h.coverage;
        h.tokens = node.hyp.tokens;
        if (y != kEosLabel) h.tokens.push_back(y);
        cands.push_back(std::move(c));
      }
    }
    std::size_t keep = std::min<std::size_t>(cands.size(), config.beam_width);
    std::partial_sort(cands.begin(), cands.begin() + keep, cands.end(),
                      [](const Candidate &a, const Candidate &b) { return Better(a.hyp, b.hyp); });
    std::vector<Node> next;
    for (std::size_t k = 0; k < keep; ++k) {
      Candidate &c = cands[k];
      if (c.hyp.finished) {
        finished.push_back(std::move(c.hyp));
        continue;
      }
      Node n;
      n.state = session->Advance(live[c.parent].state, c.token);
      n.lm = std::move(c.lm);
      n.hyp = std::move(c.hyp);
      next.push_back(std::move(n));
    }
    live = std::move(next);
    if (monotone && static_cast<int>(finished.size()) >= config.nbest_size && !live.empty()) {
      std::sort(finished.begin(), finished.end(), Better);
      double best_live = -INFINITY;
      for (const auto &n : live) best_live = std::max(best_live, n.hyp.total);
      if (finished[config.nbest_size - 1].total > best_live) break;
    }
  }
  for (auto &n : live) stuck.push_back(std::move(n.hyp));

  *unfinished = finished.empty();
  if (finished.empty()) {
    if (stuck.empty()) return {};
    return {*std::min_element(stuck.begin(), stuck.end(), Better)};
  }
  std::sort(finished.begin(), finished.end(), Better);
  if (static_cast<int>(finished.size()) > config.nbest_size) finished.resize(config.nbest_size);
  return finished;
}

namespace {

std::vector<std::string> TokenStrings(const SymbolTable &alphabet, const std::vector<Label> &t) {
  std::vector<std::string> out;
  for (Label l : t) out.push_back(alphabet.Symbol(l));
  return out;
}

// Word path for a token sequence through `cascade` (L o G, or L then G).
// With `by_lm` the cheapest path wins; otherwise the LM has no say and the
// lexicographically smallest word sequence is taken, scored by its own best
// path.  Returns false when there is no parse.
bool BestWordPath(const SymbolTable &alphabet, const std::vector<Label> &tokens,
                  const std::vector<const WeightedFst *> &cascade, bool by_lm,
                  std::vector<std::string> *words, double *weight) {
  const WeightedFst &first = *cascade.front();
  std::vector<Label> ids;
  for (Label t : tokens) {
    auto id = first.InputSymbols().Find(alphabet.Symbol(t));
    if (!id || *id == kEpsilon) return false;
    ids.push_back(*id);
  }
  WeightedFst c = LinearAcceptor(ids, first.InputSymbolsPtr());
  for (const WeightedFst *f : cascade) {
    c = Compose(c, *f);
    if (c.NumStates() == 0) return false;
  }
  std::vector<Label> olabels;
  if (by_lm) {
    auto paths = ShortestPaths(c, 1);
    if (paths.empty()) return false;
    olabels = paths[0].olabels;
    *weight = paths[0].weight;
  } else {
    std::vector<Arc> arcs(c.AllArcs().begin(), c.AllArcs().end());
    for (Arc &a : arcs) a.weight = 0.0;
    auto finals = c.Finals();
    for (auto &f : finals) f.second = 0.0;
    auto flat = BuildFst(c.NumStates(), c.Start(), std::move(arcs), std::move(finals),
                         c.InputSymbolsPtr(), c.OutputSymbolsPtr());
    auto paths = ShortestPaths(flat, 1);
    if (paths.empty()) return false;
    olabels = paths[0].olabels;
    auto scored = ShortestPaths(Compose(c, LinearAcceptor(olabels, c.OutputSymbolsPtr())), 1);
    *weight = scored.at(0).weight;
  }
  words->clear();
  for (Label w : olabels) words->push_back(c.OutputSymbols().Symbol(w));
  return true;
}

bool WordBetter(const WordHypothesis &a, const WordHypothesis &b) {
  if (a.total != b.total) return a.total > b.total;
  if (a.words != b.words) return a.words < b.words;
  return a.source < b.source;
}

std::vector<std::string> SplitAt(const std::vector<std::string> &tokens, std::string_view sep,
                                 std::string_view joiner) {
  std::vector<std::string> words;
  std::string cur;
  bool open = false;
  for (const auto &t : tokens) {
    if (t == sep) {
      if (open) words.push_back(cur);
      cur.clear();
      open = false;
    } else {
      if (open) cur += joiner;
      cur += t;
      open = true;
    }
  }
  if (open) words.push_back(cur);
  return words;
}

}  // namespace

std::vector<WordHypothesis> NBestRescore(const std::vector<TokenHypothesis> &nbest,
                                         const SymbolTable &alphabet, const WeightedFst &l,
                                         const WeightedFst &g, double lm_weight,
                                         double coverage_weight, int *dropped) {
  std::vector<WordHypothesis> out;
  for (std::size_t i = 0; i < nbest.size(); ++i) {
    const auto &h = nbest[i];
    WordHypothesis w;
    double weight;
    if (!BestWordPath(alphabet, h.tokens, {&l, &g}, lm_weight > 0.0, &w.words, &weight)) {
      ++*dropped;
      continue;
    }
    w.model_score = h.model_score;
    w.lm_score = -weight;
    w.coverage = h.coverage;
    w.total = h.model_score + lm_weight * w.lm_score + coverage_weight * h.coverage;
    w.source = i;
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end(), WordBetter);
  return out;
}

void CheckDecodeSetup(const Scorer &scorer, const DecoderResources &resources,
                      const DecodeConfig &config) {
  config.Check();
  const SymbolTable &alphabet = *scorer.alphabet();
  CheckOutputAlphabet(alphabet);
  if (config.fusion == Fusion::kNone) return;
  if (config.units == OutputUnits::kGrapheme)
    throw ConfigError("fusion '" + std::string(FusionName(config.fusion)) +
                      "' needs phoneme output units");
  if (!resources.has_lexicon() || !resources.has_lm())
    throw ConfigError("fusion '" + std::string(FusionName(config.fusion)) +
                      "' needs a lexicon and a language model");
  const WeightedFst &l = resources.L(config.eow_mode);
  auto mapped = MapToFstInputs(alphabet, l);
  if (std::all_of(mapped.begin(), mapped.end(), [](Label x) { return x < 0; }))
    throw ConfigError("scorer alphabet shares no symbol with the lexicon phone set");
  for (std::size_t p = 1; p < l.InputSymbols().size(); ++p)
    if (!alphabet.Contains(l.InputSymbols().Symbol(static_cast<Label>(p))))
      throw ConfigError("phone '" + l.InputSymbols().Symbol(static_cast<Label>(p)) +
                        "' is missing from the scorer alphabet");
}

DecodeResult Decode(const Scorer &scorer, const DecoderResources &resources,
                    const Utterance &utt, const DecodeConfig &config) {
  CheckDecodeSetup(scorer, resources, config);
  const SymbolTable &alphabet = *scorer.alphabet();
  DecodeResult r;
  r.utt_id = utt.id;
  switch (config.fusion) {
    case Fusion::kNone: {
      r.nbest = BeamSearch(scorer, utt, config, nullptr, 0.0, &r.unfinished);
      for (std::size_t i = 0; i < r.nbest.size(); ++i) {
        const auto &h = r.nbest[i];
        WordHypothesis w;
        auto toks = TokenStrings(alphabet, h.tokens);
        if (config.units == OutputUnits::kGrapheme) {
          w.words = SplitAt(toks, kSpaceSymbol, "");
        } else {
          std::vector<std::vector<std::string>> parses;
          if (resources.has_lexicon()) {
            try {
              parses = PhonesToWords(resources.L(config.eow_mode), toks);
            } catch (const Error &) {
            }
          }
          w.words = parses.empty() ? SplitAt(toks, kEowSymbol, "_") : parses.front();
        }
        w.model_score = h.model_score;
        w.coverage = h.coverage;
        w.total = h.total;
        w.source = i;
        r.words.push_back(std::move(w));
      }
      break;
    }
    case Fusion::kBeam: {
      const WeightedFst &lg = resources.LG(config.eow_mode);
      r.nbest = BeamSearch(scorer, utt, config, &lg, config.lm_weight_beam, &r.unfinished);
      for (std::size_t i = 0; i < r.nbest.size(); ++i) {
        const auto &h = r.nbest[i];
        WordHypothesis w;
        double weight;
        if (!h.finished || !BestWordPath(alphabet, h.tokens, {&lg}, config.lm_weight_beam > 0.0, &w.words,
                                         &weight)) {
          ++r.dropped;
          continue;
        }
        w.model_score = h.model_score;
        w.lm_score = -weight;
        w.coverage = h.coverage;
        w.total = h.total;
        w.source = i;
        r.words.push_back(std::move(w));
      }
      std::stable_sort(r.words.begin(), r.words.end(), WordBetter);
      break;
    }
    case Fusion::kNBest:
    case Fusion::kBoth: {
      const bool both = config.fusion == Fusion::kBoth;
      const double lam_beam = both ? config.lm_weight_beam : 0.0;
      const WeightedFst *lg = lam_beam > 0.0 ? &resources.LG(config.eow_mode) : nullptr;
      r.nbest = BeamSearch(scorer, utt, config, lg, lam_beam, &r.unfinished);
      r.words = NBestRescore(r.nbest, alphabet, resources.L(config.eow_mode), resources.G(),
                             lam_beam + config.lm_weight_nbest, config.coverage_weight,
                             &r.dropped);
      break;
    }
  }
  return r;
}

std::vector<DecodeResult> DecodeAll(const Scorer &scorer, const DecoderResources &resources,
                                    const std::vector<Utterance> &utts, const DecodeConfig &config,
                                    int jobs) {
  CheckDecodeSetup(scorer, resources, config);
  std::vector<DecodeResult> out(utts.size());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(utts.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < utts.size(); ++i) out[i] = Decode(scorer, resources, utts[i], config);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (int j = 0; j < jobs; ++j) {
    workers.emplace_back([&, j] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < utts.size();)
          out[i] = Decode(scorer, resources, utts[i], config);
      } catch (...) {
        errors[j] = std::current_exception();
        next = utts.size();
      }
    });
  }
  for (auto &w : workers) w.join();
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

namespace {

nlohmann::json Num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

}  // namespace

nlohmann::json DecodeResultToJson(const DecodeResult &result, const DecodeConfig &config,
                                  const SymbolTable &alphabet) {
  nlohmann::json j;
  j["utt"] = result.utt_id;
  j["strategy"] = FusionName(config.fusion);
  j["config"] = {{"lm_weight_beam", config.lm_weight_beam},
                 {"lm_weight_nbest", config.lm_weight_nbest},
                 {"coverage_weight", config.coverage_weight},
                 {"coverage_mode", CoverageModeName(config.coverage_mode)},
                 {"beam_width", config.beam_width},
                 {"nbest", config.nbest_size},
                 {"max_steps", config.max_steps},
                 {"eow_mode", EowModeName(config.eow_mode)},
                 {"units", OutputUnitsName(config.units)}};
  nlohmann::json nb = nlohmann::json::array();
  for (const auto &h : result.nbest)
    nb.push_back({{"tokens", Join(TokenStrings(alphabet, h.tokens))},
                  {"finished", h.finished},
                  {"model", Num(h.model_score)},
                  {"lm", Num(h.lm_score)},
                  {"coverage", Num(h.coverage)},
                  {"total", Num(h.total)}});
  j["nbest"] = nb;
  nlohmann::json wh = nlohmann::json::array();
  for (const auto &w : result.words)
    wh.push_back({{"words", Join(w.words)},
                  {"model", Num(w.model_score)},
                  {"lm", Num(w.lm_score)},
                  {"coverage", Num(w.coverage)},
                  {"total", Num(w.total)},
                  {"source", w.source}});
  j["hypotheses"] = wh;
  j["words"] = Join(result.BestWords());
  j["dropped"] = result.dropped;
  j["unfinished"] = result.unfinished;
  return j;
}

}  // namespace phonefuse
