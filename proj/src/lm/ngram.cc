// src/lm/ngram.cc

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

#include "lm/ngram.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <unordered_map>

#include "base/error.h"
#include "base/text-utils.h"

namespace phonefuse {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLn10 = 2.302585092994045684017991454684364208;
constexpr double kArpaLogZero = -99.0;

const char *kBos = "<s>";
const char *kEos = "</s>";
const char *kUnk = "<unk>";

double LogProbImpl(int order, const std::map<NGramModel::NGram, double> &probs,
                   const std::map<NGramModel::NGram, double> &backoffs,
                   std::span<const Label> context, Label word) {
  std::size_t keep = std::min<std::size_t>(context.size(), order - 1);
  context = context.subspan(context.size() - keep);
  double acc = 0.0;
  for (std::size_t start = 0; start <= context.size(); ++start) {
    NGramModel::NGram key(context.begin() + start, context.end());
    key.push_back(word);
    auto it = probs.find(key);
    if (it != probs.end()) return acc + it->second;
    if (start == context.size()) break;
    key.pop_back();
    auto bo = backoffs.find(key);
    if (bo != backoffs.end()) acc += bo->second;
    if (acc == kNegInf) return kNegInf;
  }
  return kNegInf;
}

SymbolTablePtr CanonicalVocab(const std::set<std::string> &words, bool with_unk) {
  auto vocab = std::make_shared<SymbolTable>();
  vocab->AddSymbol(kBos);
  vocab->AddSymbol(kEos);
  if (with_unk) vocab->AddSymbol(kUnk);
  for (const auto &w : words)
    if (w != kBos && w != kEos && w != kUnk) vocab->AddSymbol(w);
  return vocab;
}

}  // namespace

std::string_view SmoothingName(Smoothing s) {
  return s == Smoothing::kMle ? "mle" : "absdisc";
}

Smoothing ParseSmoothing(std::string_view name) {
  if (name == "mle") return Smoothing::kMle;
  if (name == "absdisc") return Smoothing::kAbsoluteDiscount;
  throw ConfigError("unknown smoothing '" + std::string(name) + "'");
}

NGramModel::NGramModel(int order, SymbolTablePtr vocab, std::map<NGram, double> log_probs,
                       std::map<NGram, double> log_backoffs)
    : order_(order),
      vocab_(std::move(vocab)),
      log_probs_(std::move(log_probs)),
      log_backoffs_(std::move(log_backoffs)) {
  if (order_ < 1) throw Error("n-gram order must be >= 1");
  bos_ = vocab_->FindOrThrow(kBos);
  eos_ = vocab_->FindOrThrow(kEos);
  unk_ = vocab_->Find(kUnk).value_or(kEpsilon);
  for (const auto &[ng, lp] : log_probs_) {
    if (ng.empty() || static_cast<int>(ng.size()) > order_)
      throw Error("n-gram length outside 1..order");
    if (ng.size() > 1 && !log_probs_.count(NGram(ng.begin(), ng.end() - 1)))
      throw Error("n-gram context missing for '" + vocab_->Symbol(ng.back()) + "'");
  }
  for (const auto &[ctx, bo] : log_backoffs_)
    if (!log_probs_.count(ctx)) throw Error("backoff given for an unknown context");
}

double NGramModel::LogProb(std::span<const Label> context, Label word) const {
  return LogProbImpl(order_, log_probs_, log_backoffs_, context, word);
}

double NGramModel::ScoreSequence(const std::vector<std::string> &words) const {
  std::vector<Label> ids{bos_};
  for (const auto &w : words) {
    auto id = vocab_->Find(w);
    if (!id || *id == bos_ || *id == eos_) {
      if (unk_ == kEpsilon) return kNegInf;
      id = unk_;
    }
    ids.push_back(*id);
  }
  ids.push_back(eos_);
  double total = 0.0;
  for (std::size_t i = 1; i < ids.size(); ++i)
    total += LogProb(std::span<const Label>(ids.data(), i), ids[i]);
  return total;
}

std::vector<Label> NGramModel::PredictableLabels() const {
  std::vector<Label> out;
  for (Label l = 1; l < static_cast<Label>(vocab_->size()); ++l)
    if (l != bos_) out.push_back(l);
  return out;
}

NGramModel TrainNGram(const std::vector<std::vector<std::string>> &corpus,
                      const NGramTrainOptions &opts) {
  if (corpus.empty()) throw Error("cannot train an n-gram model on an empty corpus");
  if (opts.order < 1 || opts.order > 4) throw Error("n-gram order must be in 1..4");
  const bool mle = opts.smoothing == Smoothing::kMle;
  const double d = opts.discount;
  if (!mle && !(d > 0.0 && d < 1.0)) throw Error("discount must be in (0, 1)");

  std::map<std::string, int> word_counts;
  for (const auto &s : corpus)
    for (const auto &w : s) {
      if (w == kBos || w == kEos || w == SymbolTable::kEpsilonSymbol)
        throw Error("reserved token '" + w + "' in training corpus");
      ++word_counts[w];
    }
  std::set<std::string> words;
  for (const auto &[w, c] : word_counts)
    if (!(opts.use_unk && c == 1)) words.insert(w);
  SymbolTablePtr vocab = CanonicalVocab(words, opts.use_unk);
  const Label bos = vocab->FindOrThrow(kBos), eos = vocab->FindOrThrow(kEos);
  const Label unk = vocab->Find(kUnk).value_or(kEpsilon);

  const int order = opts.order;
  std::vector<std::map<NGramModel::NGram, double>> counts(order + 1);
  for (const auto &s : corpus) {
    std::vector<Label> ids{bos};
    for (const auto &w : s) {
      auto id = vocab->Find(w);
      ids.push_back(id ? *id : unk);
    }
    ids.push_back(eos);
    for (std::size_t i = 1; i < ids.size(); ++i)
      for (int k = 1; k <= order && static_cast<int>(i) - k + 1 >= 0; ++k)
        counts[k][NGramModel::NGram(ids.begin() + (i - k + 1), ids.begin() + i + 1)] += 1.0;
  }

  std::map<NGramModel::NGram, double> probs, backoffs;
  // Unigrams.
  {
    double total = 0.0;
    for (const auto &[ng, c] : counts[1]) total += c;
    const double types = static_cast<double>(counts[1].size());
    const double predictable = static_cast<double>(vocab->size() - 2);
    for (Label w = 1; w < static_cast<Label>(vocab->size()); ++w) {
      if (w == bos) continue;
      auto it = counts[1].find({w});
      double c = it == counts[1].end() ? 0.0 : it->second;
      double p = mle ? c / total
                     : std::max(c - d, 0.0) / total + (d * types / total) / predictable;
      if (p > 0.0) probs[{w}] = std::log(p);
    }
    probs[{bos}] = kNegInf;
  }
  // Higher orders, each interpolated with the finished lower-order model.
  for (int k = 2; k <= order; ++k) {
    std::map<NGramModel::NGram, std::pair<double, double>> ctx_stats;  // total, types
    for (const auto &[ng, c] : counts[k]) {
      auto &st = ctx_stats[NGramModel::NGram(ng.begin(), ng.end() - 1)];
      st.first += c;
      st.second += 1.0;
    }
    std::map<NGramModel::NGram, double> new_probs;
    for (const auto &[ng, c] : counts[k]) {
      NGramModel::NGram ctx(ng.begin(), ng.end() - 1);
      const auto &[total, types] = ctx_stats.at(ctx);
      double p;
      if (mle) {
        p = c / total;
      } else {
        double gamma = d * types / total;
        double lower = LogProbImpl(k - 1, probs, backoffs,
                                   std::span<const Label>(ctx).subspan(1), ng.back());
        p = (c - d) / total + gamma * std::exp(lower);
      }
      new_probs[ng] = std::log(p);
    }
    for (const auto &[ctx, st] : ctx_stats)
      backoffs[ctx] = mle ? kNegInf : std::log(d * st.second / st.first);
    probs.merge(new_probs);
  }
  return NGramModel(order, vocab, std::move(probs), std::move(backoffs));
}

namespace {

std::string FormatLog10(double ln) {
  if (ln == kNegInf) return "-99";
  return FormatDouble(ln / kLn10);
}

double ParseLog10(const std::string &field, std::size_t lineno) {
  double v;
  if (!ParseDouble(field, &v)) throw ParseError("bad log10 value '" + field + "'", lineno);
  return v <= kArpaLogZero ? kNegInf : v * kLn10;
}

}  // namespace

void WriteArpa(const NGramModel &lm, std::ostream &os) {
  std::vector<std::vector<const NGramModel::NGram *>> by_order(lm.order() + 1);
  for (const auto &[ng, lp] : lm.log_probs()) by_order[ng.size()].push_back(&ng);
  os << "\\data\\\n";
  for (int k = 1; k <= lm.order(); ++k) os << "ngram " << k << "=" << by_order[k].size() << "\n";
  for (int k = 1; k <= lm.order(); ++k) {
    os << "\n\\" << k << "-grams:\n";
    for (const auto *ng : by_order[k]) {
      os << FormatLog10(lm.log_probs().at(*ng)) << '\t';
      for (std::size_t i = 0; i < ng->size(); ++i)
        os << (i ? " " : "") << lm.vocab().Symbol((*ng)[i]);
      auto bo = lm.log_backoffs().find(*ng);
      if (bo != lm.log_backoffs().end()) os << '\t' << FormatLog10(bo->second);
      os << '\n';
    }
  }
  os << "\n\\end\\\n";
}

void WriteArpa(const NGramModel &lm, const std::string &path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path);
  WriteArpa(lm, os);
}

NGramModel ReadArpa(std::istream &is) {
  struct Entry {
    std::vector<std::string> words;
    double log_prob;
    std::optional<double> log_backoff;
  };
  std::vector<Entry> entries;
  std::map<int, long> declared;
  int section = -1;  // -1: before \data\, 0: in \data\, k: in \k-grams:
  bool ended = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto t = Trim(line);
    if (t.empty()) continue;
    if (ended) throw ParseError("content after \\end\\", lineno);
    if (t == "\\data\\") {
      section = 0;
      continue;
    }
    if (t == "\\end\\") {
      ended = true;
      continue;
    }
    if (t.front() == '\\') {
      long k;
      auto dash = t.find("-grams:");
      if (dash == std::string_view::npos || !ParseInt(t.substr(1, dash - 1), &k) || k < 1)
        throw ParseError("bad section header '" + std::string(t) + "'", lineno);
      section = static_cast<int>(k);
      continue;
    }
    if (section < 0) throw ParseError("missing \\data\\ header", lineno);
    if (section == 0) {
      long k, n;
      auto eq = t.find('=');
      if (t.substr(0, 6) != "ngram " || eq == std::string_view::npos ||
          !ParseInt(Trim(t.substr(6, eq - 6)), &k) || !ParseInt(Trim(t.substr(eq + 1)), &n))
        throw ParseError("bad count line '" + std::string(t) + "'", lineno);
      declared[static_cast<int>(k)] = n;
      continue;
    }
    auto fields = SplitFields(t);
    const std::size_t k = section;
    if (fields.size() != k + 1 && fields.size() != k + 2)
      throw ParseError("expected " + std::to_string(k) + " words", lineno);
    Entry e;
    e.log_prob = ParseLog10(fields[0], lineno);
    e.words.assign(fields.begin() + 1, fields.begin() + 1 + k);
    if (fields.size() == k + 2) e.log_backoff = ParseLog10(fields.back(), lineno);
    entries.push_back(std::move(e));
  }
  if (!ended) throw ParseError("missing \\end\\");
  if (declared.empty()) throw ParseError("no ngram counts in \\data\\");

  std::map<int, long> seen;
  std::set<std::string> words;
  int order = 0;
  for (const auto &e : entries) {
    ++seen[static_cast<int>(e.words.size())];
    order = std::max(order, static_cast<int>(e.words.size()));
    if (e.words.size() == 1) words.insert(e.words[0]);
  }
  for (const auto &[k, n] : declared) {
    if (seen[k] != n)
      throw ParseError("section " + std::to_string(k) + " declares " + std::to_string(n) +
                       " n-grams but has " + std::to_string(seen[k]));
    order = std::max(order, k);
  }
  SymbolTablePtr vocab = CanonicalVocab(words, words.count(kUnk) > 0);
  std::map<NGramModel::NGram, double> probs, backoffs;
  for (const auto &e : entries) {
    NGramModel::NGram ng;
    for (const auto &w : e.words) {
      auto id = vocab->Find(w);
      if (!id) throw ParseError("word '" + w + "' has no unigram entry");
      ng.push_back(*id);
    }
    probs[ng] = e.log_prob;
    if (e.log_backoff) backoffs[ng] = *e.log_backoff;
  }
  return NGramModel(order, vocab, std::move(probs), std::move(backoffs));
}

NGramModel ReadArpa(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open ARPA file " + path);
  return ReadArpa(is);
}

WeightedFst LmToFst(const NGramModel &lm) {
  using NGram = NGramModel::NGram;
  std::set<NGram> contexts{{}};
  for (const auto &[ctx, bo] : lm.log_backoffs()) contexts.insert(ctx);
  for (const auto &[ng, lp] : lm.log_probs())
    if (ng.size() > 1) contexts.insert(NGram(ng.begin(), ng.end() - 1));

  FstBuilder b(lm.vocab_ptr(), lm.vocab_ptr());
  std::map<NGram, StateId> state;
  for (const auto &ctx : contexts) state[ctx] = b.AddState();
  auto longest_suffix_state = [&](NGram h) {
    const std::size_t max_len = lm.order() - 1;
    if (h.size() > max_len) h.erase(h.begin(), h.end() - max_len);
    while (!state.count(h)) h.erase(h.begin());
    return state.at(h);
  };
  b.SetStart(lm.order() > 1 && state.count({lm.bos()}) ? state.at({lm.bos()}) : state.at({}));

  for (const auto &[ng, lp] : lm.log_probs()) {
    if (lp == kNegInf) continue;
    NGram ctx(ng.begin(), ng.end() - 1);
    Label w = ng.back();
    if (w == lm.bos()) continue;
    StateId src = state.at(ctx);
    if (w == lm.eos()) {
      b.SetFinal(src, -lp);
    } else {
      b.AddArc(src, longest_suffix_state(ng), w, w, -lp);
    }
  }
  for (const auto &ctx : contexts) {
    if (ctx.empty()) continue;
    auto bo = lm.log_backoffs().find(ctx);
    double lbo = bo == lm.log_backoffs().end() ? 0.0 : bo->second;
    if (lbo == kNegInf) continue;
    b.AddArc(state.at(ctx), longest_suffix_state(NGram(ctx.begin() + 1, ctx.end())), kEpsilon,
             kEpsilon, -lbo);
  }
  return b.Build();
}

std::vector<std::string> SampleSentence(const NGramModel &lm, std::mt19937_64 &rng,
                                        int max_words) {
  const auto labels = lm.PredictableLabels();
  std::vector<Label> ctx{lm.bos()};
  std::vector<std::string> out;
  std::vector<double> p(labels.size());
  while (static_cast<int>(out.size()) < max_words) {
    for (std::size_t i = 0; i < labels.size(); ++i) p[i] = std::exp(lm.LogProb(ctx, labels[i]));
    std::discrete_distribution<std::size_t> dist(p.begin(), p.end());
    Label w = labels[dist(rng)];
    if (w == lm.eos()) break;
    out.push_back(lm.vocab().Symbol(w));
    ctx.push_back(w);
  }
  return out;
}

}  // namespace phonefuse
