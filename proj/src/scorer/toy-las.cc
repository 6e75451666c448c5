// src/scorer/toy-las.cc

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

#include "scorer/toy-las.h"

#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>

#include "base/error.h"
#include "base/text-utils.h"

namespace phonefuse {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMatMap = Eigen::Map<const Mat>;
using MatMap = Eigen::Map<Mat>;
using CVecMap = Eigen::Map<const Vec>;
using VecMap = Eigen::Map<Vec>;

CMatMap M(const Vec &p, const ParamBlock &b) { return CMatMap(p.data() + b.offset, b.rows, b.cols); }
MatMap M(Vec &p, const ParamBlock &b) { return MatMap(p.data() + b.offset, b.rows, b.cols); }
CVecMap V(const Vec &p, const ParamBlock &b) { return CVecMap(p.data() + b.offset, b.rows); }
VecMap V(Vec &p, const ParamBlock &b) { return VecMap(p.data() + b.offset, b.rows); }

Vec Sigmoid(const Vec &a) { return (1.0 / (1.0 + (-a.array()).exp())).matrix(); }

// Softmax over emittable outputs; <eps> and <sos> get exactly zero.
Vec MaskedSoftmax(const Vec &logits) {
  Vec p = Vec::Zero(logits.size());
  double mx = logits.tail(logits.size() - 2).maxCoeff();
  double z = 0.0;
  for (Eigen::Index j = 2; j < logits.size(); ++j) z += (p[j] = std::exp(logits[j] - mx));
  p /= z;
  return p;
}

struct CellBlocks {
  const ParamBlock *Wf, *Uf, *bf, *Wc, *Uc, *bc;
};

CellBlocks CellFor(const ToyLasModel &m, const std::string &prefix) {
  return {&m.Block(prefix + ".Wf"), &m.Block(prefix + ".Uf"), &m.Block(prefix + ".bf"),
          &m.Block(prefix + ".Wc"), &m.Block(prefix + ".Uc"), &m.Block(prefix + ".bc")};
}

struct CellCache {
  Vec x, h_prev, f, r, g;
};

Vec CellForward(const Vec &p, const CellBlocks &c, const Vec &x, const Vec &h,
                CellCache *cache = nullptr) {
  Vec f = Sigmoid(M(p, *c.Wf) * x + M(p, *c.Uf) * h + V(p, *c.bf));
  Vec r = f.cwiseProduct(h);
  Vec g = (M(p, *c.Wc) * x + M(p, *c.Uc) * r + V(p, *c.bc)).array().tanh().matrix();
  Vec out = h + f.cwiseProduct(g - h);
  if (cache) *cache = {x, h, f, r, g};
  return out;
}

// Adds parameter gradients to `grad`; returns dL/dx and sets *dh_prev.
Vec CellBackward(const Vec &p, const CellBlocks &c, const CellCache &k, const Vec &dh, Vec *grad,
                 Vec *dh_prev) {
  Vec df = dh.cwiseProduct(k.g - k.h_prev);
  Vec dg = dh.cwiseProduct(k.f);
  *dh_prev = dh.cwiseProduct(Vec::Ones(dh.size()) - k.f);
  Vec dac = dg.cwiseProduct((1.0 - k.g.array().square()).matrix());
  M(*grad, *c.Wc) += dac * k.x.transpose();
  M(*grad, *c.Uc) += dac * k.r.transpose();
  V(*grad, *c.bc) += dac;
  Vec dx = M(p, *c.Wc).transpose() * dac;
  Vec dr = M(p, *c.Uc).transpose() * dac;
  *dh_prev += dr.cwiseProduct(k.f);
  df += dr.cwiseProduct(k.h_prev);
  Vec daf = df.cwiseProduct((k.f.array() * (1.0 - k.f.array())).matrix());
  M(*grad, *c.Wf) += daf * k.x.transpose();
  M(*grad, *c.Uf) += daf * k.h_prev.transpose();
  V(*grad, *c.bf) += daf;
  dx += M(p, *c.Wf).transpose() * daf;
  *dh_prev += M(p, *c.Uf).transpose() * daf;
  return dx;
}

struct HeadBlocks {
  const ParamBlock *W, *U, *b, *v;
};

struct HeadCache {
  Mat z;      // att_dim x T
  Vec alpha;  // T
};

// h_enc is T x enc_hidden.  Returns the head context.
Vec HeadForward(const Vec &p, const HeadBlocks &hb, const Mat &h_enc, const Vec &query,
                HeadCache *cache) {
  Vec bias = M(p, *hb.U) * query + V(p, *hb.b);
  Mat pre = (M(p, *hb.W) * h_enc.transpose()).colwise() + bias;
  Mat z = pre.array().tanh().matrix();
  Vec e = z.transpose() * V(p, *hb.v);
  Vec alpha = (e.array() - e.maxCoeff()).exp().matrix();
  alpha /= alpha.sum();
  Vec ctx = h_enc.transpose() * alpha;
  cache->z = std::move(z);
  cache->alpha = std::move(alpha);
  return ctx;
}

void HeadBackward(const Vec &p, const HeadBlocks &hb, const HeadCache &k, const Mat &h_enc,
                  const Vec &query, const Vec &dctx, Vec *grad, Mat *dh_enc, Vec *dquery) {
  Vec dalpha = h_enc * dctx;
  *dh_enc += k.alpha * dctx.transpose();
  Vec de = k.alpha.cwiseProduct((dalpha.array() - k.alpha.dot(dalpha)).matrix());
  V(*grad, *hb.v) += k.z * de;
  Mat dz = V(p, *hb.v) * de.transpose();
  Mat dpre = dz.cwiseProduct((1.0 - k.z.array().square()).matrix());
  M(*grad, *hb.W) += dpre * h_enc;
  *dh_enc += dpre.transpose() * M(p, *hb.W);
  Vec dsum = dpre.rowwise().sum();
  M(*grad, *hb.U) += dsum * query.transpose();
  V(*grad, *hb.b) += dsum;
  *dquery += M(p, *hb.U).transpose() * dsum;
}

std::vector<HeadBlocks> HeadsFor(const ToyLasModel &m) {
  std::vector<HeadBlocks> out;
  for (int k = 0; k < m.config().heads; ++k) {
    std::string pre = "att" + std::to_string(k);
    out.push_back({&m.Block(pre + ".W"), &m.Block(pre + ".U"), &m.Block(pre + ".b"),
                   &m.Block(pre + ".v")});
  }
  return out;
}

}  // namespace

void ToyLasConfig::Check() const {
  if (input_dim < 1 || enc_hidden < 1 || att_dim < 1 || dec_hidden < 1 || embed_dim < 1 ||
      heads < 1)
    throw ConfigError("model dimensions must be positive");
  if (enc_layers < 1 || enc_layers > 2) throw ConfigError("encoder layers must be 1 or 2");
}

ToyLasModel::ToyLasModel(const ToyLasConfig &config, SymbolTablePtr alphabet)
    : config_(config), alphabet_(std::move(alphabet)) {
  config_.Check();
  CheckOutputAlphabet(*alphabet_);
  Eigen::Index offset = 0;
  auto add = [&](const std::string &name, int rows, int cols) {
    layout_.push_back({name, rows, cols, offset});
    offset += static_cast<Eigen::Index>(rows) * cols;
  };
  auto add_cell = [&](const std::string &pre, int in, int hid) {
    add(pre + ".Wf", hid, in);
    add(pre + ".Uf", hid, hid);
    add(pre + ".bf", hid, 1);
    add(pre + ".Wc", hid, in);
    add(pre + ".Uc", hid, hid);
    add(pre + ".bc", hid, 1);
  };
  const int h = config_.enc_hidden, ctx = config_.heads * h, v = num_outputs();
  for (int l = 0; l < config_.enc_layers; ++l)
    add_cell("enc" + std::to_string(l), l == 0 ? config_.input_dim : h, h);
  for (int k = 0; k < config_.heads; ++k) {
    std::string pre = "att" + std::to_string(k);
    add(pre + ".W", config_.att_dim, h);
    add(pre + ".U", config_.att_dim, config_.dec_hidden);
    add(pre + ".b", config_.att_dim, 1);
    add(pre + ".v", config_.att_dim, 1);
  }
  add("dec.E", config_.embed_dim, v);
  add_cell("dec", config_.embed_dim + ctx, config_.dec_hidden);
  add("out.W", v, config_.dec_hidden + ctx);
  add("out.b", v, 1);
  params_ = Vec::Zero(offset);
}

const ParamBlock &ToyLasModel::Block(const std::string &name) const {
  for (const auto &b : layout_)
    if (b.name == name) return b;
  throw Error("no parameter block '" + name + "'");
}

void ToyLasModel::InitRandom(std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  for (Eigen::Index i = 0; i < params_.size(); ++i) params_[i] = u(rng);
}

Mat ToyLasModel::Encode(const Mat &features) const {
  if (features.rows() < 1) throw Error("cannot encode an empty utterance");
  if (features.cols() != config_.input_dim)
    throw Error("feature dimension " + std::to_string(features.cols()) + " does not match model " +
                std::to_string(config_.input_dim));
  Mat in = features;
  for (int l = 0; l < config_.enc_layers; ++l) {
    CellBlocks c = CellFor(*this, "enc" + std::to_string(l));
    Mat out(in.rows(), config_.enc_hidden);
    Vec h = Vec::Zero(config_.enc_hidden);
    for (Eigen::Index t = 0; t < in.rows(); ++t) {
      h = CellForward(params_, c, in.row(t).transpose(), h);
      out.row(t) = h.transpose();
    }
    in = std::move(out);
  }
  return in;
}

ToyLasModel::Attention ToyLasModel::Attend(const Mat &h_enc, const Vec &query) const {
  if (h_enc.cols() != config_.enc_hidden || query.size() != config_.dec_hidden)
    throw Error("attention input has the wrong shape");
  auto heads = HeadsFor(*this);
  Attention a;
  a.context.resize(config_.heads * config_.enc_hidden);
  a.weights.resize(config_.heads, h_enc.rows());
  for (int k = 0; k < config_.heads; ++k) {
    HeadCache hc;
    a.context.segment(k * config_.enc_hidden, config_.enc_hidden) =
        HeadForward(params_, heads[k], h_enc, query, &hc);
    a.weights.row(k) = hc.alpha.transpose();
  }
  return a;
}

ToyLasModel::DecoderState ToyLasModel::InitialState(const Mat &h_enc) const {
  return {Vec::Zero(config_.dec_hidden), Vec::Zero(config_.heads * config_.enc_hidden),
          Vec::Zero(h_enc.rows())};
}

ToyLasModel::StepOutput ToyLasModel::DecodeStep(const Mat &h_enc, const DecoderState &state,
                                                Label y_prev) const {
  if (y_prev < kSosLabel || y_prev >= num_outputs() || y_prev == kEosLabel)
    throw Error("invalid previous symbol id " + std::to_string(y_prev));
  Attention a = Attend(h_enc, state.s);
  Vec u(config_.embed_dim + a.context.size());
  u << M(params_, Block("dec.E")).col(y_prev), a.context;
  Vec s = CellForward(params_, CellFor(*this, "dec"), u, state.s);
  Vec o(s.size() + a.context.size());
  o << s, a.context;
  Vec logits = M(params_, Block("out.W")) * o + V(params_, Block("out.b"));
  StepOutput out;
  out.probs = MaskedSoftmax(logits);
  out.next.s = std::move(s);
  out.next.context = std::move(a.context);
  out.next.attention_mass = state.attention_mass + a.weights.colwise().mean().transpose();
  return out;
}

double ToyLasModel::Loss(const Utterance &utt, Vec *grad) const {
  const auto &ref = utt.reference;
  if (ref.empty() || ref.back() != kEosLabel) throw Error("reference must end in <eos>");
  for (std::size_t i = 0; i < ref.size(); ++i)
    if (!IsEmittable(ref[i]) || ref[i] >= num_outputs() ||
        (ref[i] == kEosLabel && i + 1 != ref.size()))
      throw Error("invalid reference token in utterance '" + utt.id + "'");
  if (grad && grad->size() != params_.size()) throw Error("gradient vector has the wrong size");
  if (utt.features.cols() != config_.input_dim || utt.features.rows() < 1)
    throw Error("feature dimension mismatch in utterance '" + utt.id + "'");

  const Vec &p = params_;
  const Eigen::Index T = utt.features.rows();
  const int L = config_.enc_layers, H = config_.heads, h = config_.enc_hidden;

  // Encoder.
  std::vector<Mat> layer_in{utt.features};
  std::vector<std::vector<CellCache>> enc_cache(L, std::vector<CellCache>(T));
  std::vector<CellBlocks> enc_cells;
  for (int l = 0; l < L; ++l) {
    enc_cells.push_back(CellFor(*this, "enc" + std::to_string(l)));
    Mat out(T, h);
    Vec hs = Vec::Zero(h);
    for (Eigen::Index t = 0; t < T; ++t) {
      hs = CellForward(p, enc_cells[l], layer_in[l].row(t).transpose(), hs, &enc_cache[l][t]);
      out.row(t) = hs.transpose();
    }
    layer_in.push_back(std::move(out));
  }
  const Mat &h_enc = layer_in.back();

  // Decoder.
  const auto heads = HeadsFor(*this);
  const CellBlocks dec = CellFor(*this, "dec");
  const ParamBlock &E = Block("dec.E"), &Wo = Block("out.W"), &bo = Block("out.b");
  const std::size_t N = ref.size();
  std::vector<Vec> queries(N), outs(N), probs(N);
  std::vector<std::vector<HeadCache>> head_cache(N, std::vector<HeadCache>(H));
  std::vector<CellCache> dec_cache(N);
  double loss = 0.0;
  Vec s = Vec::Zero(config_.dec_hidden);
  for (std::size_t i = 0; i < N; ++i) {
    Label y_prev = i == 0 ? kSosLabel : ref[i - 1];
    queries[i] = s;
    Vec ctx(H * h);
    for (int k = 0; k < H; ++k)
      ctx.segment(k * h, h) = HeadForward(p, heads[k], h_enc, s, &head_cache[i][k]);
    Vec u(config_.embed_dim + ctx.size());
    u << M(p, E).col(y_prev), ctx;
    s = CellForward(p, dec, u, s, &dec_cache[i]);
    outs[i].resize(s.size() + ctx.size());
    outs[i] << s, ctx;
    probs[i] = MaskedSoftmax(M(p, Wo) * outs[i] + V(p, bo));
    loss -= std::log(probs[i][ref[i]]);
  }
  if (!grad) return loss;

  Mat dh_enc = Mat::Zero(T, h);
  Vec ds = Vec::Zero(config_.dec_hidden);
  for (std::size_t i = N; i-- > 0;) {
    Label y_prev = i == 0 ? kSosLabel : ref[i - 1];
    Vec dlogits = probs[i];
    dlogits[ref[i]] -= 1.0;
    M(*grad, Wo) += dlogits * outs[i].transpose();
    V(*grad, bo) += dlogits;
    Vec dout = M(p, Wo).transpose() * dlogits;
    Vec ds_total = ds + dout.head(config_.dec_hidden);
    Vec dctx = dout.tail(H * h);
    Vec ds_prev;
    Vec du = CellBackward(p, dec, dec_cache[i], ds_total, grad, &ds_prev);
    M(*grad, E).col(y_prev) += du.head(config_.embed_dim);
    dctx += du.tail(H * h);
    for (int k = 0; k < H; ++k)
      HeadBackward(p, heads[k], head_cache[i][k], h_enc, queries[i], dctx.segment(k * h, h), grad,
                   &dh_enc, &ds_prev);
    ds = std::move(ds_prev);
  }
  Mat dh_layer = std::move(dh_enc);
  for (int l = L - 1; l >= 0; --l) {
    Mat din = Mat::Zero(T, layer_in[l].cols());
    Vec carry = Vec::Zero(h);
    for (Eigen::Index t = T; t-- > 0;) {
      Vec dh = dh_layer.row(t).transpose() + carry;
      Vec dprev;
      din.row(t) = CellBackward(p, enc_cells[l], enc_cache[l][t], dh, grad, &dprev).transpose();
      carry = std::move(dprev);
    }
    dh_layer = std::move(din);
  }
  return loss;
}

namespace {

struct LasState : ScorerState {
  ToyLasModel::DecoderState dec;
};

class LasSession : public ScorerSession {
 public:
  LasSession(const ToyLasModel &model, Mat h_enc) : model_(model), h_enc_(std::move(h_enc)) {}

  ScorerStatePtr Initial() override {
    return Step(model_.InitialState(h_enc_), kSosLabel);
  }

  ScorerStatePtr Advance(const ScorerStatePtr &state, Label token) override {
    if (token == kEosLabel) throw Error("cannot advance past <eos>");
    return Step(static_cast<const LasState &>(*state).dec, token);
  }

 private:
  ScorerStatePtr Step(const ToyLasModel::DecoderState &dec, Label y) const {
    auto out = model_.DecodeStep(h_enc_, dec, y);
    auto st = std::make_shared<LasState>();
    st->probs.assign(out.probs.data(), out.probs.data() + out.probs.size());
    const Vec &mass = out.next.attention_mass;
    st->attention_mass.assign(mass.data(), mass.data() + mass.size());
    st->dec = std::move(out.next);
    return st;
  }

  const ToyLasModel &model_;
  Mat h_enc_;
};

}  // namespace

std::unique_ptr<ScorerSession> ToyLasScorer::Begin(const Utterance &utt) const {
  return std::make_unique<LasSession>(model_, model_.Encode(utt.features));
}

namespace {

std::size_t CountTokens(const std::vector<Utterance> &corpus) {
  std::size_t n = 0;
  for (const auto &u : corpus) n += u.reference.size();
  return n;
}

}  // namespace

double MeanTokenLoss(const ToyLasModel &model, const std::vector<Utterance> &corpus) {
  std::size_t n = CountTokens(corpus);
  if (n == 0) throw Error("corpus has no reference tokens");
  double total = 0.0;
  for (const auto &u : corpus) total += model.Loss(u);
  return total / static_cast<double>(n);
}

std::vector<double> TrainToyLas(ToyLasModel *model, const std::vector<Utterance> &corpus,
                                const ToyLasTrainOptions &opts,
                                const std::function<void(int, double)> &on_epoch) {
  if (corpus.empty()) throw Error("cannot train on an empty corpus");
  if (opts.epochs < 0 || !(opts.learning_rate >= 0.0))
    throw ConfigError("epochs and learning rate must be non-negative");
  for (const auto &u : corpus)
    if (u.reference.empty()) throw Error("utterance '" + u.id + "' has no reference");
  const double n = static_cast<double>(CountTokens(corpus));
  Vec &p = model->params();
  Vec m1 = Vec::Zero(p.size()), m2 = Vec::Zero(p.size());
  std::vector<double> trace;
  for (int epoch = 1; epoch <= opts.epochs; ++epoch) {
    Vec grad = Vec::Zero(p.size());
    double loss = 0.0;
    for (const auto &u : corpus) loss += model->Loss(u, &grad);
    loss /= n;
    if (!std::isfinite(loss) || !grad.allFinite())
      throw Error("training diverged at epoch " + std::to_string(epoch));
    trace.push_back(loss);
    if (on_epoch) on_epoch(epoch, loss);
    grad /= n;
    if (opts.optimizer == Optimizer::kSgd) {
      p -= opts.learning_rate * grad;
    } else {
      m1 = opts.adam_beta1 * m1 + (1.0 - opts.adam_beta1) * grad;
      m2 = opts.adam_beta2 * m2 + (1.0 - opts.adam_beta2) * grad.cwiseProduct(grad);
      double c1 = 1.0 - std::pow(opts.adam_beta1, epoch);
      double c2 = 1.0 - std::pow(opts.adam_beta2, epoch);
      p.array() -= opts.learning_rate * (m1.array() / c1) /
                   ((m2.array() / c2).sqrt() + opts.adam_eps);
    }
  }
  return trace;
}

double TeacherForcedAccuracy(const ToyLasModel &model, const std::vector<Utterance> &corpus) {
  std::size_t right = 0, total = 0;
  for (const auto &u : corpus) {
    Mat h_enc = model.Encode(u.features);
    auto st = model.InitialState(h_enc);
    Label prev = kSosLabel;
    for (Label y : u.reference) {
      auto out = model.DecodeStep(h_enc, st, prev);
      Eigen::Index best;
      out.probs.maxCoeff(&best);
      right += best == y;
      ++total;
      st = std::move(out.next);
      prev = y;
    }
  }
  return total ? static_cast<double>(right) / static_cast<double>(total) : 0.0;
}

void WriteLossCsv(const std::vector<double> &trace, std::ostream &os) {
  os << "epoch,loss\n";
  for (std::size_t i = 0; i < trace.size(); ++i) os << i + 1 << ',' << FormatDouble(trace[i]) << '\n';
}

namespace {

constexpr char kMagic[8] = {'P', 'F', 'T', 'O', 'Y', 'L', 'A', 'S'};
constexpr std::uint32_t kVersion = 1;

void PutU64(std::ostream &os, std::uint64_t v, int bytes = 8) {
  char b[8];
  for (int i = 0; i < bytes; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, bytes);
}

std::uint64_t GetU64(std::istream &is, int bytes = 8) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char *>(b), bytes)) throw Error("truncated model checkpoint");
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace

void WriteToyLas(const ToyLasModel &model, std::ostream &os) {
  os.write(kMagic, sizeof kMagic);
  PutU64(os, kVersion, 4);
  const auto &c = model.config();
  for (int v : {c.input_dim, c.enc_hidden, c.enc_layers, c.heads, c.att_dim, c.dec_hidden,
                c.embed_dim})
    PutU64(os, static_cast<std::uint32_t>(v), 4);
  const auto &syms = model.alphabet()->symbols();
  PutU64(os, syms.size(), 4);
  for (const auto &s : syms) {
    PutU64(os, s.size(), 4);
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  const Vec &p = model.params();
  PutU64(os, static_cast<std::uint64_t>(p.size()));
  for (Eigen::Index i = 0; i < p.size(); ++i) PutU64(os, std::bit_cast<std::uint64_t>(p[i]));
  if (!os) throw Error("failed writing model checkpoint");
}

void WriteToyLas(const ToyLasModel &model, const std::string &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  WriteToyLas(model, os);
}

ToyLasModel ReadToyLas(std::istream &is) {
  char magic[8];
  if (!is.read(magic, 8) || !std::equal(magic, magic + 8, kMagic))
    throw Error("not a model checkpoint (bad magic)");
  if (GetU64(is, 4) != kVersion) throw Error("unsupported model checkpoint version");
  ToyLasConfig c;
  for (int *v : {&c.input_dim, &c.enc_hidden, &c.enc_layers, &c.heads, &c.att_dim, &c.dec_hidden,
                 &c.embed_dim})
    *v = static_cast<std::int32_t>(GetU64(is, 4));
  std::uint64_t n = GetU64(is, 4);
  if (n > (1u << 20)) throw Error("implausible alphabet size in checkpoint");
  std::vector<std::string> syms(n);
  for (auto &s : syms) {
    std::uint64_t len = GetU64(is, 4);
    if (len > 4096) throw Error("implausible symbol length in checkpoint");
    s.resize(len);
    if (!is.read(s.data(), static_cast<std::streamsize>(len)))
      throw Error("truncated model checkpoint");
  }
  if (syms.empty() || syms[0] != SymbolTable::kEpsilonSymbol)
    throw Error("checkpoint alphabet must start with <eps>");
  auto alphabet = std::make_shared<SymbolTable>(
      std::vector<std::string>(syms.begin() + 1, syms.end()));
  ToyLasModel model(c, alphabet);
  std::uint64_t m = GetU64(is);
  if (m != static_cast<std::uint64_t>(model.params().size()))
    throw Error("checkpoint parameter count does not match its dimensions");
  for (Eigen::Index i = 0; i < model.params().size(); ++i)
    model.params()[i] = std::bit_cast<double>(GetU64(is));
  return model;
}

ToyLasModel ReadToyLas(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open model " + path);
  return ReadToyLas(is);
}

}  // namespace phonefuse
