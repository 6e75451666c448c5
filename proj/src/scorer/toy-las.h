// src/scorer/toy-las.h

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

#ifndef PHONEFUSE_SCORER_TOY_LAS_H_
#define PHONEFUSE_SCORER_TOY_LAS_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scorer/scorer.h"

namespace phonefuse {

struct ToyLasConfig {
  int input_dim = 0;
  int enc_hidden = 16;
  int enc_layers = 1;  // 1 or 2
  int heads = 1;
  int att_dim = 16;
  int dec_hidden = 16;
  int embed_dim = 8;

  void Check() const;
};

/// Where one parameter tensor lives inside the flat parameter vector.
/// Tensors are stored column-major.
struct ParamBlock {
  std::string name;
  int rows, cols;
  Eigen::Index offset;
};

/// Tiny listen/attend/spell model.
///
/// Encoder: enc_layers unidirectional minimal-gated-unit recurrences,
///   f = sigmoid(Wf x + Uf h + bf)
///   g = tanh(Wc x + Uc (f * h) + bc)
///   h' = (1 - f) * h + f * g
/// Attention, per head k, with query s (previous decoder state):
///   e_t = v_k . tanh(W_k h_t + U_k s + b_k),  alpha = softmax(e),
///   c_k = sum_t alpha_t h_t
/// and the head contexts concatenated.  Decoder: the same cell over
/// [E y_prev ; c], then logits = Wo [s ; c] + bo, with <eps> and <sos>
/// masked out of the softmax.
class ToyLasModel {
 public:
  /// All parameters zero.
  ToyLasModel(const ToyLasConfig &config, SymbolTablePtr alphabet);

  const ToyLasConfig &config() const { return config_; }
  const SymbolTablePtr &alphabet() const { return alphabet_; }
  int num_outputs() const { return static_cast<int>(alphabet_->size()); }

  const std::vector<ParamBlock> &layout() const { return layout_; }
  const ParamBlock &Block(const std::string &name) const;
  Eigen::VectorXd &params() { return params_; }
  const Eigen::VectorXd &params() const { return params_; }

  /// Uniform in [-scale, scale], seeded.
  void InitRandom(std::uint64_t seed, double scale = 0.1);

  /// T x enc_hidden, one row per input frame.  Throws Error on a feature
  /// dimension mismatch or T = 0.
  Eigen::MatrixXd Encode(const Eigen::MatrixXd &features) const;

  struct Attention {
    Eigen::VectorXd context;  // heads * enc_hidden
    Eigen::MatrixXd weights;  // heads x T
  };
  Attention Attend(const Eigen::MatrixXd &h_enc, const Eigen::VectorXd &query) const;

  struct DecoderState {
    Eigen::VectorXd s;               // dec_hidden
    Eigen::VectorXd context;         // last attention context
    Eigen::VectorXd attention_mass;  // cumulative head-averaged weights, size T
  };
  DecoderState InitialState(const Eigen::MatrixXd &h_enc) const;

  struct StepOutput {
    Eigen::VectorXd probs;
    DecoderState next;
  };
  /// One decoder step consuming `y_prev` (<sos> on the first step).
  StepOutput DecodeStep(const Eigen::MatrixXd &h_enc, const DecoderState &state,
                        Label y_prev) const;

  /// Teacher-forced -sum log P(reference) for one utterance.  When `grad` is
  /// non-null the parameter gradient is added to it.
  double Loss(const Utterance &utt, Eigen::VectorXd *grad = nullptr) const;

 private:
  ToyLasConfig config_;
  SymbolTablePtr alphabet_;
  std::vector<ParamBlock> layout_;
  Eigen::VectorXd params_;
};

class ToyLasScorer : public Scorer {
 public:
  explicit ToyLasScorer(const ToyLasModel &model) : model_(model) {}
  const SymbolTablePtr &alphabet() const override { return model_.alphabet(); }
  std::unique_ptr<ScorerSession> Begin(const Utterance &utt) const override;

 private:
  const ToyLasModel &model_;
};

enum class Optimizer { kSgd, kAdam };

struct ToyLasTrainOptions {
  int epochs = 100;
  double learning_rate = 0.1;
  Optimizer optimizer = Optimizer::kSgd;
  double adam_beta1 = 0.9, adam_beta2 = 0.999, adam_eps = 1e-8;
};

/// Full-batch training on the mean per-token cross-entropy.  Returns the loss
/// trace (entry e is the loss at the start of epoch e+1).  Throws Error naming
/// the epoch if the loss stops being finite.
std::vector<double> TrainToyLas(ToyLasModel *model, const std::vector<Utterance> &corpus,
                                const ToyLasTrainOptions &opts,
                                const std::function<void(int, double)> &on_epoch = nullptr);

/// Mean per-token cross-entropy (nats) over the corpus.
double MeanTokenLoss(const ToyLasModel &model, const std::vector<Utterance> &corpus);

/// Fraction of reference tokens that are the teacher-forced argmax.
double TeacherForcedAccuracy(const ToyLasModel &model, const std::vector<Utterance> &corpus);

void WriteLossCsv(const std::vector<double> &trace, std::ostream &os);

/// Checkpoint layout, all integers little-endian:
///   "PFTOYLAS"  8 bytes magic
///   u32 version (1)
///   7 x i32     input_dim enc_hidden enc_layers heads att_dim dec_hidden embed_dim
///   u32 n, then n x (u32 length, bytes)   output alphabet, ids 0..n-1
///   u64 m, then m x f64 (IEEE-754)        parameters in layout() order
void WriteToyLas(const ToyLasModel &model, std::ostream &os);
void WriteToyLas(const ToyLasModel &model, const std::string &path);
ToyLasModel ReadToyLas(std::istream &is);
ToyLasModel ReadToyLas(const std::string &path);

}  // namespace phonefuse

#endif  // PHONEFUSE_SCORER_TOY_LAS_H_
