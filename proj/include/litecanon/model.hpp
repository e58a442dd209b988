// Copyright 2026 The LiteCanon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LITECANON_MODEL_HPP_
#define LITECANON_MODEL_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "litecanon/embedding.hpp"

namespace litecanon {
namespace neuro {

// Token budgets for the subject / property / literal segments. Shorter
// segments are right-padded with the null word, longer ones keep their
// leftmost tokens.
struct SeqSpec {
  int t_s = 12;
  int t_p = 4;
  int t_l = 12;

  int total() const { return t_s + t_p + t_l; }
};

// Gated recurrent unit, one direction.
//   r_t = sigmoid(W_r x_t + U_r h_{t-1} + b_r)
//   z_t = sigmoid(W_z x_t + U_z h_{t-1} + b_z)
//   hc  = tanh(W_h x_t + r_t . (U_h h_{t-1}) + b_h)
//   h_t = (1 - z_t) . h_{t-1} + z_t . hc
struct GruParams {
  Eigen::MatrixXd w_h, u_h;
  Eigen::VectorXd b_h;
  Eigen::MatrixXd w_z, u_z;
  Eigen::VectorXd b_z;
  Eigen::MatrixXd w_r, u_r;
  Eigen::VectorXd b_r;

  static GruParams zeros(int hidden, int input);
};

// Position-preserving attention: u_t = tanh(W_w h_t + b_w), weights are a
// softmax of u_t . u_w, and the layer output concatenates the weighted
// vectors alpha_t * u_t instead of summing them.
struct AttentionParams {
  Eigen::MatrixXd w_w;  // d_a x (2 d_r)
  Eigen::VectorXd b_w;  // d_a
  Eigen::VectorXd u_w;  // d_a

  static AttentionParams zeros(int d_a, int d_r);
};

struct MlpParams {
  Eigen::MatrixXd w1;  // hidden x (T d_w)
  Eigen::VectorXd b1;

  static MlpParams zeros(int hidden, int input);
};

enum class EncoderKind : uint8_t { att_birnn = 0, mlp = 1 };

// All learnable parameters of one per-class binary classifier, either the
// attentive bidirectional GRU or the MLP baseline, plus the FC output layer.
struct ClassifierModel {
  std::string class_iri;
  EncoderKind kind = EncoderKind::att_birnn;
  SeqSpec seq;
  int dim_word = 0;    // d_w
  int dim_hidden = 0;  // d_r (GRU state) or MLP hidden width
  int dim_att = 0;     // d_a

  GruParams fwd, bwd;
  AttentionParams att;
  MlpParams mlp;
  Eigen::RowVectorXd w_f;  // 1 x (T d_a) or 1 x hidden
  double b_f = 0.0;

  static ClassifierModel make_att_birnn(const std::string& class_iri,
                                        SeqSpec seq, int d_w, int d_r,
                                        int d_a);
  static ClassifierModel make_mlp(const std::string& class_iri, SeqSpec seq,
                                  int d_w, int hidden);

  // Same-shape model with all parameters zero (gradient / moment buffers).
  ClassifierModel zeros_like() const;

  void init_weights(uint64_t seed, double scale = 0.08);

  size_t parameter_count() const;

  // Named views over every parameter tensor, in serialization order.
  struct TensorRef {
    std::string name;
    double* data;
    size_t size;
  };
  struct ConstTensorRef {
    std::string name;
    const double* data;
    size_t size;
  };
  std::vector<TensorRef> tensors();
  std::vector<ConstTensorRef> tensors() const;
};

std::string encoder_kind_str(EncoderKind k);

// Token texts -> embedded sequence, one column per position (d_w x T).
Eigen::MatrixXd encode_sequence(const std::string& s_text,
                                const std::string& p_text,
                                const std::string& l_text, const SeqSpec& spec,
                                const EmbeddingTable& table);

Eigen::VectorXd gru_step(const Eigen::VectorXd& x, const Eigen::VectorXd& h_prev,
                         const GruParams& p);

// Per-position concatenated [forward; backward] states, 2 d_r x T.
Eigen::MatrixXd birnn_encode(const Eigen::MatrixXd& xs, const GruParams& fwd,
                             const GruParams& bwd);

struct AttentionOutput {
  Eigen::VectorXd h_a;     // T d_a, concatenated alpha_t * u_t
  Eigen::VectorXd alpha;   // T, softmax weights
};

AttentionOutput attention(const Eigen::MatrixXd& hs, const AttentionParams& p);

struct ForwardOutput {
  double score = 0.0;       // sigmoid output in [0, 1]
  Eigen::VectorXd alpha;    // attention weights (empty for the MLP encoder)
};

ForwardOutput forward(const ClassifierModel& model, const std::string& s_text,
                      const std::string& p_text, const std::string& l_text,
                      const EmbeddingTable& table);

double mlp_forward(const ClassifierModel& model, const std::string& s_text,
                   const std::string& p_text, const std::string& l_text,
                   const EmbeddingTable& table);

// Self-describing binary container, lossless round trip.
void save_model(const ClassifierModel& model, std::ostream& out);
ClassifierModel load_model(std::istream& in);
void save_model_file(const ClassifierModel& model, const std::string& path);
ClassifierModel load_model_file(const std::string& path);

}  // namespace neuro
}  // namespace litecanon

#endif  // LITECANON_MODEL_HPP_
