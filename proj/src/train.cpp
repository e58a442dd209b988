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

#include "litecanon/train.hpp"

#include <cmath>
#include <numeric>

#include "litecanon/kb.hpp"
#include "litecanon/rng.hpp"

namespace litecanon {
namespace neuro {

namespace {

constexpr double kClampEps = 1e-7;

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct GruCache {
  Eigen::MatrixXd h;    // d_r x T, states in position order
  Eigen::MatrixXd r, z, c;  // gate activations per position
  Eigen::MatrixXd uhp;  // U_h * h_prev per position (needed for d r_t)
};

// One direction of Eq. 1 with everything the backward pass needs retained.
// `reverse` runs the chain from the last position toward the first.
GruCache gru_run(const Eigen::MatrixXd& xs, const GruParams& p, bool reverse) {
  const int t_total = static_cast<int>(xs.cols());
  const int d_r = static_cast<int>(p.w_h.rows());
  GruCache cache;
  cache.h.resize(d_r, t_total);
  cache.r.resize(d_r, t_total);
  cache.z.resize(d_r, t_total);
  cache.c.resize(d_r, t_total);
  cache.uhp.resize(d_r, t_total);
  Eigen::VectorXd h_prev = Eigen::VectorXd::Zero(d_r);
  for (int i = 0; i < t_total; ++i) {
    int t = reverse ? t_total - 1 - i : i;
    Eigen::VectorXd x = xs.col(t);
    Eigen::ArrayXd r =
        1.0 / (1.0 + (-(p.w_r * x + p.u_r * h_prev + p.b_r).array()).exp());
    Eigen::ArrayXd z =
        1.0 / (1.0 + (-(p.w_z * x + p.u_z * h_prev + p.b_z).array()).exp());
    Eigen::VectorXd uhp = p.u_h * h_prev;
    Eigen::ArrayXd c =
        ((p.w_h * x).array() + r * uhp.array() + p.b_h.array()).tanh();
    Eigen::VectorXd h = ((1.0 - z) * h_prev.array() + z * c).matrix();
    cache.h.col(t) = h;
    cache.r.col(t) = r.matrix();
    cache.z.col(t) = z.matrix();
    cache.c.col(t) = c.matrix();
    cache.uhp.col(t) = uhp;
    h_prev = h;
  }
  return cache;
}

// Backpropagate dh (d_r x T, gradient on each emitted state) through one
// GRU chain; parameter gradients are accumulated into `g`.
void gru_backward(const Eigen::MatrixXd& xs, const GruParams& p,
                  const GruCache& cache, const Eigen::MatrixXd& dh_ext,
                  bool reverse, GruParams& g) {
  const int t_total = static_cast<int>(xs.cols());
  const int d_r = static_cast<int>(p.w_h.rows());
  Eigen::VectorXd carry = Eigen::VectorXd::Zero(d_r);
  // Walk the chain from its last state back to its first.
  for (int i = t_total - 1; i >= 0; --i) {
    int t = reverse ? t_total - 1 - i : i;
    int t_prev = reverse ? t + 1 : t - 1;
    Eigen::VectorXd h_prev = Eigen::VectorXd::Zero(d_r);
    if (t_prev >= 0 && t_prev < t_total) h_prev = cache.h.col(t_prev);
    Eigen::ArrayXd dh = (dh_ext.col(t) + carry).array();
    Eigen::ArrayXd r = cache.r.col(t).array();
    Eigen::ArrayXd z = cache.z.col(t).array();
    Eigen::ArrayXd c = cache.c.col(t).array();

    Eigen::ArrayXd dz = dh * (c - h_prev.array());
    Eigen::ArrayXd dc = dh * z;
    Eigen::ArrayXd dhprev = dh * (1.0 - z);

    Eigen::ArrayXd dac = dc * (1.0 - c * c);
    g.w_h += dac.matrix() * xs.col(t).transpose();
    g.b_h += dac.matrix();
    Eigen::ArrayXd dr = dac * cache.uhp.col(t).array();
    Eigen::ArrayXd dac_r = dac * r;
    g.u_h += dac_r.matrix() * h_prev.transpose();
    dhprev += (p.u_h.transpose() * dac_r.matrix()).array();

    Eigen::ArrayXd dar = dr * r * (1.0 - r);
    g.w_r += dar.matrix() * xs.col(t).transpose();
    g.b_r += dar.matrix();
    g.u_r += dar.matrix() * h_prev.transpose();
    dhprev += (p.u_r.transpose() * dar.matrix()).array();

    Eigen::ArrayXd daz = dz * z * (1.0 - z);
    g.w_z += daz.matrix() * xs.col(t).transpose();
    g.b_z += daz.matrix();
    g.u_z += daz.matrix() * h_prev.transpose();
    dhprev += (p.u_z.transpose() * daz.matrix()).array();

    carry = dhprev.matrix();
  }
}

// d(loss)/d(logit) consistent with the clamped BCE: zero in the clamp zone.
double logit_grad(double y, double label) {
  if (y < kClampEps || y > 1.0 - kClampEps) return 0.0;
  return y - label;
}

void accumulate_att_birnn(const ClassifierModel& model,
                          const EncodedSample& sample, ClassifierModel& g) {
  const int t_total = model.seq.total();
  const int d_r = model.dim_hidden;
  const int d_a = model.dim_att;

  GruCache fc = gru_run(sample.xs, model.fwd, false);
  GruCache bc = gru_run(sample.xs, model.bwd, true);

  Eigen::MatrixXd u(d_a, t_total);
  Eigen::VectorXd scores(t_total);
  for (int t = 0; t < t_total; ++t) {
    Eigen::VectorXd h(2 * d_r);
    h.head(d_r) = fc.h.col(t);
    h.tail(d_r) = bc.h.col(t);
    u.col(t) = (model.att.w_w * h + model.att.b_w).array().tanh().matrix();
    scores[t] = u.col(t).dot(model.att.u_w);
  }
  double max_score = scores.maxCoeff();
  Eigen::VectorXd alpha = (scores.array() - max_score).exp();
  alpha /= alpha.sum();

  Eigen::VectorXd h_a(t_total * d_a);
  for (int t = 0; t < t_total; ++t)
    h_a.segment(t * d_a, d_a) = alpha[t] * u.col(t);
  double y = sigmoid(model.w_f.dot(h_a) + model.b_f);

  double dlogit = logit_grad(y, sample.label);
  g.w_f += dlogit * h_a.transpose();
  g.b_f += dlogit;

  Eigen::VectorXd dh_a = model.w_f.transpose() * dlogit;
  Eigen::VectorXd dalpha(t_total);
  Eigen::MatrixXd du(d_a, t_total);
  for (int t = 0; t < t_total; ++t) {
    Eigen::VectorXd da_t = dh_a.segment(t * d_a, d_a);
    dalpha[t] = da_t.dot(u.col(t));
    du.col(t) = alpha[t] * da_t;
  }
  // softmax backward
  double dot = alpha.dot(dalpha);
  Eigen::VectorXd dscores =
      (alpha.array() * (dalpha.array() - dot)).matrix();
  for (int t = 0; t < t_total; ++t) du.col(t) += dscores[t] * model.att.u_w;
  for (int t = 0; t < t_total; ++t) g.att.u_w += dscores[t] * u.col(t);

  Eigen::MatrixXd dh_ext_f = Eigen::MatrixXd::Zero(d_r, t_total);
  Eigen::MatrixXd dh_ext_b = Eigen::MatrixXd::Zero(d_r, t_total);
  for (int t = 0; t < t_total; ++t) {
    Eigen::VectorXd dpre =
        (du.col(t).array() * (1.0 - u.col(t).array().square())).matrix();
    Eigen::VectorXd h(2 * d_r);
    h.head(d_r) = fc.h.col(t);
    h.tail(d_r) = bc.h.col(t);
    g.att.w_w += dpre * h.transpose();
    g.att.b_w += dpre;
    Eigen::VectorXd dh = model.att.w_w.transpose() * dpre;
    dh_ext_f.col(t) = dh.head(d_r);
    dh_ext_b.col(t) = dh.tail(d_r);
  }

  gru_backward(sample.xs, model.fwd, fc, dh_ext_f, false, g.fwd);
  gru_backward(sample.xs, model.bwd, bc, dh_ext_b, true, g.bwd);
}

void accumulate_mlp(const ClassifierModel& model, const EncodedSample& sample,
                    ClassifierModel& g) {
  Eigen::VectorXd flat =
      Eigen::Map<const Eigen::VectorXd>(sample.xs.data(), sample.xs.size());
  Eigen::VectorXd h1 =
      (model.mlp.w1 * flat + model.mlp.b1).array().tanh().matrix();
  double y = sigmoid(model.w_f.dot(h1) + model.b_f);

  double dlogit = logit_grad(y, sample.label);
  g.w_f += dlogit * h1.transpose();
  g.b_f += dlogit;
  Eigen::VectorXd dh1 = model.w_f.transpose() * dlogit;
  Eigen::VectorXd da1 =
      (dh1.array() * (1.0 - h1.array().square())).matrix();
  g.mlp.w1 += da1 * flat.transpose();
  g.mlp.b1 += da1;
}

double score_encoded(const ClassifierModel& model, const EncodedSample& s) {
  if (model.kind == EncoderKind::mlp) {
    Eigen::VectorXd flat =
        Eigen::Map<const Eigen::VectorXd>(s.xs.data(), s.xs.size());
    Eigen::VectorXd h1 =
        (model.mlp.w1 * flat + model.mlp.b1).array().tanh().matrix();
    return sigmoid(model.w_f.dot(h1) + model.b_f);
  }
  Eigen::MatrixXd hs = birnn_encode(s.xs, model.fwd, model.bwd);
  AttentionOutput att_out = attention(hs, model.att);
  return sigmoid(model.w_f.dot(att_out.h_a) + model.b_f);
}

}  // namespace

std::vector<TrainingSample> to_training(const sampler::SampleSet& samples) {
  std::vector<TrainingSample> out;
  out.reserve(samples.size());
  for (const sampler::Sample& s : samples)
    out.push_back({s.subject_text, s.property_text, s.literal_text,
                   s.polarity == sampler::Polarity::positive ? 1.0 : 0.0});
  return out;
}

double bce_loss(double score, double label) {
  double y = std::min(std::max(score, kClampEps), 1.0 - kClampEps);
  return -label * std::log(y) - (1.0 - label) * std::log(1.0 - y);
}

EncodedSample encode_sample(const TrainingSample& s, const SeqSpec& spec,
                            const EmbeddingTable& table) {
  return {encode_sequence(s.subject_text, s.property_text, s.literal_text,
                          spec, table),
          s.label};
}

double batch_loss(const ClassifierModel& model,
                  const std::vector<EncodedSample>& batch) {
  if (batch.empty()) return 0.0;
  double sum = 0.0;
  for (const EncodedSample& s : batch)
    sum += bce_loss(score_encoded(model, s), s.label);
  return sum / static_cast<double>(batch.size());
}

ClassifierModel gradients(const ClassifierModel& model,
                          const std::vector<EncodedSample>& batch) {
  ClassifierModel g = model.zeros_like();
  if (batch.empty()) return g;
  for (const EncodedSample& s : batch) {
    if (model.kind == EncoderKind::att_birnn)
      accumulate_att_birnn(model, s, g);
    else
      accumulate_mlp(model, s, g);
  }
  double inv = 1.0 / static_cast<double>(batch.size());
  for (auto& t : g.tensors())
    for (size_t i = 0; i < t.size; ++i) t.data[i] *= inv;
  return g;
}

ClassifierModel gradients(const ClassifierModel& model,
                          const std::vector<TrainingSample>& batch,
                          const EmbeddingTable& table) {
  std::vector<EncodedSample> encoded;
  encoded.reserve(batch.size());
  for (const TrainingSample& s : batch)
    encoded.push_back(encode_sample(s, model.seq, table));
  return gradients(model, encoded);
}

void adam_step(ClassifierModel& params, const ClassifierModel& grads,
               AdamState& state, const TrainConfig& config) {
  ++state.step;
  const double b1 = config.adam_beta1;
  const double b2 = config.adam_beta2;
  const double bc1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  auto p = params.tensors();
  auto g = grads.tensors();
  auto m = state.m.tensors();
  auto v = state.v.tensors();
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k].size != g[k].size) throw Error("adam_step: shape mismatch");
    for (size_t i = 0; i < p[k].size; ++i) {
      double gi = g[k].data[i];
      m[k].data[i] = b1 * m[k].data[i] + (1.0 - b1) * gi;
      v[k].data[i] = b2 * v[k].data[i] + (1.0 - b2) * gi * gi;
      double mhat = m[k].data[i] / bc1;
      double vhat = v[k].data[i] / bc2;
      p[k].data[i] -=
          config.learning_rate * mhat / (std::sqrt(vhat) + config.adam_epsilon);
    }
  }
}

ClassifierModel train_classifier(const std::string& class_iri,
                                 const std::vector<TrainingSample>& general,
                                 const std::vector<TrainingSample>& particular,
                                 const TrainConfig& config, const NetSpec& net,
                                 const EmbeddingTable& table) {
  if (general.empty())
    throw Error("no general samples for class " + class_iri);

  ClassifierModel model =
      net.kind == EncoderKind::att_birnn
          ? ClassifierModel::make_att_birnn(class_iri, net.seq, table.dim(),
                                            net.d_r, net.d_a)
          : ClassifierModel::make_mlp(class_iri, net.seq, table.dim(),
                                      net.mlp_hidden);
  model.init_weights(config.seed);
  AdamState state(model);
  Rng rng(config.seed ^ 0x5de6cde1u);

  auto run = [&](const std::vector<TrainingSample>& data, int epochs) {
    if (data.empty() || epochs <= 0) return;
    std::vector<EncodedSample> encoded;
    encoded.reserve(data.size());
    for (const TrainingSample& s : data)
      encoded.push_back(encode_sample(s, model.seq, table));
    std::vector<size_t> order(encoded.size());
    std::iota(order.begin(), order.end(), 0);
    const size_t bs = config.batch_size > 0 ? config.batch_size : 1;
    for (int e = 0; e < epochs; ++e) {
      rng.shuffle(order);
      for (size_t start = 0; start < order.size(); start += bs) {
        std::vector<EncodedSample> batch;
        for (size_t i = start; i < std::min(start + bs, order.size()); ++i)
          batch.push_back(encoded[order[i]]);
        ClassifierModel grads = gradients(model, batch);
        adam_step(model, grads, state, config);
      }
    }
  };

  run(general, config.epochs_pretrain);
  run(particular, config.epochs_finetune);  // skipped when empty
  return model;
}

}  // namespace neuro
}  // namespace litecanon
