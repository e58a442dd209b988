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

#ifndef LITECANON_TRAIN_HPP_
#define LITECANON_TRAIN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "litecanon/model.hpp"
#include "litecanon/sampling.hpp"

namespace litecanon {
namespace neuro {

struct TrainingSample {
  std::string subject_text;
  std::string property_text;
  std::string literal_text;
  double label = 0.0;  // 1 positive, 0 negative
};

std::vector<TrainingSample> to_training(const sampler::SampleSet& samples);

struct TrainConfig {
  double learning_rate = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  int epochs_pretrain = 20;
  int epochs_finetune = 20;
  int batch_size = 32;
  uint64_t seed = 42;
};

// Network architecture, orthogonal to the optimizer settings.
struct NetSpec {
  EncoderKind kind = EncoderKind::att_birnn;
  SeqSpec seq;
  int d_r = 200;
  int d_a = 50;
  int mlp_hidden = 200;
};

// Binary cross-entropy with the score clamped to [1e-7, 1 - 1e-7].
double bce_loss(double score, double label);

// Pre-embedded sample: one column per sequence position.
struct EncodedSample {
  Eigen::MatrixXd xs;
  double label = 0.0;
};

EncodedSample encode_sample(const TrainingSample& s, const SeqSpec& spec,
                            const EmbeddingTable& table);

double batch_loss(const ClassifierModel& model,
                  const std::vector<EncodedSample>& batch);

// Exact gradients of the mean BCE over the batch with respect to every
// parameter tensor, by reverse-mode accumulation through the FC, attention
// and both GRU chains (or the MLP).
ClassifierModel gradients(const ClassifierModel& model,
                          const std::vector<EncodedSample>& batch);

ClassifierModel gradients(const ClassifierModel& model,
                          const std::vector<TrainingSample>& batch,
                          const EmbeddingTable& table);

// Adam moments, one pair per parameter tensor.
struct AdamState {
  explicit AdamState(const ClassifierModel& model)
      : m(model.zeros_like()), v(model.zeros_like()) {}
  ClassifierModel m, v;
  long step = 0;
};

void adam_step(ClassifierModel& params, const ClassifierModel& grads,
               AdamState& state, const TrainConfig& config);

// Pre-train on general samples, then fine-tune on particular samples
// (skipped when there are none). Deterministic under a fixed seed.
// Throws when `general` is empty.
ClassifierModel train_classifier(const std::string& class_iri,
                                 const std::vector<TrainingSample>& general,
                                 const std::vector<TrainingSample>& particular,
                                 const TrainConfig& config, const NetSpec& net,
                                 const EmbeddingTable& table);

}  // namespace neuro
}  // namespace litecanon

#endif  // LITECANON_TRAIN_HPP_
