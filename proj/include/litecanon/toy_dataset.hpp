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

#ifndef LITECANON_TOY_DATASET_HPP_
#define LITECANON_TOY_DATASET_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "litecanon/kb.hpp"

namespace litecanon {
namespace evalkit {

// Synthetic KB for desk-scale experiments: a 12-class hierarchy over three
// levels under one root, eight leaf classes with disjoint token
// vocabularies, five object properties, and a few hundred labeled, typed
// entities. Entity labels are drawn from their class vocabulary, so the
// typing task is lexically separable.
struct ToyConfig {
  size_t entities_per_leaf = 38;     // 8 leaves, ~300 entities
  size_t triples_per_property = 70;
  int embedding_dim = 24;
  uint64_t seed = 7;
};

struct ToyDataset {
  kb::Kb kb;
  std::string kb_ntriples;
  std::string embeddings_text;  // word2vec-style text, `V D` header
  std::vector<std::string> vocabulary;
};

ToyDataset generate_toy_dataset(const ToyConfig& config = {});

}  // namespace evalkit
}  // namespace litecanon

#endif  // LITECANON_TOY_DATASET_HPP_
