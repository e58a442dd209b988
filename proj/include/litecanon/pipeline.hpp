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

#ifndef LITECANON_PIPELINE_HPP_
#define LITECANON_PIPELINE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "litecanon/kb.hpp"

namespace litecanon {
namespace pipeline {

// Bad or inconsistent configuration (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A stage input that an earlier stage should have produced (exit code 1).
class MissingArtifact : public Error {
 public:
  explicit MissingArtifact(const std::string& what) : Error(what) {}
};

struct PipelineConfig {
  // Input paths.
  std::string kb_path;
  std::string external_kb_path;
  std::string mapping_path;
  std::string embeddings_path;
  std::string anchors_path;
  std::string tasks_path;
  std::string workdir = "work";

  // KB ingestion.
  std::vector<std::string> label_predicates{kb::kRdfsLabel};
  std::string type_predicate = kb::kRdfType;
  std::string subclass_predicate = kb::kRdfsSubClassOf;
  std::string disjoint_predicate = kb::kOwlDisjointWith;
  std::vector<std::string> root_classes;  // empty: hierarchy roots

  // Sampling and candidates.
  size_t n0 = 1200;
  int lookup_cap = 30;
  size_t synth_n = 100;

  // Network.
  std::string encoder = "attbirnn";  // or "mlp"
  int d_r = 200;
  int d_a = 50;
  int mlp_hidden = 200;
  int t_s = 12;
  int t_p = 4;
  int t_l = 12;

  // Training.
  double learning_rate = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  int epochs_pretrain = 20;
  int epochs_finetune = 20;
  int batch_size = 32;
  uint64_t seed = 42;
  int jobs = 0;  // 0: min(hardware threads, 10)

  // Typing and canonicalization.
  double theta = 0.5;
  double kappa = -0.1;
  std::string strategy = "hierarchical";
  int match_k = 30;
  double min_sim = 0.5;

  // `key = value` lines, '#' comments.
  static PipelineConfig from_file(const std::string& path);
  void set_key(const std::string& key, const std::string& value);
  void validate() const;

  std::string canonical() const;  // sorted key=value dump
  std::string hash() const;

  kb::IngestConfig ingest_config() const;
  int effective_jobs() const;
};

inline const std::vector<std::string> kStages = {
    "ingest", "index", "candidates", "sample", "refine", "train",
    "predict", "type", "canon", "eval", "synth"};

// Run one pipeline stage; artifacts land in config.workdir, each written
// atomically, with a meta/<stage>.json run record. Throws ConfigError or
// MissingArtifact (see above) or Error for anything else.
void run_stage(const std::string& stage, const PipelineConfig& config);

// Atomic file write: temp file in the target directory, then rename.
void write_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace pipeline
}  // namespace litecanon

#endif  // LITECANON_PIPELINE_HPP_
