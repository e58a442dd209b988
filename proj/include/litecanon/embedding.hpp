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

#ifndef LITECANON_EMBEDDING_HPP_
#define LITECANON_EMBEDDING_HPP_

#include <Eigen/Dense>
#include <iosfwd>
#include <map>
#include <string>

namespace litecanon {
namespace neuro {

// Word vectors loaded from a whitespace-delimited text file (optional
// `V D` header line). The null padding word is the zero vector; words
// missing from the table get a deterministic unit-norm vector derived from
// the word's hash, so distinct unknown words stay distinguishable.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(int dim) : dim_(dim) {}

  static EmbeddingTable load(std::istream& in);
  static EmbeddingTable load_file(const std::string& path);

  int dim() const { return dim_; }
  size_t size() const { return vectors_.size(); }
  bool contains(const std::string& word) const {
    return vectors_.count(word) > 0;
  }

  void insert(const std::string& word, Eigen::VectorXd v);

  // Table vector, or the OOV fallback.
  Eigen::VectorXd lookup(const std::string& word) const;

  Eigen::VectorXd null_vector() const { return Eigen::VectorXd::Zero(dim_); }

  static Eigen::VectorXd oov_vector(const std::string& word, int dim);

 private:
  int dim_ = 0;
  std::map<std::string, Eigen::VectorXd> vectors_;
};

}  // namespace neuro
}  // namespace litecanon

#endif  // LITECANON_EMBEDDING_HPP_
