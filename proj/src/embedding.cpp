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

#include "litecanon/embedding.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

#include "litecanon/kb.hpp"
#include "litecanon/rng.hpp"

namespace litecanon {
namespace neuro {

namespace {

bool parse_count(const std::string& tok, long& out) {
  if (tok.empty()) return false;
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  out = std::stol(tok);
  return true;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream iss(line);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

}  // namespace

EmbeddingTable EmbeddingTable::load(std::istream& in) {
  EmbeddingTable table;
  std::string line;
  size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> toks = split_ws(line);
    if (toks.empty()) continue;
    if (first_content) {
      first_content = false;
      long v, d;
      if (toks.size() == 2 && parse_count(toks[0], v) && parse_count(toks[1], d))
        continue;  // `V D` header
    }
    if (toks.size() < 2)
      throw ParseError("expected `word f1 ... fD`", line_no);
    int dim = static_cast<int>(toks.size()) - 1;
    if (table.dim_ == 0) table.dim_ = dim;
    if (dim != table.dim_)
      throw ParseError("vector length " + std::to_string(dim) +
                           " does not match dimension " +
                           std::to_string(table.dim_),
                       line_no);
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) {
      try {
        v[i] = std::stod(toks[i + 1]);
      } catch (const std::exception&) {
        throw ParseError("bad number '" + toks[i + 1] + "'", line_no);
      }
    }
    table.vectors_[toks[0]] = std::move(v);  // duplicate word: last wins
  }
  return table;
}

EmbeddingTable EmbeddingTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return load(in);
}

void EmbeddingTable::insert(const std::string& word, Eigen::VectorXd v) {
  if (dim_ == 0) dim_ = static_cast<int>(v.size());
  if (v.size() != dim_) throw Error("embedding dimension mismatch");
  vectors_[word] = std::move(v);
}

Eigen::VectorXd EmbeddingTable::lookup(const std::string& word) const {
  auto it = vectors_.find(word);
  if (it != vectors_.end()) return it->second;
  return oov_vector(word, dim_);
}

Eigen::VectorXd EmbeddingTable::oov_vector(const std::string& word, int dim) {
  Rng rng(fnv1a64(word) ^ 0x9d2c5680badf00dull);
  Eigen::VectorXd v(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v[i] = rng.uniform(-1.0, 1.0);
    norm = v.norm();
  } while (norm < 1e-12);
  return v / norm;
}

}  // namespace neuro
}  // namespace litecanon
