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

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "litecanon/pipeline.hpp"
#include "litecanon/toy_dataset.hpp"

int main(int argc, char** argv) {
  CLI::App app{"litecanon-toygen - generate the bundled synthetic KB"};
  std::string out_dir = "toy";
  size_t entities_per_leaf = 38;
  size_t triples_per_property = 70;
  int dim = 24;
  uint64_t seed = 7;
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--entities-per-leaf", entities_per_leaf,
                 "entities per leaf class (8 leaves)");
  app.add_option("--triples-per-property", triples_per_property,
                 "object triples per property");
  app.add_option("--dim", dim, "embedding dimension");
  app.add_option("--seed", seed, "generator seed");
  CLI11_PARSE(app, argc, argv);

  try {
    litecanon::evalkit::ToyConfig cfg;
    cfg.entities_per_leaf = entities_per_leaf;
    cfg.triples_per_property = triples_per_property;
    cfg.embedding_dim = dim;
    cfg.seed = seed;
    litecanon::evalkit::ToyDataset toy = litecanon::evalkit::generate_toy_dataset(cfg);

    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    litecanon::pipeline::write_atomic((fs::path(out_dir) / "kb.nt").string(),
                                      toy.kb_ntriples);
    litecanon::pipeline::write_atomic(
        (fs::path(out_dir) / "embeddings.txt").string(), toy.embeddings_text);
    std::cerr << "wrote " << out_dir << "/kb.nt (" << toy.kb.triples().size()
              << " triples, " << toy.kb.entities().size() << " entities) and "
              << out_dir << "/embeddings.txt (" << toy.vocabulary.size()
              << " words)\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
