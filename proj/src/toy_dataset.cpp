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

#include "litecanon/toy_dataset.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "litecanon/rng.hpp"

namespace litecanon {
namespace evalkit {

namespace {

const char* kNs = "http://toy.example/";

std::string cls(const std::string& name) { return kNs + std::string("class/") + name; }
std::string prop(const std::string& name) { return kNs + std::string("prop/") + name; }

struct LeafSpec {
  std::string name;
  std::string tag;  // vocabulary stem
};

const std::vector<LeafSpec> kLeaves = {
    {"City", "cit"},      {"Village", "vil"},  {"Wetland", "wet"},
    {"Mountain", "mon"},  {"Person", "per"},   {"Organisation", "org"},
    {"Book", "book"},     {"Song", "song"},
};

const std::vector<std::string> kSuffixes = {
    "or", "an", "el", "is", "um", "ar", "on", "ia",
    "us", "en", "il", "ox", "ur", "ey"};

struct PropertySpec {
  std::string name;
  std::vector<std::string> subject_leaves;
  std::vector<std::string> object_leaves;
};

const std::vector<PropertySpec> kProperties = {
    {"birth_place", {"Person"}, {"City", "Village"}},
    {"natural_border", {"Village"}, {"Wetland", "Mountain"}},
    {"writer", {"Book"}, {"Person"}},
    {"performer", {"Song"}, {"Person", "Organisation"}},
    {"notable_work", {"Person"}, {"Book", "Song"}},
};

}  // namespace

ToyDataset generate_toy_dataset(const ToyConfig& config) {
  Rng rng(config.seed);
  std::ostringstream nt;

  nt << "# synthetic desk-scale KB\n";
  auto sub = [&](const std::string& child, const std::string& parent) {
    nt << "<" << cls(child) << "> <" << kb::kRdfsSubClassOf << "> <"
       << cls(parent) << "> .\n";
  };
  sub("Place", "Thing");
  sub("Agent", "Thing");
  sub("Work", "Thing");
  sub("City", "Place");
  sub("Village", "Place");
  sub("NaturalPlace", "Place");
  sub("Person", "Agent");
  sub("Organisation", "Agent");
  sub("Book", "Work");
  sub("Song", "Work");
  sub("Wetland", "NaturalPlace");
  sub("Mountain", "NaturalPlace");

  // Per-leaf vocabularies: tag + suffix keeps every token unique to its leaf.
  std::map<std::string, std::vector<std::string>> vocab;
  std::set<std::string> all_words;
  for (const LeafSpec& leaf : kLeaves) {
    for (const std::string& suffix : kSuffixes) {
      vocab[leaf.name].push_back(leaf.tag + suffix);
      all_words.insert(leaf.tag + suffix);
    }
  }
  for (const PropertySpec& p : kProperties) {
    std::string name = p.name;
    for (char& c : name)
      if (c == '_') c = ' ';
    std::istringstream words(name);
    std::string w;
    while (words >> w) all_words.insert(w);
  }

  // Entities: label = two vocabulary words, IRI carries the label plus a
  // serial so local names stay unique.
  std::map<std::string, std::vector<std::string>> leaf_entities;
  size_t serial = 0;
  for (const LeafSpec& leaf : kLeaves) {
    const auto& words = vocab[leaf.name];
    for (size_t i = 0; i < config.entities_per_leaf; ++i) {
      std::string a = words[rng.uniform_index(words.size())];
      std::string b = words[rng.uniform_index(words.size())];
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%03zu", ++serial);
      std::string iri = std::string(kNs) + "entity/" + a + "_" + b + "_" + buf;
      nt << "<" << iri << "> <" << kb::kRdfType << "> <" << cls(leaf.name)
         << "> .\n";
      nt << "<" << iri << "> <" << kb::kRdfsLabel << "> \"" << a << " " << b
         << "\" .\n";
      leaf_entities[leaf.name].push_back(iri);
      all_words.insert(buf);
    }
  }

  // Object triples per property.
  for (const PropertySpec& p : kProperties) {
    std::vector<std::string> subjects, objects;
    for (const std::string& leaf : p.subject_leaves)
      for (const std::string& e : leaf_entities[leaf]) subjects.push_back(e);
    for (const std::string& leaf : p.object_leaves)
      for (const std::string& e : leaf_entities[leaf]) objects.push_back(e);
    std::set<std::pair<size_t, size_t>> used;
    size_t emitted = 0;
    while (emitted < config.triples_per_property) {
      size_t si = rng.uniform_index(subjects.size());
      size_t oi = rng.uniform_index(objects.size());
      if (!used.insert({si, oi}).second) continue;
      nt << "<" << subjects[si] << "> <" << prop(p.name) << "> <" << objects[oi]
         << "> .\n";
      ++emitted;
    }
  }

  ToyDataset out;
  out.kb_ntriples = nt.str();
  {
    std::istringstream in(out.kb_ntriples);
    out.kb = kb::Kb::load_ntriples(in);
  }

  // Random unit-norm embeddings over the full vocabulary.
  std::ostringstream emb;
  emb << all_words.size() << " " << config.embedding_dim << "\n";
  for (const std::string& w : all_words) {
    out.vocabulary.push_back(w);
    std::vector<double> v(config.embedding_dim);
    double norm = 0.0;
    for (double& x : v) {
      x = rng.uniform(-1.0, 1.0);
      norm += x * x;
    }
    norm = std::sqrt(norm);
    emb << w;
    char buf[32];
    for (double x : v) {
      std::snprintf(buf, sizeof(buf), " %.6f", x / norm);
      emb << buf;
    }
    emb << "\n";
  }
  out.embeddings_text = emb.str();
  return out;
}

}  // namespace evalkit
}  // namespace litecanon
