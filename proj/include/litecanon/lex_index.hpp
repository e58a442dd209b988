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

#ifndef LITECANON_LEX_INDEX_HPP_
#define LITECANON_LEX_INDEX_HPP_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "litecanon/kb.hpp"

namespace litecanon {
namespace lex {

// Case-folded tokens, split on non-alphanumeric boundaries and camelCase
// transitions. "statsLeague" -> {"stats", "league"}.
std::vector<std::string> normalize_tokens(std::string_view text);

// Tokens joined by single spaces.
std::string normalize_phrase(std::string_view text);

// 1 - levenshtein(normalize(a), normalize(b)) / max length. Both empty -> 1.
double lexical_similarity(std::string_view a, std::string_view b);

struct RankedEntity {
  kb::Iri entity;
  double similarity = 0.0;
};

// Inverted index over entity names, labels and optional anchor text.
struct Index {
  std::map<std::string, kb::IriSet> postings;               // token -> entities
  std::map<kb::Iri, std::set<std::string>> entity_texts;    // normalized
};

// Anchors: entity IRI -> free text (e.g. a description line). Loaded from a
// TSV file of `iri<TAB>text`.
Index build_index(const kb::Kb& kb,
                  const std::map<kb::Iri, std::string>* anchors = nullptr);

std::map<kb::Iri, std::string> load_anchors_tsv(const std::string& path);

// E_M retrieval: union of three channels (whole phrase, each token, each
// contiguous sub-phrase of >= 2 tokens), each channel ranked by similarity
// to the full query string and truncated to `cap`.
kb::IriSet lookup_expanded(const Index& index, const std::string& literal,
                           int cap);

// Top-k entities by similarity between the whole phrase and the entity's
// best text; zero-similarity entities are not matches. Ties break by IRI.
std::vector<RankedEntity> lookup_phrase(const Index& index,
                                        const std::string& phrase, int k);

}  // namespace lex
}  // namespace litecanon

#endif  // LITECANON_LEX_INDEX_HPP_
