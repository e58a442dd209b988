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

#ifndef LITECANON_CANONICALIZE_HPP_
#define LITECANON_CANONICALIZE_HPP_

#include <string>

#include "litecanon/kb.hpp"
#include "litecanon/lex_index.hpp"

namespace litecanon {
namespace canon {

enum class Outcome { matched, new_entity, abstained };

std::string outcome_str(Outcome o);

struct CanonResult {
  std::string literal_id;
  Outcome outcome = Outcome::abstained;
  kb::Iri entity;              // matched only
  double similarity = 0.0;     // matched only
  kb::IriSet new_types;        // new_entity only, an antichain
};

// Type-constrained entity matching: rank the top-k phrase-lookup candidates,
// drop those that are no inferred instance of any selected type, then take
// the most similar survivor if it clears min_sim. No candidates (or none
// surviving the filter) proposes a new entity typed with the most specific
// selected classes; a best survivor below min_sim abstains.
CanonResult match_entity(const lex::Index& index, const kb::Kb& kb,
                         const std::string& literal, const kb::IriSet& types,
                         int k, double min_sim);

// Shallow KB-insertion check: no two classes among the entity's classes and
// the proposed types may be disjoint (derived or declared).
bool consistency_check(const kb::Kb& kb, const kb::Iri* entity,
                       const kb::IriSet& types);

// match_entity with inconsistent outcomes downgraded to abstained.
CanonResult canonicalize(const lex::Index& index, const kb::Kb& kb,
                         const std::string& literal, const kb::IriSet& types,
                         int k, double min_sim);

}  // namespace canon
}  // namespace litecanon

#endif  // LITECANON_CANONICALIZE_HPP_
