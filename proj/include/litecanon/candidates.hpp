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

#ifndef LITECANON_CANDIDATES_HPP_
#define LITECANON_CANDIDATES_HPP_

#include <string>
#include <vector>

#include "litecanon/kb.hpp"
#include "litecanon/lex_index.hpp"

namespace litecanon {
namespace candgen {

// Candidate classes pooled per property: C_P from entity objects, C_M from
// entities lexically matched by the property's literals.
struct CandidateSet {
  kb::Iri property;
  kb::IriSet e_p;   // entity objects of the property
  kb::IriSet c_p;   // their classes, closed under superclasses
  kb::IriSet e_m;   // entities matched by the literals
  kb::IriSet c_m;   // their classes, closed under superclasses
  kb::IriSet c_pm;  // c_p | c_m
};

// All IRI objects of triples with predicate p.
kb::IriSet entity_objects(const kb::Kb& kb, const kb::Iri& p);

// Union of asserted classes closed under superclasses, minus `exclude`
// (normally the hierarchy root, which is trivially true for everything).
kb::IriSet classes_of(const kb::Kb& kb, const kb::IriSet& entities,
                      const kb::IriSet& exclude = {});

CandidateSet candidate_classes(const kb::Kb& kb, const lex::Index& index,
                               const kb::Iri& p,
                               const std::vector<std::string>& literals,
                               int lookup_cap = 30,
                               const kb::IriSet* exclude_roots = nullptr);

}  // namespace candgen
}  // namespace litecanon

#endif  // LITECANON_CANDIDATES_HPP_
