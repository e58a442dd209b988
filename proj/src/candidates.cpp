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

#include "litecanon/candidates.hpp"

namespace litecanon {
namespace candgen {

kb::IriSet entity_objects(const kb::Kb& kb, const kb::Iri& p) {
  kb::IriSet out;
  for (const kb::Triple& t : kb.triples())
    if (t.predicate == p && t.object.is_iri) out.insert(t.object.value);
  return out;
}

kb::IriSet classes_of(const kb::Kb& kb, const kb::IriSet& entities,
                      const kb::IriSet& exclude) {
  kb::IriSet out;
  for (const kb::Iri& e : entities) {
    kb::IriSet closure = kb.inferred_classes(e);
    out.insert(closure.begin(), closure.end());
  }
  for (const kb::Iri& x : exclude) out.erase(x);
  return out;
}

CandidateSet candidate_classes(const kb::Kb& kb, const lex::Index& index,
                               const kb::Iri& p,
                               const std::vector<std::string>& literals,
                               int lookup_cap,
                               const kb::IriSet* exclude_roots) {
  kb::IriSet exclude = exclude_roots ? *exclude_roots : kb.roots();
  CandidateSet cs;
  cs.property = p;
  cs.e_p = entity_objects(kb, p);
  cs.c_p = classes_of(kb, cs.e_p, exclude);
  for (const std::string& literal : literals) {
    kb::IriSet matched = lex::lookup_expanded(index, literal, lookup_cap);
    cs.e_m.insert(matched.begin(), matched.end());
  }
  cs.c_m = classes_of(kb, cs.e_m, exclude);
  cs.c_pm = cs.c_p;
  cs.c_pm.insert(cs.c_m.begin(), cs.c_m.end());
  return cs;
}

}  // namespace candgen
}  // namespace litecanon
