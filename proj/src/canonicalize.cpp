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

#include "litecanon/canonicalize.hpp"

#include <vector>

namespace litecanon {
namespace canon {

std::string outcome_str(Outcome o) {
  switch (o) {
    case Outcome::matched: return "matched";
    case Outcome::new_entity: return "new_entity";
    default: return "abstained";
  }
}

CanonResult match_entity(const lex::Index& index, const kb::Kb& kb,
                         const std::string& literal, const kb::IriSet& types,
                         int k, double min_sim) {
  CanonResult out;
  std::vector<lex::RankedEntity> candidates =
      lex::lookup_phrase(index, literal, k);

  std::vector<lex::RankedEntity> survivors;
  for (const lex::RankedEntity& r : candidates) {
    if (types.empty()) {
      survivors.push_back(r);
      continue;
    }
    for (const kb::Iri& c : types) {
      if (kb.has_class(c) && kb.is_instance_of(r.entity, c, /*inferred=*/true)) {
        survivors.push_back(r);
        break;
      }
    }
  }

  if (candidates.empty() || survivors.empty()) {
    out.outcome = Outcome::new_entity;
    out.new_types = kb.most_specific(types);
    return out;
  }
  const lex::RankedEntity& best = survivors.front();
  if (best.similarity >= min_sim) {
    out.outcome = Outcome::matched;
    out.entity = best.entity;
    out.similarity = best.similarity;
  } else {
    out.outcome = Outcome::abstained;
  }
  return out;
}

bool consistency_check(const kb::Kb& kb, const kb::Iri* entity,
                       const kb::IriSet& types) {
  kb::IriSet pool = types;
  if (entity) {
    kb::IriSet asserted = kb.asserted_classes(*entity);
    pool.insert(asserted.begin(), asserted.end());
  }
  for (const kb::Iri& a : pool)
    for (const kb::Iri& b : pool)
      if (a < b && kb.disjoint_with(a, b)) return false;
  return true;
}

CanonResult canonicalize(const lex::Index& index, const kb::Kb& kb,
                         const std::string& literal, const kb::IriSet& types,
                         int k, double min_sim) {
  CanonResult out = match_entity(index, kb, literal, types, k, min_sim);
  if (out.outcome == Outcome::matched) {
    if (!consistency_check(kb, &out.entity, types)) {
      out = CanonResult{};
      out.outcome = Outcome::abstained;
    }
  } else if (out.outcome == Outcome::new_entity) {
    if (!consistency_check(kb, nullptr, out.new_types)) {
      out = CanonResult{};
      out.outcome = Outcome::abstained;
    }
  }
  return out;
}

}  // namespace canon
}  // namespace litecanon
