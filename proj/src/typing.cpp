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

#include "litecanon/typing.hpp"

#include "litecanon/candidates.hpp"

namespace litecanon {
namespace typing {

std::string strategy_str(Strategy s) {
  return s == Strategy::independent ? "independent" : "hierarchical";
}

Strategy strategy_from(const std::string& s) {
  if (s == "independent") return Strategy::independent;
  if (s == "hierarchical") return Strategy::hierarchical;
  throw Error("unknown strategy: " + s);
}

TypingResult independent_select(const ScoreMap& scores, double theta) {
  TypingResult out;
  out.literal_id = scores.literal_id;
  out.strategy = Strategy::independent;
  out.theta = theta;
  for (const auto& [c, y] : scores.scores)
    if (y >= theta) out.selected.insert(c);
  return out;
}

std::map<kb::Iri, double> hierarchical_scores(const ScoreMap& scores,
                                              const kb::Kb& kb) {
  std::map<kb::Iri, double> out;
  for (const auto& [c, y] : scores.scores) out[c] = y;
  // Push each candidate's raw score onto its candidate ancestors.
  for (const auto& [c, y] : scores.scores) {
    if (!kb.has_class(c)) continue;
    for (const kb::Iri& up : kb.superclasses(c)) {
      auto it = out.find(up);
      if (it != out.end() && y > it->second) it->second = y;
    }
  }
  return out;
}

TypingResult hierarchical_select(const std::map<kb::Iri, double>& hscores,
                                 const kb::IriSet& candidates, double theta,
                                 double kappa, const kb::Kb& kb) {
  TypingResult out;
  out.strategy = Strategy::hierarchical;
  out.theta = theta;
  out.kappa = kappa;
  out.hier_scores = hscores;
  for (const auto& [c, s] : hscores) {
    if (s < theta) continue;
    double best_disjoint = 0.0;  // empty competitor set scores zero
    if (kb.has_class(c)) {
      for (const kb::Iri& d : kb.disjoint_candidates(candidates, c)) {
        auto it = hscores.find(d);
        if (it != hscores.end() && it->second > best_disjoint)
          best_disjoint = it->second;
      }
    }
    if (s - best_disjoint >= kappa) out.selected.insert(c);
  }
  return out;
}

std::map<kb::Iri, double> property_range_estimation(const kb::Kb& kb,
                                                    const kb::Iri& p) {
  kb::IriSet objects = candgen::entity_objects(kb, p);
  if (objects.empty())
    throw Error("property has no entity objects: " + p);
  kb::IriSet closure = candgen::classes_of(kb, objects);
  std::map<kb::Iri, double> out;
  for (const kb::Iri& c : closure) {
    size_t count = 0;
    for (const kb::Iri& e : objects)
      if (kb.is_instance_of(e, c, /*inferred=*/true)) ++count;
    out[c] = static_cast<double>(count) / static_cast<double>(objects.size());
  }
  return out;
}

kb::IriSet entity_lookup_baseline(const lex::Index& index, const kb::Kb& kb,
                                  const std::string& literal, int k) {
  kb::IriSet entities;
  for (const lex::RankedEntity& r : lex::lookup_phrase(index, literal, k))
    entities.insert(r.entity);
  return candgen::classes_of(kb, entities, kb.roots());
}

}  // namespace typing
}  // namespace litecanon
