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

#ifndef LITECANON_TYPING_HPP_
#define LITECANON_TYPING_HPP_

#include <map>
#include <optional>
#include <string>

#include "litecanon/kb.hpp"
#include "litecanon/lex_index.hpp"

namespace litecanon {
namespace typing {

// Per-class classifier scores for one literal; the key set is the
// candidate set C_PM of the literal's property.
struct ScoreMap {
  std::string literal_id;
  std::map<kb::Iri, double> scores;
};

enum class Strategy { independent, hierarchical };

std::string strategy_str(Strategy s);
Strategy strategy_from(const std::string& s);

struct TypingResult {
  std::string literal_id;
  Strategy strategy = Strategy::independent;
  double theta = 0.0;
  double kappa = 0.0;
  std::optional<std::map<kb::Iri, double>> hier_scores;
  kb::IriSet selected;
};

// Classes whose raw score reaches theta.
TypingResult independent_select(const ScoreMap& scores, double theta);

// Hierarchical score per class: the best raw score among its candidate
// descendants, itself included.
std::map<kb::Iri, double> hierarchical_scores(const ScoreMap& scores,
                                              const kb::Kb& kb);

// A class is selected when its hierarchical score reaches theta and keeps a
// margin of at least kappa over its best disjoint competitor (no
// competitors counts as a competitor score of zero).
TypingResult hierarchical_select(const std::map<kb::Iri, double>& hscores,
                                 const kb::IriSet& candidates, double theta,
                                 double kappa, const kb::Kb& kb);

// Baseline: score each class in the closure of the property's entity
// objects by the fraction of objects that are inferred instances.
// Throws when the property has no entity objects.
std::map<kb::Iri, double> property_range_estimation(const kb::Kb& kb,
                                                    const kb::Iri& p);

// Baseline: classes (with superclasses, root excluded) of the top-k
// phrase-lookup entities.
kb::IriSet entity_lookup_baseline(const lex::Index& index, const kb::Kb& kb,
                                  const std::string& literal, int k);

}  // namespace typing
}  // namespace litecanon

#endif  // LITECANON_TYPING_HPP_
