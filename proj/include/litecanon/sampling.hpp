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

#ifndef LITECANON_SAMPLING_HPP_
#define LITECANON_SAMPLING_HPP_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "litecanon/kb.hpp"

namespace litecanon {
namespace sampler {

enum class Polarity { positive, negative };
enum class Origin { particular, general };

// One labeled <subject text, property text, literal text> training triple
// for a class. source_entity records which KB entity produced it; the
// refinement stage keys on it.
struct Sample {
  std::string subject_text;
  std::string property_text;
  std::string literal_text;
  kb::Iri class_iri;
  Polarity polarity = Polarity::positive;
  Origin origin = Origin::particular;
  kb::Iri source_entity;
  kb::Iri property;  // IRI of the property whose classifier this feeds

  auto operator<=>(const Sample&) const = default;
};

using SampleSet = std::set<Sample>;

// Local entity -> external entity, functional.
using EntityMapping = std::map<kb::Iri, kb::Iri>;

EntityMapping load_mapping_tsv(const std::string& path);

// Positive particular samples for class c: entities of e_m that are
// inferred instances of c, expanded over their p-subjects and labels.
SampleSet particular_positive(const kb::Kb& kb, const kb::IriSet& e_m,
                              const kb::Iri& c, const kb::Iri& p);

// Negative particular samples: entities of e_m that are instances of some
// sibling of c and not of c, same expansion.
SampleSet particular_negative(const kb::Kb& kb, const kb::IriSet& e_m,
                              const kb::Iri& c, const kb::Iri& p);

// Balanced general samples for class c. Positives expand the instances of
// c, negatives the sibling-class instances that are not instances of c;
// both sides are independently down-sampled to min(#pos, #neg, n0) with the
// given seed. The property is known here only by its label; the subject
// slot takes the label of an entity with any triple into the source entity,
// or the source entity's own label when it has none.
std::pair<SampleSet, SampleSet> general_samples(const kb::Kb& kb,
                                                const kb::Iri& c,
                                                const std::string& p_label,
                                                size_t n0, uint64_t seed,
                                                const kb::Iri& p = {});

// True iff some type of one set subsumes or is subsumed by some type of the
// other (same branch of the hierarchy). Empty sets are compatible.
bool type_compatible(const kb::Kb& hier, const kb::IriSet& types_a,
                     const kb::IriSet& types_b);

struct RefinementStats {
  struct PerClass {
    size_t original_positive = 0;
    size_t original_negative = 0;
    size_t deleted_positive = 0;
    size_t deleted_negative = 0;
    size_t added_positive = 0;
    size_t added_negative = 0;
  };
  std::map<kb::Iri, PerClass> per_class;

  double added_positive_ratio() const;
  double deleted_positive_ratio() const;
  double added_negative_ratio() const;
  double deleted_negative_ratio() const;
};

// Validate sample source entities against an external KB through the
// mapping: entities whose local and external types land in different
// branches of `hier` lose all their samples; negatives whose external types
// make them instances of the sample's class flip to positives.
std::pair<SampleSet, RefinementStats> refine_samples(
    const SampleSet& samples, const kb::Kb& kb, const kb::Kb& external,
    const EntityMapping& mapping, const kb::Kb& hier);

// JSON Lines serialization, one object per sample, sorted.
std::string to_jsonl(const SampleSet& samples);
SampleSet from_jsonl(std::istream& in);

}  // namespace sampler
}  // namespace litecanon

#endif  // LITECANON_SAMPLING_HPP_
