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

#include "litecanon/sampling.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <vector>

#include <json.hpp>

#include "litecanon/lex_index.hpp"
#include "litecanon/rng.hpp"

namespace litecanon {
namespace sampler {

namespace {

using nlohmann::json;

bool has_tokens(const std::string& text) {
  return !lex::normalize_phrase(text).empty();
}

// Eq. 4 expansion: one sample per (subject, label) pair of the entity.
void expand_entity(const kb::Kb& kb, const kb::Iri& e, const kb::IriSet& subjects,
                   const std::string& p_text, const kb::Iri& c,
                   Polarity polarity, Origin origin, const kb::Iri& p,
                   SampleSet& out) {
  if (!has_tokens(p_text)) return;
  for (const kb::Iri& s : subjects) {
    std::string s_text = kb.primary_label(s);
    if (!has_tokens(s_text)) continue;
    for (const std::string& l : kb.labels_of(e)) {
      if (!has_tokens(l)) continue;
      out.insert(Sample{s_text, p_text, l, c, polarity, origin, e, p});
    }
  }
}

SampleSet particular_set(const kb::Kb& kb, const kb::IriSet& entities,
                         const kb::Iri& c, const kb::Iri& p,
                         Polarity polarity) {
  SampleSet out;
  std::string p_text = kb.primary_label(p);
  for (const kb::Iri& e : entities)
    expand_entity(kb, e, kb.subjects_of(p, e), p_text, c, polarity,
                  Origin::particular, p, out);
  return out;
}

SampleSet downsample(const SampleSet& samples, size_t target, Rng& rng) {
  if (samples.size() <= target) return samples;
  std::vector<Sample> ordered(samples.begin(), samples.end());
  SampleSet out;
  for (size_t i : rng.sample_indices(ordered.size(), target))
    out.insert(ordered[i]);
  return out;
}

std::string polarity_str(Polarity p) {
  return p == Polarity::positive ? "positive" : "negative";
}
std::string origin_str(Origin o) {
  return o == Origin::particular ? "particular" : "general";
}

}  // namespace

EntityMapping load_mapping_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  EntityMapping mapping;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("expected `local-iri<TAB>external-iri`", line_no);
    mapping[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return mapping;
}

SampleSet particular_positive(const kb::Kb& kb, const kb::IriSet& e_m,
                              const kb::Iri& c, const kb::Iri& p) {
  kb::IriSet positives;
  for (const kb::Iri& e : e_m)
    if (kb.is_instance_of(e, c, /*inferred=*/true)) positives.insert(e);
  return particular_set(kb, positives, c, p, Polarity::positive);
}

SampleSet particular_negative(const kb::Kb& kb, const kb::IriSet& e_m,
                              const kb::Iri& c, const kb::Iri& p) {
  kb::IriSet siblings = kb.siblings(c);
  kb::IriSet negatives;
  for (const kb::Iri& e : e_m) {
    if (kb.is_instance_of(e, c, /*inferred=*/true)) continue;
    for (const kb::Iri& sib : siblings) {
      if (kb.is_instance_of(e, sib, /*inferred=*/true)) {
        negatives.insert(e);
        break;
      }
    }
  }
  return particular_set(kb, negatives, c, p, Polarity::negative);
}

std::pair<SampleSet, SampleSet> general_samples(const kb::Kb& kb,
                                                const kb::Iri& c,
                                                const std::string& p_label,
                                                size_t n0, uint64_t seed,
                                                const kb::Iri& p) {
  kb::IriSet pos_entities = kb.instances_of(c, /*inferred=*/true);
  kb::IriSet neg_entities;
  for (const kb::Iri& sib : kb.siblings(c)) {
    kb::IriSet e = kb.instances_of(sib, /*inferred=*/true);
    neg_entities.insert(e.begin(), e.end());
  }
  for (const kb::Iri& e : pos_entities) neg_entities.erase(e);

  auto expand_all = [&](const kb::IriSet& entities, Polarity polarity) {
    SampleSet out;
    for (const kb::Iri& e : entities) {
      kb::IriSet subjects = kb.subjects_any(e);
      if (subjects.empty()) subjects.insert(e);
      expand_entity(kb, e, subjects, p_label, c, polarity, Origin::general, p,
                    out);
    }
    return out;
  };
  SampleSet pos = expand_all(pos_entities, Polarity::positive);
  SampleSet neg = expand_all(neg_entities, Polarity::negative);

  size_t target = std::min({pos.size(), neg.size(), n0});
  Rng rng(seed);
  pos = downsample(pos, target, rng);
  neg = downsample(neg, target, rng);
  return {pos, neg};
}

bool type_compatible(const kb::Kb& hier, const kb::IriSet& types_a,
                     const kb::IriSet& types_b) {
  if (types_a.empty() || types_b.empty()) return true;
  auto below = [&](const kb::Iri& x, const kb::Iri& y) {
    if (x == y) return true;
    if (!hier.has_class(x)) return false;
    return hier.superclasses(x).count(y) > 0;
  };
  for (const kb::Iri& a : types_a)
    for (const kb::Iri& b : types_b)
      if (below(a, b) || below(b, a)) return true;
  return false;
}

std::pair<SampleSet, RefinementStats> refine_samples(
    const SampleSet& samples, const kb::Kb& kb, const kb::Kb& external,
    const EntityMapping& mapping, const kb::Kb& hier) {
  RefinementStats stats;
  for (const Sample& s : samples) {
    auto& pc = stats.per_class[s.class_iri];
    if (s.polarity == Polarity::positive) ++pc.original_positive;
    else ++pc.original_negative;
  }

  SampleSet out;
  for (const Sample& s : samples) {
    auto mapped = mapping.find(s.source_entity);
    if (mapped == mapping.end()) {
      out.insert(s);
      continue;
    }
    kb::IriSet local = kb.asserted_classes(s.source_entity);
    kb::IriSet ext = external.asserted_classes(mapped->second);
    auto& pc = stats.per_class[s.class_iri];

    // Wrong classification: the two KBs disagree on the branch.
    if (!type_compatible(hier, local, ext)) {
      if (s.polarity == Polarity::positive) ++pc.deleted_positive;
      else ++pc.deleted_negative;
      continue;
    }

    // Missing classification: external types make a negative entity an
    // instance of the sample's class.
    if (s.polarity == Polarity::negative) {
      bool external_instance = false;
      for (const kb::Iri& t : ext) {
        if (t == s.class_iri ||
            (hier.has_class(t) && hier.superclasses(t).count(s.class_iri))) {
          external_instance = true;
          break;
        }
      }
      if (external_instance) {
        Sample flipped = s;
        flipped.polarity = Polarity::positive;
        out.insert(flipped);
        ++pc.deleted_negative;
        ++pc.added_positive;
        continue;
      }
    }
    out.insert(s);
  }
  return {out, stats};
}

namespace {
double ratio_over_classes(
    const std::map<kb::Iri, RefinementStats::PerClass>& per_class,
    size_t RefinementStats::PerClass::* num,
    size_t RefinementStats::PerClass::* den) {
  double sum = 0.0;
  size_t n = 0;
  for (const auto& [_, pc] : per_class) {
    size_t d = pc.*den;
    if (d == 0) continue;
    sum += static_cast<double>(pc.*num) / static_cast<double>(d);
    ++n;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}
}  // namespace

double RefinementStats::added_positive_ratio() const {
  return ratio_over_classes(per_class, &PerClass::added_positive,
                            &PerClass::original_positive);
}
double RefinementStats::deleted_positive_ratio() const {
  return ratio_over_classes(per_class, &PerClass::deleted_positive,
                            &PerClass::original_positive);
}
double RefinementStats::added_negative_ratio() const {
  return ratio_over_classes(per_class, &PerClass::added_negative,
                            &PerClass::original_negative);
}
double RefinementStats::deleted_negative_ratio() const {
  return ratio_over_classes(per_class, &PerClass::deleted_negative,
                            &PerClass::original_negative);
}

std::string to_jsonl(const SampleSet& samples) {
  std::string out;
  for (const Sample& s : samples) {
    json j{{"subject_text", s.subject_text},
           {"property_text", s.property_text},
           {"literal_text", s.literal_text},
           {"class", s.class_iri},
           {"polarity", polarity_str(s.polarity)},
           {"origin", origin_str(s.origin)},
           {"source_entity", s.source_entity},
           {"property", s.property}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

SampleSet from_jsonl(std::istream& in) {
  SampleSet out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad sample JSON: ") + e.what(), line_no);
    }
    Sample s;
    s.subject_text = j.at("subject_text").get<std::string>();
    s.property_text = j.at("property_text").get<std::string>();
    s.literal_text = j.at("literal_text").get<std::string>();
    s.class_iri = j.at("class").get<std::string>();
    s.polarity = j.at("polarity").get<std::string>() == "positive"
                     ? Polarity::positive
                     : Polarity::negative;
    s.origin = j.at("origin").get<std::string>() == "particular"
                   ? Origin::particular
                   : Origin::general;
    s.source_entity = j.value("source_entity", "");
    s.property = j.value("property", "");
    out.insert(s);
  }
  return out;
}

}  // namespace sampler
}  // namespace litecanon
