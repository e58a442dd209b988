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

#include "litecanon/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>

#include <json.hpp>

#include "litecanon/rng.hpp"

namespace litecanon {
namespace evalkit {

namespace {
using nlohmann::json;
}

std::string tasks_to_jsonl(const std::vector<LiteralTask>& tasks) {
  std::string out;
  for (const LiteralTask& t : tasks) {
    json j{{"literal_id", t.literal_id},
           {"s", t.subject},
           {"p", t.property},
           {"l", t.literal},
           {"gt_types", t.ground_truth_types}};
    if (t.gold_entity) j["gold_entity"] = *t.gold_entity;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<LiteralTask> tasks_from_jsonl(std::istream& in) {
  std::vector<LiteralTask> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad task JSON: ") + e.what(), line_no);
    }
    LiteralTask t;
    t.literal_id = j.at("literal_id").get<std::string>();
    t.subject = j.at("s").get<std::string>();
    t.property = j.at("p").get<std::string>();
    t.literal = j.at("l").get<std::string>();
    if (t.literal.empty()) throw ParseError("empty literal", line_no);
    if (j.contains("gt_types"))
      for (const auto& c : j["gt_types"])
        t.ground_truth_types.insert(c.get<std::string>());
    if (j.contains("gold_entity"))
      t.gold_entity = j["gold_entity"].get<std::string>();
    out.push_back(std::move(t));
  }
  return out;
}

MetricsTriple literal_metrics(const kb::IriSet& predicted,
                              const kb::IriSet& gold) {
  if (gold.empty()) throw Error("literal_metrics: empty ground truth");
  if (predicted.empty()) return {0.0, 0.0, 0.0};
  size_t hit = 0;
  for (const kb::Iri& c : predicted)
    if (gold.count(c)) ++hit;
  MetricsTriple m;
  m.precision = static_cast<double>(hit) / static_cast<double>(predicted.size());
  m.recall = static_cast<double>(hit) / static_cast<double>(gold.size());
  m.f1 = (m.precision + m.recall) == 0.0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

EvalReport sweep(const std::vector<typing::ScoreMap>& score_maps,
                 const std::vector<LiteralTask>& tasks,
                 typing::Strategy strategy, double kappa, const kb::Kb& kb,
                 double at_theta) {
  std::map<std::string, const typing::ScoreMap*> by_id;
  for (const typing::ScoreMap& sm : score_maps) by_id[sm.literal_id] = &sm;

  // Selection depends on theta only through the score threshold, so
  // precompute per literal the effective score of every class: the raw (or
  // hierarchical) score, with classes failing the exclusion test dropped.
  struct PreparedLiteral {
    std::map<kb::Iri, double> effective;  // class -> score actually compared
    const kb::IriSet* gold;
  };
  std::vector<PreparedLiteral> prepared;
  for (const LiteralTask& task : tasks) {
    if (task.ground_truth_types.empty()) continue;
    auto it = by_id.find(task.literal_id);
    if (it == by_id.end()) continue;
    PreparedLiteral pl;
    pl.gold = &task.ground_truth_types;
    if (strategy == typing::Strategy::independent) {
      pl.effective = it->second->scores;
    } else {
      std::map<kb::Iri, double> hs = typing::hierarchical_scores(*it->second, kb);
      kb::IriSet candidates;
      for (const auto& [c, _] : it->second->scores) candidates.insert(c);
      typing::TypingResult at_zero =
          typing::hierarchical_select(hs, candidates, 0.0, kappa, kb);
      for (const kb::Iri& c : at_zero.selected) pl.effective[c] = hs.at(c);
    }
    prepared.push_back(std::move(pl));
  }

  EvalReport report;
  report.strategy = strategy;
  report.kappa = kappa;
  report.theta = at_theta;
  report.curve.reserve(101);

  std::vector<double> f1s;
  for (int step = 0; step <= 100; ++step) {
    double theta = static_cast<double>(step) / 100.0;
    MetricsTriple mean;
    for (const PreparedLiteral& pl : prepared) {
      kb::IriSet selected;
      for (const auto& [c, s] : pl.effective)
        if (s >= theta) selected.insert(c);
      MetricsTriple m = literal_metrics(selected, *pl.gold);
      mean.precision += m.precision;
      mean.recall += m.recall;
      mean.f1 += m.f1;
    }
    if (!prepared.empty()) {
      double n = static_cast<double>(prepared.size());
      mean.precision /= n;
      mean.recall /= n;
      mean.f1 /= n;
    }
    report.curve.push_back({theta, mean});
    f1s.push_back(mean.f1);
  }

  report.avgf1_all =
      std::accumulate(f1s.begin(), f1s.end(), 0.0) / static_cast<double>(f1s.size());
  std::vector<double> sorted = f1s;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double top5 = 0.0;
  size_t top_n = std::min<size_t>(5, sorted.size());
  for (size_t i = 0; i < top_n; ++i) top5 += sorted[i];
  report.avgf1_top5 = top5 / static_cast<double>(top_n);

  // Nearest grid point to the requested operating theta.
  int idx = static_cast<int>(std::lround(at_theta * 100.0));
  idx = std::clamp(idx, 0, 100);
  report.at_theta = report.curve[idx].metrics;
  return report;
}

std::string curve_to_tsv(const EvalReport& report) {
  std::string out = "theta\tprecision\trecall\tf1\n";
  char buf[128];
  for (const ThetaPoint& p : report.curve) {
    std::snprintf(buf, sizeof(buf), "%.2f\t%.6f\t%.6f\t%.6f\n", p.theta,
                  p.metrics.precision, p.metrics.recall, p.metrics.f1);
    out += buf;
  }
  return out;
}

MatchReport entity_matching_report(
    const std::vector<std::pair<std::string, canon::CanonResult>>& results,
    const std::map<std::string, bool>& judgments) {
  MatchReport report;
  std::string missing;
  for (const auto& [id, r] : results) {
    if (r.outcome != canon::Outcome::matched) continue;
    ++report.total_matches;
    auto it = judgments.find(id);
    if (it == judgments.end()) {
      missing += missing.empty() ? id : ", " + id;
      continue;
    }
    if (it->second) ++report.correct;
  }
  if (!missing.empty())
    throw Error("unjudged matched literals: " + missing);
  if (report.total_matches == 0) {
    report.no_matches = true;
    report.precision = 0.0;
  } else {
    report.precision = static_cast<double>(report.correct) /
                       static_cast<double>(report.total_matches);
  }
  return report;
}

std::pair<kb::Kb, std::vector<LiteralTask>> synth_slite(const kb::Kb& kb,
                                                        size_t n,
                                                        uint64_t seed) {
  kb::IriSet classes = kb.classes();
  kb::IriSet roots = kb.roots();
  kb::IriSet predicates;
  for (const kb::Triple& t : kb.triples()) predicates.insert(t.predicate);

  // Eligible: entity-object triples where the object is a typed non-class
  // entity and the predicate is not a schema predicate.
  std::vector<kb::Triple> eligible;
  const auto& cfg = kb.config();
  for (const kb::Triple& t : kb.triples()) {
    if (!t.object.is_iri) continue;
    if (t.predicate == cfg.type_predicate ||
        t.predicate == cfg.subclass_predicate ||
        t.predicate == cfg.disjoint_predicate ||
        cfg.label_predicates.count(t.predicate))
      continue;
    const kb::Iri& e = t.object.value;
    if (classes.count(e)) continue;
    if (kb.asserted_classes(e).empty()) continue;
    eligible.push_back(t);
  }
  if (eligible.size() < n)
    throw Error("only " + std::to_string(eligible.size()) +
                " eligible triples for synthesis, need " + std::to_string(n));

  Rng rng(seed);
  std::vector<size_t> chosen = rng.sample_indices(eligible.size(), n);
  std::sort(chosen.begin(), chosen.end());

  std::vector<LiteralTask> tasks;
  kb::IriSet removed;
  size_t counter = 0;
  for (size_t idx : chosen) {
    const kb::Triple& t = eligible[idx];
    const kb::Iri& e = t.object.value;
    LiteralTask task;
    char id[16];
    std::snprintf(id, sizeof(id), "L%06zu", ++counter);
    task.literal_id = id;
    task.subject = t.subject;
    task.property = t.predicate;
    task.literal = kb.primary_label(e);
    task.gold_entity = e;
    for (const kb::Iri& c : kb.inferred_classes(e))
      if (!roots.count(c)) task.ground_truth_types.insert(c);
    tasks.push_back(std::move(task));
    removed.insert(e);
  }
  return {kb.without_entities(removed), std::move(tasks)};
}

}  // namespace evalkit
}  // namespace litecanon
