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

#ifndef LITECANON_EVAL_HPP_
#define LITECANON_EVAL_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "litecanon/canonicalize.hpp"
#include "litecanon/kb.hpp"
#include "litecanon/typing.hpp"

namespace litecanon {
namespace evalkit {

// One literal to type and canonicalize, with optional ground truth.
struct LiteralTask {
  std::string literal_id;
  kb::Iri subject;
  kb::Iri property;
  std::string literal;
  kb::IriSet ground_truth_types;
  std::optional<kb::Iri> gold_entity;
};

std::string tasks_to_jsonl(const std::vector<LiteralTask>& tasks);
std::vector<LiteralTask> tasks_from_jsonl(std::istream& in);

struct MetricsTriple {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Micro metrics for one literal. Empty prediction scores (0, 0, 0);
// empty gold is an error.
MetricsTriple literal_metrics(const kb::IriSet& predicted,
                              const kb::IriSet& gold);

struct ThetaPoint {
  double theta = 0.0;
  MetricsTriple metrics;
};

struct EvalReport {
  typing::Strategy strategy = typing::Strategy::independent;
  double kappa = 0.0;
  double theta = 0.0;          // the configured operating point
  MetricsTriple at_theta;      // dataset means at that point
  double avgf1_all = 0.0;      // mean F1 over the 101-point grid
  double avgf1_top5 = 0.0;     // mean of the five best grid F1 values
  std::vector<ThetaPoint> curve;  // exactly 101 points, step 0.01
};

// Theta sweep over 0.00 .. 1.00. Tasks without ground truth are skipped;
// score maps are matched to tasks by literal_id.
EvalReport sweep(const std::vector<typing::ScoreMap>& score_maps,
                 const std::vector<LiteralTask>& tasks,
                 typing::Strategy strategy, double kappa, const kb::Kb& kb,
                 double at_theta = 0.5);

std::string curve_to_tsv(const EvalReport& report);

struct MatchReport {
  size_t correct = 0;
  size_t total_matches = 0;
  double precision = 0.0;
  bool no_matches = false;
};

// Precision over matched results only; judgments map literal_id -> correct.
// A matched result without a judgment is an error.
MatchReport entity_matching_report(
    const std::vector<std::pair<std::string, canon::CanonResult>>& results,
    const std::map<std::string, bool>& judgments);

// Synthesize literal tasks by sampling triples with a typed entity object,
// replacing the object with its label, and removing the entity from the KB
// so lookup cannot find it. Ground truth is the object's inferred class
// closure minus the hierarchy roots.
std::pair<kb::Kb, std::vector<LiteralTask>> synth_slite(const kb::Kb& kb,
                                                        size_t n,
                                                        uint64_t seed);

}  // namespace evalkit
}  // namespace litecanon

#endif  // LITECANON_EVAL_HPP_
