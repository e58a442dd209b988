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

#include "litecanon/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "litecanon/candidates.hpp"
#include "litecanon/canonicalize.hpp"
#include "litecanon/eval.hpp"
#include "litecanon/lex_index.hpp"
#include "litecanon/rng.hpp"
#include "litecanon/sampling.hpp"
#include "litecanon/train.hpp"
#include "litecanon/typing.hpp"

namespace litecanon {
namespace pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct Paths {
  fs::path workdir;
  explicit Paths(const PipelineConfig& cfg) : workdir(cfg.workdir) {}

  fs::path kb() const { return workdir / "kb.nt"; }
  fs::path kb_synth() const { return workdir / "kb_synth.nt"; }
  fs::path tasks() const { return workdir / "tasks.jsonl"; }
  fs::path index() const { return workdir / "index.json"; }
  fs::path candidates() const { return workdir / "candidates.json"; }
  fs::path samples() const { return workdir / "samples.jsonl"; }
  fs::path samples_refined() const { return workdir / "samples_refined.jsonl"; }
  fs::path refine_stats() const { return workdir / "refine_stats.json"; }
  fs::path models_dir() const { return workdir / "models"; }
  fs::path manifest() const { return models_dir() / "manifest.json"; }
  fs::path scores() const { return workdir / "scores.jsonl"; }
  fs::path typing() const { return workdir / "typing.jsonl"; }
  fs::path canon() const { return workdir / "canon.jsonl"; }
  fs::path eval() const { return workdir / "eval.json"; }
  fs::path curve() const { return workdir / "curve.tsv"; }
  fs::path meta(const std::string& stage) const {
    return workdir / "meta" / (stage + ".json");
  }
};

void require_artifact(const fs::path& path, const std::string& producer) {
  if (!fs::exists(path))
    throw MissingArtifact("missing artifact " + path.string() +
                          " (produced by stage `" + producer + "`)");
}

void require_config_file(const std::string& path, const std::string& key) {
  if (path.empty())
    throw ConfigError("config key `" + key + "` is required for this stage");
  if (!fs::exists(path))
    throw ConfigError("config key `" + key + "`: no such file: " + path);
}

// kb_synth.nt supersedes kb.nt once `synth` has run.
fs::path effective_kb(const Paths& p) {
  if (fs::exists(p.kb_synth())) return p.kb_synth();
  require_artifact(p.kb(), "ingest");
  return p.kb();
}

kb::Kb load_effective_kb(const Paths& p, const PipelineConfig& cfg) {
  return kb::Kb::load_ntriples_file(effective_kb(p).string(),
                                    cfg.ingest_config());
}

std::vector<evalkit::LiteralTask> load_tasks(const Paths& p,
                                             const PipelineConfig& cfg) {
  std::string path;
  if (fs::exists(p.tasks())) {
    path = p.tasks().string();
  } else if (!cfg.tasks_path.empty()) {
    require_config_file(cfg.tasks_path, "tasks");
    path = cfg.tasks_path;
  } else {
    throw MissingArtifact("missing artifact " + p.tasks().string() +
                          " (produced by stage `synth`, or set `tasks` in "
                          "the config)");
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return evalkit::tasks_from_jsonl(in);
}

kb::IriSet config_roots(const kb::Kb& kb, const PipelineConfig& cfg) {
  if (cfg.root_classes.empty()) return kb.roots();
  return kb::IriSet(cfg.root_classes.begin(), cfg.root_classes.end());
}

std::string index_to_json(const lex::Index& index) {
  json entities = json::object();
  for (const auto& [e, texts] : index.entity_texts) entities[e] = texts;
  return json{{"entities", entities}}.dump(2) + "\n";
}

lex::Index index_from_json(const std::string& text) {
  json j = json::parse(text);
  lex::Index index;
  for (auto it = j.at("entities").begin(); it != j.at("entities").end(); ++it) {
    std::set<std::string> texts;
    for (const auto& t : it.value()) texts.insert(t.get<std::string>());
    for (const std::string& t : texts) {
      std::istringstream words(t);
      std::string w;
      while (words >> w) index.postings[w].insert(it.key());
    }
    index.entity_texts[it.key()] = std::move(texts);
  }
  return index;
}

lex::Index load_index(const Paths& p) {
  require_artifact(p.index(), "index");
  return index_from_json(read_file(p.index().string()));
}

struct CandidateFile {
  std::vector<candgen::CandidateSet> properties;
};

std::string candidates_to_json(const CandidateFile& file, int lookup_cap) {
  json props = json::array();
  for (const candgen::CandidateSet& cs : file.properties) {
    props.push_back(json{{"property", cs.property},
                         {"e_p", cs.e_p},
                         {"c_p", cs.c_p},
                         {"e_m", cs.e_m},
                         {"c_m", cs.c_m},
                         {"c_pm", cs.c_pm}});
  }
  return json{{"lookup_cap", lookup_cap}, {"properties", props}}.dump(2) + "\n";
}

CandidateFile candidates_from_json(const std::string& text) {
  json j = json::parse(text);
  CandidateFile file;
  for (const auto& p : j.at("properties")) {
    candgen::CandidateSet cs;
    cs.property = p.at("property").get<std::string>();
    auto read_set = [&](const char* key, kb::IriSet& out) {
      for (const auto& x : p.at(key)) out.insert(x.get<std::string>());
    };
    read_set("e_p", cs.e_p);
    read_set("c_p", cs.c_p);
    read_set("e_m", cs.e_m);
    read_set("c_m", cs.c_m);
    read_set("c_pm", cs.c_pm);
    file.properties.push_back(std::move(cs));
  }
  return file;
}

CandidateFile load_candidates(const Paths& p) {
  require_artifact(p.candidates(), "candidates");
  return candidates_from_json(read_file(p.candidates().string()));
}

sampler::SampleSet load_samples(const Paths& p) {
  // Refined samples win when the refine stage has run.
  fs::path path = fs::exists(p.samples_refined()) ? p.samples_refined()
                                                  : p.samples();
  require_artifact(path, "sample");
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return sampler::from_jsonl(in);
}

neuro::NetSpec net_spec(const PipelineConfig& cfg) {
  neuro::NetSpec net;
  net.kind = cfg.encoder == "mlp" ? neuro::EncoderKind::mlp
                                  : neuro::EncoderKind::att_birnn;
  net.seq = neuro::SeqSpec{cfg.t_s, cfg.t_p, cfg.t_l};
  net.d_r = cfg.d_r;
  net.d_a = cfg.d_a;
  net.mlp_hidden = cfg.mlp_hidden;
  return net;
}

neuro::TrainConfig train_config(const PipelineConfig& cfg) {
  neuro::TrainConfig tc;
  tc.learning_rate = cfg.learning_rate;
  tc.adam_beta1 = cfg.adam_beta1;
  tc.adam_beta2 = cfg.adam_beta2;
  tc.adam_epsilon = cfg.adam_epsilon;
  tc.epochs_pretrain = cfg.epochs_pretrain;
  tc.epochs_finetune = cfg.epochs_finetune;
  tc.batch_size = cfg.batch_size;
  tc.seed = cfg.seed;
  return tc;
}

struct StageTimer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

void write_meta(const Paths& p, const PipelineConfig& cfg,
                const std::string& stage, const StageTimer& timer,
                std::vector<std::string> outputs) {
  fs::create_directories(p.workdir / "meta");
  json j{{"stage", stage},
         {"config_hash", cfg.hash()},
         {"seed", cfg.seed},
         {"duration_ms", timer.ms()},
         {"outputs", outputs}};
  write_atomic(p.meta(stage).string(), j.dump(2) + "\n");
}

// ---- stages ----

void stage_ingest(const Paths& p, const PipelineConfig& cfg) {
  require_config_file(cfg.kb_path, "kb");
  kb::Kb kb = kb::Kb::load_ntriples_file(cfg.kb_path, cfg.ingest_config());
  write_atomic(p.kb().string(), kb.to_ntriples());
  json meta{{"triples", kb.triples().size()},
            {"classes", kb.classes().size()},
            {"entities", kb.entities().size()}};
  write_atomic((p.workdir / "kb_meta.json").string(), meta.dump(2) + "\n");
}

void stage_synth(const Paths& p, const PipelineConfig& cfg) {
  require_artifact(p.kb(), "ingest");
  kb::Kb kb = kb::Kb::load_ntriples_file(p.kb().string(), cfg.ingest_config());
  auto [reduced, tasks] = evalkit::synth_slite(kb, cfg.synth_n, cfg.seed);
  write_atomic(p.kb_synth().string(), reduced.to_ntriples());
  write_atomic(p.tasks().string(), evalkit::tasks_to_jsonl(tasks));
}

void stage_index(const Paths& p, const PipelineConfig& cfg) {
  kb::Kb kb = load_effective_kb(p, cfg);
  std::map<kb::Iri, std::string> anchors;
  if (!cfg.anchors_path.empty()) {
    require_config_file(cfg.anchors_path, "anchors");
    anchors = lex::load_anchors_tsv(cfg.anchors_path);
  }
  lex::Index index =
      lex::build_index(kb, cfg.anchors_path.empty() ? nullptr : &anchors);
  write_atomic(p.index().string(), index_to_json(index));
}

void stage_candidates(const Paths& p, const PipelineConfig& cfg) {
  kb::Kb kb = load_effective_kb(p, cfg);
  lex::Index index = load_index(p);
  std::vector<evalkit::LiteralTask> tasks = load_tasks(p, cfg);

  std::map<kb::Iri, std::vector<std::string>> literals_by_property;
  for (const evalkit::LiteralTask& t : tasks)
    literals_by_property[t.property].push_back(t.literal);

  kb::IriSet roots = config_roots(kb, cfg);
  CandidateFile file;
  for (const auto& [property, literals] : literals_by_property)
    file.properties.push_back(candgen::candidate_classes(
        kb, index, property, literals, cfg.lookup_cap, &roots));
  write_atomic(p.candidates().string(),
               candidates_to_json(file, cfg.lookup_cap));
}

void stage_sample(const Paths& p, const PipelineConfig& cfg) {
  kb::Kb kb = load_effective_kb(p, cfg);
  CandidateFile cands = load_candidates(p);

  sampler::SampleSet all;
  for (const candgen::CandidateSet& cs : cands.properties) {
    std::string p_label = kb.primary_label(cs.property);
    for (const kb::Iri& c : cs.c_pm) {
      uint64_t class_seed = cfg.seed ^ fnv1a64(c) ^ fnv1a64(cs.property);
      auto [gpos, gneg] =
          sampler::general_samples(kb, c, p_label, cfg.n0, class_seed,
                                   cs.property);
      all.insert(gpos.begin(), gpos.end());
      all.insert(gneg.begin(), gneg.end());
      if (cs.c_m.count(c)) {
        sampler::SampleSet pp =
            sampler::particular_positive(kb, cs.e_m, c, cs.property);
        sampler::SampleSet pn =
            sampler::particular_negative(kb, cs.e_m, c, cs.property);
        all.insert(pp.begin(), pp.end());
        all.insert(pn.begin(), pn.end());
      }
    }
  }
  write_atomic(p.samples().string(), sampler::to_jsonl(all));
}

void stage_refine(const Paths& p, const PipelineConfig& cfg) {
  require_artifact(p.samples(), "sample");
  require_config_file(cfg.external_kb_path, "external_kb");
  require_config_file(cfg.mapping_path, "mapping");

  kb::Kb kb = load_effective_kb(p, cfg);
  kb::Kb external =
      kb::Kb::load_ntriples_file(cfg.external_kb_path, cfg.ingest_config());
  sampler::EntityMapping mapping = sampler::load_mapping_tsv(cfg.mapping_path);

  std::ifstream in(p.samples());
  sampler::SampleSet samples = sampler::from_jsonl(in);
  auto [refined, stats] =
      sampler::refine_samples(samples, kb, external, mapping, kb);

  write_atomic(p.samples_refined().string(), sampler::to_jsonl(refined));
  json per_class = json::object();
  for (const auto& [c, pc] : stats.per_class) {
    per_class[c] = json{{"original_positive", pc.original_positive},
                        {"original_negative", pc.original_negative},
                        {"deleted_positive", pc.deleted_positive},
                        {"deleted_negative", pc.deleted_negative},
                        {"added_positive", pc.added_positive},
                        {"added_negative", pc.added_negative}};
  }
  json j{{"per_class", per_class},
         {"added_positive_ratio", stats.added_positive_ratio()},
         {"deleted_positive_ratio", stats.deleted_positive_ratio()},
         {"added_negative_ratio", stats.added_negative_ratio()},
         {"deleted_negative_ratio", stats.deleted_negative_ratio()}};
  write_atomic(p.refine_stats().string(), j.dump(2) + "\n");
}

struct TrainTask {
  kb::Iri property;
  kb::Iri class_iri;
  std::vector<neuro::TrainingSample> general;
  std::vector<neuro::TrainingSample> particular;
};

void stage_train(const Paths& p, const PipelineConfig& cfg) {
  require_config_file(cfg.embeddings_path, "embeddings");
  sampler::SampleSet samples = load_samples(p);
  CandidateFile cands = load_candidates(p);
  neuro::EmbeddingTable table =
      neuro::EmbeddingTable::load_file(cfg.embeddings_path);

  // Group samples by (property, class).
  std::map<std::pair<kb::Iri, kb::Iri>, std::pair<sampler::SampleSet,
                                                  sampler::SampleSet>>
      grouped;  // general / particular
  for (const sampler::Sample& s : samples) {
    auto& slot = grouped[{s.property, s.class_iri}];
    if (s.origin == sampler::Origin::general) slot.first.insert(s);
    else slot.second.insert(s);
  }

  std::vector<TrainTask> tasks;
  for (const candgen::CandidateSet& cs : cands.properties) {
    for (const kb::Iri& c : cs.c_pm) {
      auto it = grouped.find({cs.property, c});
      TrainTask task;
      task.property = cs.property;
      task.class_iri = c;
      if (it != grouped.end()) {
        task.general = neuro::to_training(it->second.first);
        task.particular = neuro::to_training(it->second.second);
      }
      tasks.push_back(std::move(task));
    }
  }

  fs::create_directories(p.models_dir());
  neuro::NetSpec net = net_spec(cfg);
  neuro::TrainConfig base_tc = train_config(cfg);

  std::mutex mu;
  json manifest_models = json::array();
  json skipped = json::array();
  std::atomic<size_t> cursor{0};
  std::vector<std::string> errors;

  auto worker = [&] {
    for (;;) {
      size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      const TrainTask& task = tasks[i];
      std::string file = "m_" + hex64(fnv1a64(task.property)) + "_" +
                         hex64(fnv1a64(task.class_iri)) + ".bin";
      neuro::TrainConfig tc = base_tc;
      tc.seed = cfg.seed ^ fnv1a64(task.class_iri) ^ fnv1a64(task.property);
      if (task.general.empty()) {
        std::lock_guard<std::mutex> lock(mu);
        std::cerr << "[train] warning: dropping class " << task.class_iri
                  << " under " << task.property << ": no general samples\n";
        skipped.push_back(json{{"property", task.property},
                               {"class", task.class_iri},
                               {"reason", "no general samples"}});
        continue;
      }
      try {
        neuro::ClassifierModel model = neuro::train_classifier(
            task.class_iri, task.general, task.particular, tc, net, table);
        std::ostringstream buf;
        neuro::save_model(model, buf);
        write_atomic((p.models_dir() / file).string(), buf.str());
        std::lock_guard<std::mutex> lock(mu);
        manifest_models.push_back(
            json{{"property", task.property},
                 {"class", task.class_iri},
                 {"file", file},
                 {"parameters", model.parameter_count()},
                 {"general_samples", task.general.size()},
                 {"particular_samples", task.particular.size()},
                 {"seed", tc.seed}});
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(mu);
        errors.push_back(task.class_iri + ": " + e.what());
      }
    }
  };

  int jobs = cfg.effective_jobs();
  std::vector<std::thread> threads;
  for (int i = 0; i < jobs; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (!errors.empty()) throw Error("training failed: " + errors.front());

  auto by_keys = [](const json& a, const json& b) {
    auto ka = std::pair(a.at("property").get<std::string>(),
                        a.at("class").get<std::string>());
    auto kb_ = std::pair(b.at("property").get<std::string>(),
                         b.at("class").get<std::string>());
    return ka < kb_;
  };
  std::sort(manifest_models.begin(), manifest_models.end(), by_keys);
  std::sort(skipped.begin(), skipped.end(), by_keys);

  json manifest{{"models", manifest_models},
                {"skipped", skipped},
                {"encoder", cfg.encoder},
                {"d_r", cfg.d_r},
                {"d_a", cfg.d_a},
                {"seq", {cfg.t_s, cfg.t_p, cfg.t_l}}};
  write_atomic(p.manifest().string(), manifest.dump(2) + "\n");
}

void stage_predict(const Paths& p, const PipelineConfig& cfg) {
  // Without trained models there is nothing to score; point at the root
  // cause when the user skipped `train`.
  require_artifact(p.manifest(), "train");
  require_config_file(cfg.embeddings_path, "embeddings");
  kb::Kb kb = load_effective_kb(p, cfg);
  std::vector<evalkit::LiteralTask> tasks = load_tasks(p, cfg);
  neuro::EmbeddingTable table =
      neuro::EmbeddingTable::load_file(cfg.embeddings_path);

  json manifest = json::parse(read_file(p.manifest().string()));
  std::map<kb::Iri, std::vector<std::pair<kb::Iri, std::string>>> by_property;
  for (const auto& m : manifest.at("models"))
    by_property[m.at("property").get<std::string>()].push_back(
        {m.at("class").get<std::string>(), m.at("file").get<std::string>()});

  std::map<std::string, neuro::ClassifierModel> model_cache;
  auto get_model = [&](const std::string& file) -> neuro::ClassifierModel& {
    auto it = model_cache.find(file);
    if (it == model_cache.end()) {
      it = model_cache
               .emplace(file, neuro::load_model_file(
                                  (p.models_dir() / file).string()))
               .first;
    }
    return it->second;
  };

  std::string out;
  for (const evalkit::LiteralTask& task : tasks) {
    auto prop_models = by_property.find(task.property);
    json scores = json::object();
    if (prop_models != by_property.end()) {
      std::string s_text = kb.primary_label(task.subject);
      std::string p_text = kb.primary_label(task.property);
      for (const auto& [class_iri, file] : prop_models->second) {
        neuro::ForwardOutput fo =
            neuro::forward(get_model(file), s_text, p_text, task.literal, table);
        scores[class_iri] = fo.score;
      }
    }
    json row{{"literal_id", task.literal_id},
             {"property", task.property},
             {"scores", scores}};
    out += row.dump();
    out += '\n';
  }
  write_atomic(p.scores().string(), out);
}

std::vector<typing::ScoreMap> load_scores(const Paths& p) {
  if (!fs::exists(p.scores())) {
    // Trace the chain one step further for a usable message.
    if (!fs::exists(p.manifest()))
      throw MissingArtifact(
          "missing artifact " + p.scores().string() +
          " (produced by stage `predict`; model files " +
          p.manifest().string() + " are also missing - run `train` first)");
    throw MissingArtifact("missing artifact " + p.scores().string() +
                          " (produced by stage `predict`)");
  }
  std::vector<typing::ScoreMap> out;
  std::istringstream in(read_file(p.scores().string()));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    typing::ScoreMap sm;
    sm.literal_id = j.at("literal_id").get<std::string>();
    for (auto it = j.at("scores").begin(); it != j.at("scores").end(); ++it)
      sm.scores[it.key()] = it.value().get<double>();
    out.push_back(std::move(sm));
  }
  return out;
}

void stage_type(const Paths& p, const PipelineConfig& cfg) {
  std::vector<typing::ScoreMap> scores = load_scores(p);
  typing::Strategy strategy = typing::strategy_from(cfg.strategy);
  kb::Kb kb;
  if (strategy == typing::Strategy::hierarchical) kb = load_effective_kb(p, cfg);

  std::string out;
  for (const typing::ScoreMap& sm : scores) {
    typing::TypingResult result;
    if (strategy == typing::Strategy::independent) {
      result = typing::independent_select(sm, cfg.theta);
    } else {
      std::map<kb::Iri, double> hs = typing::hierarchical_scores(sm, kb);
      kb::IriSet candidates;
      for (const auto& [c, _] : sm.scores) candidates.insert(c);
      result = typing::hierarchical_select(hs, candidates, cfg.theta,
                                           cfg.kappa, kb);
    }
    result.literal_id = sm.literal_id;
    json row{{"literal_id", result.literal_id},
             {"strategy", typing::strategy_str(strategy)},
             {"theta", cfg.theta},
             {"kappa", cfg.kappa},
             {"selected", result.selected},
             {"scores", sm.scores}};
    if (result.hier_scores) row["hier_scores"] = *result.hier_scores;
    out += row.dump();
    out += '\n';
  }
  write_atomic(p.typing().string(), out);
}

void stage_canon(const Paths& p, const PipelineConfig& cfg) {
  require_artifact(p.typing(), "type");
  kb::Kb kb = load_effective_kb(p, cfg);
  lex::Index index = load_index(p);
  std::vector<evalkit::LiteralTask> tasks = load_tasks(p, cfg);
  std::map<std::string, const evalkit::LiteralTask*> task_by_id;
  for (const evalkit::LiteralTask& t : tasks) task_by_id[t.literal_id] = &t;

  std::string out;
  std::istringstream in(read_file(p.typing().string()));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    std::string id = j.at("literal_id").get<std::string>();
    auto task = task_by_id.find(id);
    if (task == task_by_id.end()) continue;
    kb::IriSet types;
    for (const auto& c : j.at("selected")) types.insert(c.get<std::string>());
    canon::CanonResult r = canon::canonicalize(
        index, kb, task->second->literal, types, cfg.match_k, cfg.min_sim);
    json row{{"literal_id", id}, {"outcome", canon::outcome_str(r.outcome)}};
    if (r.outcome == canon::Outcome::matched) {
      row["entity"] = r.entity;
      row["similarity"] = r.similarity;
    } else if (r.outcome == canon::Outcome::new_entity) {
      row["new_types"] = r.new_types;
    }
    out += row.dump();
    out += '\n';
  }
  write_atomic(p.canon().string(), out);
}

void stage_eval(const Paths& p, const PipelineConfig& cfg) {
  std::vector<typing::ScoreMap> scores = load_scores(p);
  std::vector<evalkit::LiteralTask> tasks = load_tasks(p, cfg);
  kb::Kb kb = load_effective_kb(p, cfg);

  typing::Strategy strategy = typing::strategy_from(cfg.strategy);
  evalkit::EvalReport report =
      evalkit::sweep(scores, tasks, strategy, cfg.kappa, kb, cfg.theta);

  json j{{"strategy", cfg.strategy},
         {"kappa", cfg.kappa},
         {"theta", cfg.theta},
         {"at_theta",
          {{"precision", report.at_theta.precision},
           {"recall", report.at_theta.recall},
           {"f1", report.at_theta.f1}}},
         {"avgf1_all", report.avgf1_all},
         {"avgf1_top5", report.avgf1_top5},
         {"grid_points", report.curve.size()}};

  // Entity-matching section when canon results and gold entities exist.
  if (fs::exists(p.canon())) {
    std::map<std::string, bool> judgments;
    std::map<std::string, const evalkit::LiteralTask*> task_by_id;
    for (const evalkit::LiteralTask& t : tasks) task_by_id[t.literal_id] = &t;
    std::vector<std::pair<std::string, canon::CanonResult>> results;
    std::istringstream in(read_file(p.canon().string()));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json row = json::parse(line);
      canon::CanonResult r;
      std::string id = row.at("literal_id").get<std::string>();
      std::string outcome = row.at("outcome").get<std::string>();
      if (outcome == "matched") {
        r.outcome = canon::Outcome::matched;
        r.entity = row.at("entity").get<std::string>();
        auto task = task_by_id.find(id);
        if (task != task_by_id.end() && task->second->gold_entity)
          judgments[id] = (*task->second->gold_entity == r.entity);
      } else {
        r.outcome = outcome == "new_entity" ? canon::Outcome::new_entity
                                            : canon::Outcome::abstained;
      }
      results.push_back({id, r});
    }
    bool all_judged = true;
    for (const auto& [id, r] : results)
      if (r.outcome == canon::Outcome::matched && !judgments.count(id))
        all_judged = false;
    if (all_judged) {
      evalkit::MatchReport mr =
          evalkit::entity_matching_report(results, judgments);
      j["matching"] = json{{"correct", mr.correct},
                           {"total_matches", mr.total_matches},
                           {"precision", mr.precision},
                           {"no_matches", mr.no_matches}};
    }
  }

  write_atomic(p.eval().string(), j.dump(2) + "\n");
  write_atomic(p.curve().string(), evalkit::curve_to_tsv(report));
}

}  // namespace

PipelineConfig PipelineConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  PipelineConfig cfg;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    size_t eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected `key = value`");
    try {
      cfg.set_key(trim(trimmed.substr(0, eq)), trim(trimmed.substr(eq + 1)));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  return cfg;
}

void PipelineConfig::set_key(const std::string& key, const std::string& value) {
  auto split_list = [](const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(v);
    while (std::getline(in, cur, ',')) {
      size_t a = cur.find_first_not_of(" \t");
      size_t b = cur.find_last_not_of(" \t");
      if (a != std::string::npos) out.push_back(cur.substr(a, b - a + 1));
    }
    return out;
  };
  if (key == "kb") kb_path = value;
  else if (key == "external_kb") external_kb_path = value;
  else if (key == "mapping") mapping_path = value;
  else if (key == "embeddings") embeddings_path = value;
  else if (key == "anchors") anchors_path = value;
  else if (key == "tasks") tasks_path = value;
  else if (key == "workdir") workdir = value;
  else if (key == "label_predicates") label_predicates = split_list(value);
  else if (key == "type_predicate") type_predicate = value;
  else if (key == "subclass_predicate") subclass_predicate = value;
  else if (key == "disjoint_predicate") disjoint_predicate = value;
  else if (key == "root_classes") root_classes = split_list(value);
  else if (key == "n0") n0 = std::stoull(value);
  else if (key == "lookup_cap") lookup_cap = std::stoi(value);
  else if (key == "synth_n") synth_n = std::stoull(value);
  else if (key == "encoder") encoder = value;
  else if (key == "d_r") d_r = std::stoi(value);
  else if (key == "d_a") d_a = std::stoi(value);
  else if (key == "mlp_hidden") mlp_hidden = std::stoi(value);
  else if (key == "t_s") t_s = std::stoi(value);
  else if (key == "t_p") t_p = std::stoi(value);
  else if (key == "t_l") t_l = std::stoi(value);
  else if (key == "learning_rate") learning_rate = std::stod(value);
  else if (key == "adam_beta1") adam_beta1 = std::stod(value);
  else if (key == "adam_beta2") adam_beta2 = std::stod(value);
  else if (key == "adam_epsilon") adam_epsilon = std::stod(value);
  else if (key == "epochs_pretrain") epochs_pretrain = std::stoi(value);
  else if (key == "epochs_finetune") epochs_finetune = std::stoi(value);
  else if (key == "batch_size") batch_size = std::stoi(value);
  else if (key == "seed") seed = std::stoull(value);
  else if (key == "jobs") jobs = std::stoi(value);
  else if (key == "theta") theta = std::stod(value);
  else if (key == "kappa") kappa = std::stod(value);
  else if (key == "strategy") strategy = value;
  else if (key == "match_k") match_k = std::stoi(value);
  else if (key == "min_sim") min_sim = std::stod(value);
  else throw ConfigError("unknown config key `" + key + "`");
}

void PipelineConfig::validate() const {
  if (workdir.empty()) throw ConfigError("workdir must not be empty");
  if (jobs < 0) throw ConfigError("jobs must be >= 1 (or 0 for auto)");
  if (theta < 0.0 || theta > 1.0)
    throw ConfigError("theta must be in [0, 1]");
  if (strategy != "independent" && strategy != "hierarchical")
    throw ConfigError("strategy must be `independent` or `hierarchical`");
  if (encoder != "attbirnn" && encoder != "mlp")
    throw ConfigError("encoder must be `attbirnn` or `mlp`");
  if (t_s <= 0 || t_p <= 0 || t_l <= 0)
    throw ConfigError("sequence budgets must be positive");
  if (d_r <= 0 || d_a <= 0 || mlp_hidden <= 0)
    throw ConfigError("network dimensions must be positive");
  if (learning_rate <= 0.0) throw ConfigError("learning_rate must be > 0");
  if (adam_beta1 <= 0.0 || adam_beta1 >= 1.0 || adam_beta2 <= 0.0 ||
      adam_beta2 >= 1.0)
    throw ConfigError("adam betas must be in (0, 1)");
  if (batch_size <= 0) throw ConfigError("batch_size must be >= 1");
  if (n0 == 0) throw ConfigError("n0 must be >= 1");
  // Paths that are set must exist.
  for (const auto& [key, path] :
       {std::pair{"kb", kb_path}, {"external_kb", external_kb_path},
        {"mapping", mapping_path}, {"embeddings", embeddings_path},
        {"anchors", anchors_path}, {"tasks", tasks_path}}) {
    if (!path.empty() && !fs::exists(path))
      throw ConfigError(std::string("config key `") + key +
                        "`: no such file: " + path);
  }
}

std::string PipelineConfig::canonical() const {
  std::ostringstream out;
  out << "adam_beta1 = " << adam_beta1 << "\n";
  out << "adam_beta2 = " << adam_beta2 << "\n";
  out << "adam_epsilon = " << adam_epsilon << "\n";
  out << "anchors = " << anchors_path << "\n";
  out << "batch_size = " << batch_size << "\n";
  out << "d_a = " << d_a << "\n";
  out << "d_r = " << d_r << "\n";
  out << "disjoint_predicate = " << disjoint_predicate << "\n";
  out << "embeddings = " << embeddings_path << "\n";
  out << "encoder = " << encoder << "\n";
  out << "epochs_finetune = " << epochs_finetune << "\n";
  out << "epochs_pretrain = " << epochs_pretrain << "\n";
  out << "external_kb = " << external_kb_path << "\n";
  out << "jobs = " << jobs << "\n";
  out << "kappa = " << kappa << "\n";
  out << "kb = " << kb_path << "\n";
  std::string labels;
  for (const auto& l : label_predicates)
    labels += labels.empty() ? l : "," + l;
  out << "label_predicates = " << labels << "\n";
  out << "learning_rate = " << learning_rate << "\n";
  out << "lookup_cap = " << lookup_cap << "\n";
  out << "mapping = " << mapping_path << "\n";
  out << "match_k = " << match_k << "\n";
  out << "min_sim = " << min_sim << "\n";
  out << "mlp_hidden = " << mlp_hidden << "\n";
  out << "n0 = " << n0 << "\n";
  std::string roots;
  for (const auto& r : root_classes) roots += roots.empty() ? r : "," + r;
  out << "root_classes = " << roots << "\n";
  out << "seed = " << seed << "\n";
  out << "strategy = " << strategy << "\n";
  out << "subclass_predicate = " << subclass_predicate << "\n";
  out << "synth_n = " << synth_n << "\n";
  out << "t_l = " << t_l << "\n";
  out << "t_p = " << t_p << "\n";
  out << "t_s = " << t_s << "\n";
  out << "tasks = " << tasks_path << "\n";
  out << "theta = " << theta << "\n";
  out << "type_predicate = " << type_predicate << "\n";
  out << "workdir = " << workdir << "\n";
  return out.str();
}

std::string PipelineConfig::hash() const { return hex64(fnv1a64(canonical())); }

kb::IngestConfig PipelineConfig::ingest_config() const {
  kb::IngestConfig ic;
  ic.label_predicates =
      kb::IriSet(label_predicates.begin(), label_predicates.end());
  ic.type_predicate = type_predicate;
  ic.subclass_predicate = subclass_predicate;
  ic.disjoint_predicate = disjoint_predicate;
  return ic;
}

int PipelineConfig::effective_jobs() const {
  if (jobs > 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return static_cast<int>(std::min<unsigned>(hw, 10));
}

void write_atomic(const std::string& path, const std::string& content) {
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void run_stage(const std::string& stage, const PipelineConfig& config) {
  config.validate();
  Paths p(config);
  fs::create_directories(p.workdir);
  StageTimer timer;
  std::vector<std::string> outputs;

  if (stage == "ingest") {
    stage_ingest(p, config);
    outputs = {p.kb().string()};
  } else if (stage == "synth") {
    stage_synth(p, config);
    outputs = {p.kb_synth().string(), p.tasks().string()};
  } else if (stage == "index") {
    stage_index(p, config);
    outputs = {p.index().string()};
  } else if (stage == "candidates") {
    stage_candidates(p, config);
    outputs = {p.candidates().string()};
  } else if (stage == "sample") {
    stage_sample(p, config);
    outputs = {p.samples().string()};
  } else if (stage == "refine") {
    stage_refine(p, config);
    outputs = {p.samples_refined().string(), p.refine_stats().string()};
  } else if (stage == "train") {
    stage_train(p, config);
    outputs = {p.manifest().string()};
  } else if (stage == "predict") {
    stage_predict(p, config);
    outputs = {p.scores().string()};
  } else if (stage == "type") {
    stage_type(p, config);
    outputs = {p.typing().string()};
  } else if (stage == "canon") {
    stage_canon(p, config);
    outputs = {p.canon().string()};
  } else if (stage == "eval") {
    stage_eval(p, config);
    outputs = {p.eval().string(), p.curve().string()};
  } else {
    throw ConfigError("unknown stage `" + stage + "`");
  }
  write_meta(p, config, stage, timer, outputs);
}

}  // namespace pipeline
}  // namespace litecanon
