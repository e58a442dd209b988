#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "litecanon/pipeline.hpp"
#include "litecanon/toy_dataset.hpp"

using namespace litecanon;
using namespace litecanon::pipeline;
namespace fs = std::filesystem;

namespace {

// Minimal end-to-end configuration over a tiny generated dataset.
PipelineConfig small_config(const testutil::TempDir& dir) {
  evalkit::ToyConfig toy_cfg;
  toy_cfg.entities_per_leaf = 6;
  toy_cfg.triples_per_property = 12;
  toy_cfg.embedding_dim = 8;
  evalkit::ToyDataset toy = evalkit::generate_toy_dataset(toy_cfg);
  testutil::write_file(dir.path / "kb.nt", toy.kb_ntriples);
  testutil::write_file(dir.path / "embeddings.txt", toy.embeddings_text);

  PipelineConfig cfg;
  cfg.kb_path = (dir.path / "kb.nt").string();
  cfg.embeddings_path = (dir.path / "embeddings.txt").string();
  cfg.workdir = (dir.path / "work").string();
  cfg.synth_n = 8;
  cfg.n0 = 40;
  cfg.d_r = 6;
  cfg.d_a = 3;
  cfg.t_s = 3;
  cfg.t_p = 2;
  cfg.t_l = 3;
  cfg.epochs_pretrain = 2;
  cfg.epochs_finetune = 1;
  cfg.batch_size = 16;
  cfg.jobs = 2;
  cfg.seed = 11;
  return cfg;
}

}  // namespace

TEST_CASE("config file parsing, overrides, validation") {
  testutil::TempDir dir("cfg");
  testutil::write_file(dir.path / "a.conf",
                       "# comment\n"
                       "workdir = w\n"
                       "theta = 0.25\n"
                       "n0 = 7\n"
                       "strategy = independent\n"
                       "label_predicates = http://a, http://b\n");
  PipelineConfig cfg = PipelineConfig::from_file((dir.path / "a.conf").string());
  CHECK(cfg.workdir == "w");
  CHECK(cfg.theta == doctest::Approx(0.25));
  CHECK(cfg.n0 == 7);
  CHECK(cfg.label_predicates ==
        std::vector<std::string>{"http://a", "http://b"});

  SUBCASE("unknown keys and bad lines are config errors") {
    testutil::write_file(dir.path / "bad.conf", "nope = 1\n");
    CHECK_THROWS_AS(PipelineConfig::from_file((dir.path / "bad.conf").string()),
                    ConfigError);
    testutil::write_file(dir.path / "bad2.conf", "just words\n");
    CHECK_THROWS_AS(
        PipelineConfig::from_file((dir.path / "bad2.conf").string()),
        ConfigError);
  }
  SUBCASE("validation rejects nonsense") {
    PipelineConfig bad = cfg;
    bad.theta = 2.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.strategy = "psychic";
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.kb_path = "/no/such/file.nt";
    CHECK_THROWS_AS(bad.validate(), ConfigError);
  }
  SUBCASE("config hash is stable and sensitive") {
    PipelineConfig other = cfg;
    CHECK(cfg.hash() == other.hash());
    other.theta = 0.75;
    CHECK(cfg.hash() != other.hash());
  }
}

TEST_CASE("write_atomic leaves no temp file and replaces content") {
  testutil::TempDir dir("atomic");
  std::string target = (dir.path / "x.txt").string();
  write_atomic(target, "one");
  write_atomic(target, "two");
  CHECK(read_file(target) == "two");
  CHECK(!fs::exists(target + ".tmp"));
}

TEST_CASE("stage errors: unknown stage, missing inputs by name") {
  testutil::TempDir dir("stages");
  PipelineConfig cfg = small_config(dir);

  CHECK_THROWS_AS(run_stage("quux", cfg), ConfigError);

  SUBCASE("ingest without kb path is a config error") {
    PipelineConfig no_kb = cfg;
    no_kb.kb_path.clear();
    CHECK_THROWS_AS(run_stage("ingest", no_kb), ConfigError);
  }
  SUBCASE("candidates before ingest names the kb artifact") {
    CHECK_THROWS_WITH_AS(run_stage("candidates", cfg),
                         doctest::Contains("kb.nt"), MissingArtifact);
  }
  SUBCASE("type before train names the model files") {
    run_stage("ingest", cfg);
    CHECK_THROWS_WITH_AS(run_stage("type", cfg), doctest::Contains("model"),
                         MissingArtifact);
  }
}

TEST_CASE("full pipeline smoke run: artifacts exist, stages idempotent") {
  testutil::TempDir dir("smoke");
  PipelineConfig cfg = small_config(dir);

  for (const char* stage : {"ingest", "synth", "index", "candidates", "sample",
                            "train", "predict", "type", "canon", "eval"})
    run_stage(stage, cfg);

  fs::path work(cfg.workdir);
  for (const char* artifact :
       {"kb.nt", "kb_synth.nt", "tasks.jsonl", "index.json", "candidates.json",
        "samples.jsonl", "models/manifest.json", "scores.jsonl", "typing.jsonl",
        "canon.jsonl", "eval.json", "curve.tsv"})
    CHECK(fs::exists(work / artifact));

  // eval report is valid JSON with the expected fields
  std::string eval_text = read_file((work / "eval.json").string());
  CHECK(eval_text.find("avgf1_all") != std::string::npos);
  CHECK(eval_text.find("avgf1_top5") != std::string::npos);

  // meta records exist and carry the config hash
  CHECK(fs::exists(work / "meta" / "train.json"));
  CHECK(read_file((work / "meta" / "train.json").string())
            .find(cfg.hash()) != std::string::npos);

  SUBCASE("re-running a stage with identical inputs reproduces its output") {
    std::string before = read_file((work / "samples.jsonl").string());
    run_stage("sample", cfg);
    CHECK(read_file((work / "samples.jsonl").string()) == before);
  }
  SUBCASE("no stage mutated the ingested kb artifact") {
    PipelineConfig cfg2 = cfg;
    cfg2.workdir = (dir.path / "work2").string();
    run_stage("ingest", cfg2);
    CHECK(read_file((work / "kb.nt").string()) ==
          read_file((fs::path(cfg2.workdir) / "kb.nt").string()));
  }
}

TEST_CASE("refine stage: external kb rewrites samples, train prefers them") {
  testutil::TempDir dir("refine");
  PipelineConfig cfg = small_config(dir);
  for (const char* stage : {"ingest", "synth", "index", "candidates", "sample"})
    run_stage(stage, cfg);

  SUBCASE("refine without external inputs is a config error") {
    CHECK_THROWS_AS(run_stage("refine", cfg), ConfigError);
  }

  // external kb disagrees on a few wetlands (wrong branch)
  kb::Kb k = kb::Kb::load_ntriples_file(
      (fs::path(cfg.workdir) / "kb_synth.nt").string());
  std::string ext, map;
  int n = 0;
  for (const kb::Iri& e :
       k.instances_of("http://toy.example/class/Wetland", true)) {
    if (n >= 4) break;
    std::string x = "http://ext/e" + std::to_string(n++);
    ext += "<" + x + "> <" + std::string(kb::kRdfType) +
           "> <http://toy.example/class/Person> .\n";
    map += e + "\t" + x + "\n";
  }
  ext += "<http://toy.example/class/Person> <" +
         std::string(kb::kRdfsSubClassOf) +
         "> <http://toy.example/class/Agent> .\n";
  testutil::write_file(dir.path / "external.nt", ext);
  testutil::write_file(dir.path / "mapping.tsv", map);
  cfg.external_kb_path = (dir.path / "external.nt").string();
  cfg.mapping_path = (dir.path / "mapping.tsv").string();

  run_stage("refine", cfg);
  fs::path work(cfg.workdir);
  CHECK(fs::exists(work / "samples_refined.jsonl"));
  CHECK(fs::exists(work / "refine_stats.json"));
  std::string stats = read_file((work / "refine_stats.json").string());
  CHECK(stats.find("deleted_positive") != std::string::npos);
  // the disagreeing entities lost their samples
  std::string refined = read_file((work / "samples_refined.jsonl").string());
  std::istringstream map_in(map);
  std::string line;
  while (std::getline(map_in, line)) {
    std::string local = line.substr(0, line.find('\t'));
    CHECK(refined.find("\"" + local + "\"") == std::string::npos);
  }

  // train consumes the refined file when it exists
  run_stage("train", cfg);
  std::string manifest = read_file((work / "models/manifest.json").string());
  CHECK(manifest.find("\"models\"") != std::string::npos);
}

TEST_CASE("two full runs with the same seed are byte-identical") {
  testutil::TempDir dir("det");
  PipelineConfig cfg = small_config(dir);
  PipelineConfig cfg2 = cfg;
  cfg2.workdir = (dir.path / "workB").string();

  for (const char* stage : {"ingest", "synth", "index", "candidates", "sample",
                            "train", "predict", "type", "canon", "eval"}) {
    run_stage(stage, cfg);
    run_stage(stage, cfg2);
  }
  for (const char* artifact :
       {"kb_synth.nt", "tasks.jsonl", "samples.jsonl", "scores.jsonl",
        "typing.jsonl", "canon.jsonl", "eval.json", "curve.tsv"}) {
    CHECK(read_file((fs::path(cfg.workdir) / artifact).string()) ==
          read_file((fs::path(cfg2.workdir) / artifact).string()));
  }
  // every model file matches bit for bit
  for (const auto& entry :
       fs::directory_iterator(fs::path(cfg.workdir) / "models")) {
    fs::path other = fs::path(cfg2.workdir) / "models" / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(read_file(entry.path().string()) == read_file(other.string()));
  }
}

TEST_CASE("cli binary: exit codes for success, config error, missing artifact") {
  const char* bin = std::getenv("LITECANON_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "LITECANON_BIN not set by ctest");
  testutil::TempDir dir("cli");
  PipelineConfig cfg = small_config(dir);
  testutil::write_file(dir.path / "run.conf",
                       "kb = " + cfg.kb_path + "\n" +
                       "embeddings = " + cfg.embeddings_path + "\n" +
                       "workdir = " + cfg.workdir + "\n");
  auto run = [&](const std::string& args) {
    std::string cmd = std::string(bin) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };
  std::string conf = (dir.path / "run.conf").string();
  CHECK(run("--config " + conf + " ingest") == 0);
  CHECK(run("--config /no/such/file.conf ingest") == 2);
  CHECK(run("--config " + conf + " --strategy psychic ingest") == 2);
  CHECK(run("--config " + conf + " type") == 1);  // models missing
  CHECK(run("--totally-bogus-flag ingest") != 0);
}
