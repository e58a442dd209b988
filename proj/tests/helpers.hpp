// Test-only helpers: brute-force oracles kept independent of the library's
// implementation paths, plus fixture builders.
#ifndef LITECANON_TESTS_HELPERS_HPP_
#define LITECANON_TESTS_HELPERS_HPP_

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "litecanon/kb.hpp"
#include "litecanon/rng.hpp"

namespace testutil {

using litecanon::kb::Iri;
using litecanon::kb::IriSet;
using litecanon::kb::Kb;

inline Kb kb_from(const std::string& ntriples,
                  const litecanon::kb::IngestConfig& cfg = {}) {
  std::istringstream in(ntriples);
  return Kb::load_ntriples(in, cfg);
}

// A randomly generated DAG taxonomy with instance assertions, kept in
// adjacency form so oracles can work from first principles.
struct RandomDag {
  std::vector<Iri> classes;
  std::map<Iri, IriSet> parents;   // direct
  std::map<Iri, IriSet> children;  // direct
  std::map<Iri, IriSet> asserted;  // entity -> classes
  std::vector<Iri> entities;
  Kb kb;
};

inline RandomDag make_random_dag(litecanon::Rng& rng, size_t n_classes,
                                 size_t n_entities) {
  RandomDag dag;
  std::ostringstream nt;
  for (size_t i = 0; i < n_classes; ++i)
    dag.classes.push_back("http://t/c" + std::to_string(i));
  // Edges only from higher to lower index: acyclic by construction.
  for (size_t i = 1; i < n_classes; ++i) {
    size_t n_parents = 1 + rng.uniform_index(2);
    IriSet chosen;
    for (size_t k = 0; k < n_parents; ++k)
      chosen.insert(dag.classes[rng.uniform_index(i)]);
    for (const Iri& p : chosen) {
      dag.parents[dag.classes[i]].insert(p);
      dag.children[p].insert(dag.classes[i]);
      nt << "<" << dag.classes[i] << "> <" << litecanon::kb::kRdfsSubClassOf
         << "> <" << p << "> .\n";
    }
  }
  for (size_t e = 0; e < n_entities; ++e) {
    Iri iri = "http://t/e" + std::to_string(e);
    dag.entities.push_back(iri);
    size_t n_types = 1 + rng.uniform_index(2);
    for (size_t k = 0; k < n_types; ++k) {
      Iri c = dag.classes[rng.uniform_index(n_classes)];
      dag.asserted[iri].insert(c);
      nt << "<" << iri << "> <" << litecanon::kb::kRdfType << "> <" << c
         << "> .\n";
    }
  }
  std::istringstream in(nt.str());
  dag.kb = Kb::load_ntriples(in);
  return dag;
}

// Reflexive-transitive closure by naive fixpoint iteration.
inline IriSet oracle_superclasses(const RandomDag& dag, const Iri& c) {
  IriSet out{c};
  bool changed = true;
  while (changed) {
    changed = false;
    IriSet next = out;
    for (const Iri& x : out) {
      auto it = dag.parents.find(x);
      if (it == dag.parents.end()) continue;
      for (const Iri& p : it->second)
        if (next.insert(p).second) changed = true;
    }
    out = next;
  }
  return out;
}

inline IriSet oracle_descendants(const RandomDag& dag, const Iri& c) {
  IriSet out;
  for (const Iri& x : dag.classes)
    if (oracle_superclasses(dag, x).count(c)) out.insert(x);
  return out;
}

inline IriSet oracle_instances(const RandomDag& dag, const Iri& c,
                               bool inferred) {
  IriSet out;
  for (const auto& [e, classes] : dag.asserted) {
    for (const Iri& a : classes) {
      if (inferred ? oracle_superclasses(dag, a).count(c) > 0 : a == c) {
        out.insert(e);
        break;
      }
    }
  }
  return out;
}

inline IriSet oracle_siblings(const RandomDag& dag, const Iri& c) {
  IriSet out;
  auto parents = dag.parents.find(c);
  if (parents == dag.parents.end()) return out;
  for (const Iri& p : parents->second) {
    auto kids = dag.children.find(p);
    if (kids == dag.children.end()) continue;
    for (const Iri& k : kids->second) out.insert(k);
  }
  IriSet up = oracle_superclasses(dag, c);
  IriSet down = oracle_descendants(dag, c);
  IriSet pruned;
  for (const Iri& x : out)
    if (!up.count(x) && !down.count(x)) pruned.insert(x);
  return pruned;
}

// Definition scan for D(candidates, c): descendants of the siblings of c
// and of its ancestors, restricted to the pool, never comparable to c.
inline IriSet oracle_disjoint_candidates(const RandomDag& dag,
                                         const IriSet& candidates,
                                         const Iri& c) {
  IriSet seeds;
  for (const Iri& anc : oracle_superclasses(dag, c)) {
    IriSet sib = oracle_siblings(dag, anc);
    seeds.insert(sib.begin(), sib.end());
  }
  IriSet down;
  for (const Iri& s : seeds) {
    IriSet d = oracle_descendants(dag, s);
    down.insert(d.begin(), d.end());
  }
  IriSet up = oracle_superclasses(dag, c);
  IriSet below = oracle_descendants(dag, c);
  IriSet out;
  for (const Iri& x : down)
    if (candidates.count(x) && !up.count(x) && !below.count(x)) out.insert(x);
  return out;
}

// Scoped temp directory.
struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("litecanon_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string str() const { return path.string(); }
};

inline void write_file(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p);
  out << s;
}

}  // namespace testutil

#endif  // LITECANON_TESTS_HELPERS_HPP_
