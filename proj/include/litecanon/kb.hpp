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

#ifndef LITECANON_KB_HPP_
#define LITECANON_KB_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace litecanon {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax or semantic failure while reading an input file.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, size_t line)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_ = 0;
};

namespace kb {

inline constexpr const char* kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* kRdfsLabel =
    "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr const char* kRdfsSubClassOf =
    "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr const char* kOwlDisjointWith =
    "http://www.w3.org/2002/07/owl#disjointWith";

// IRIs are stored as plain absolute-IRI strings, without angle brackets.
using Iri = std::string;
using IriSet = std::set<Iri>;

struct Literal {
  std::string lexical_form;
  std::optional<std::string> lang;

  auto operator<=>(const Literal&) const = default;
};

// Object position of a triple: an IRI or a string literal.
struct RdfObject {
  bool is_iri = true;
  std::string value;                 // IRI string or lexical form
  std::optional<std::string> lang;   // only for literals

  auto operator<=>(const RdfObject&) const = default;
};

struct Triple {
  Iri subject;
  Iri predicate;
  RdfObject object;

  auto operator<=>(const Triple&) const = default;
};

struct IngestConfig {
  IriSet label_predicates{kRdfsLabel};
  Iri type_predicate = kRdfType;
  Iri subclass_predicate = kRdfsSubClassOf;
  Iri disjoint_predicate = kOwlDisjointWith;
  bool allow_empty_literals = false;
};

// Local name of an IRI (after the last '#' or '/'), underscores as spaces.
std::string local_name_label(const Iri& iri);

// Immutable in-memory knowledge base: triples, a subclass DAG, instance
// assertions, labels, and optional disjointness axioms. All reasoning is
// subclass closure; loading rejects cyclic hierarchies.
class Kb {
 public:
  Kb() = default;

  static Kb load_ntriples(std::istream& in, const IngestConfig& config = {});
  static Kb load_ntriples_file(const std::string& path,
                               const IngestConfig& config = {});

  const std::set<Triple>& triples() const { return triples_; }
  const std::set<Iri>& classes() const { return classes_; }
  const std::map<Iri, IriSet>& instance_assertions() const {
    return instance_assertions_;
  }
  const std::set<std::pair<Iri, Iri>>& disjointness_axioms() const {
    return disjointness_axioms_;
  }

  bool has_class(const Iri& c) const { return classes_.count(c) > 0; }

  // Reflexive-transitive superclass closure of c. Throws on unknown class.
  const IriSet& superclasses(const Iri& c) const;

  // Reflexive-transitive subclass closure of c (descendants, c included).
  const IriSet& descendants(const Iri& c) const;

  // Entities of c: asserted only, or via any asserted class whose closure
  // contains c.
  IriSet instances_of(const Iri& c, bool inferred) const;

  bool is_instance_of(const Iri& e, const Iri& c, bool inferred) const;

  // Classes sharing a direct parent with c, minus c, its ancestors and its
  // descendants.
  IriSet siblings(const Iri& c) const;

  // Disjoint classes of c: siblings of c and of each ancestor plus declared
  // axiom partners, all closed downward, minus anything comparable to c.
  IriSet disjoint_set(const Iri& c) const;

  // disjoint_set(c) restricted to a candidate pool.
  IriSet disjoint_candidates(const IriSet& candidates, const Iri& c) const;

  bool disjoint_with(const Iri& a, const Iri& b) const;

  // {s | <s, p, e> in triples}
  IriSet subjects_of(const Iri& p, const Iri& e) const;

  // Subjects of any triple with e in object position.
  IriSet subjects_any(const Iri& e) const;

  // Label-predicate values plus the local-name fallback.
  std::set<std::string> labels_of(const Iri& e) const;

  // Deterministic single label: smallest explicit label, else the fallback.
  std::string primary_label(const Iri& e) const;

  // Minimal elements of the input under the subclass relation.
  IriSet most_specific(const IriSet& classes) const;

  IriSet asserted_classes(const Iri& e) const;
  IriSet inferred_classes(const Iri& e) const;

  // Hierarchy classes with no declared superclass.
  IriSet roots() const;

  // Non-class, non-predicate IRIs observed as subjects, objects or in
  // instance assertions.
  IriSet entities() const;

  // Copy with every triple, label and assertion mentioning one of the given
  // entities removed. The class hierarchy is kept.
  Kb without_entities(const IriSet& removed) const;

  // Canonical serialization: one sorted triple per line.
  std::string to_ntriples() const;

  const IngestConfig& config() const { return config_; }

 private:
  void index_triple(const Triple& t);
  void finalize();  // cycle check + closures

  IngestConfig config_;
  std::set<Triple> triples_;
  std::set<Iri> classes_;
  std::map<Iri, IriSet> direct_parents_;
  std::map<Iri, IriSet> direct_children_;
  std::map<Iri, IriSet> instance_assertions_;   // entity -> asserted classes
  std::map<Iri, IriSet> asserted_instances_;    // class -> asserted entities
  std::map<Iri, std::set<std::string>> labels_;
  std::set<std::pair<Iri, Iri>> disjointness_axioms_;  // normalized pairs
  std::map<Iri, IriSet> ancestors_;    // precomputed reflexive closures
  std::map<Iri, IriSet> descendants_;
  std::map<Iri, std::map<Iri, IriSet>> object_index_;  // object -> p -> subjects
  std::set<Iri> predicates_;
};

// Serialize one triple in the N-Triples subset used by load_ntriples.
std::string to_ntriples_line(const Triple& t);

}  // namespace kb
}  // namespace litecanon

#endif  // LITECANON_KB_HPP_
