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

#include "litecanon/kb.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

namespace litecanon {
namespace kb {

namespace {

struct LineParser {
  const std::string& line;
  size_t line_no;
  size_t pos = 0;

  void fail(const std::string& msg) const { throw ParseError(msg, line_no); }

  void skip_ws() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= line.size();
  }

  Iri parse_iri() {
    skip_ws();
    if (pos >= line.size() || line[pos] != '<') fail("expected '<'");
    size_t end = line.find('>', pos + 1);
    if (end == std::string::npos) fail("unterminated IRI");
    Iri iri = line.substr(pos + 1, end - pos - 1);
    if (iri.empty()) fail("empty IRI");
    if (iri.find_first_of(" \t") != std::string::npos)
      fail("whitespace inside IRI");
    pos = end + 1;
    return iri;
  }

  RdfObject parse_object() {
    skip_ws();
    if (pos >= line.size()) fail("missing object");
    if (line[pos] == '<') {
      return RdfObject{true, parse_iri(), std::nullopt};
    }
    if (line[pos] != '"') fail("object must be an IRI or a quoted literal");
    ++pos;
    std::string lex;
    bool closed = false;
    while (pos < line.size()) {
      char c = line[pos];
      if (c == '\\') {
        if (pos + 1 >= line.size()) fail("dangling escape");
        char e = line[pos + 1];
        switch (e) {
          case '"': lex += '"'; break;
          case '\\': lex += '\\'; break;
          case 'n': lex += '\n'; break;
          case 't': lex += '\t'; break;
          case 'r': lex += '\r'; break;
          default: fail(std::string("unsupported escape '\\") + e + "'");
        }
        pos += 2;
      } else if (c == '"') {
        ++pos;
        closed = true;
        break;
      } else {
        lex += c;
        ++pos;
      }
    }
    if (!closed) fail("unterminated literal");
    std::optional<std::string> lang;
    if (pos < line.size() && line[pos] == '@') {
      size_t start = ++pos;
      while (pos < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[pos])) ||
              line[pos] == '-'))
        ++pos;
      if (pos == start) fail("empty language tag");
      lang = line.substr(start, pos - start);
    }
    if (pos + 1 < line.size() && line[pos] == '^' && line[pos + 1] == '^')
      fail("datatyped literals are not supported");
    return RdfObject{false, lex, lang};
  }

  void parse_dot() {
    skip_ws();
    if (pos >= line.size() || line[pos] != '.') fail("expected terminating '.'");
    ++pos;
    if (!at_end()) fail("trailing characters after '.'");
  }
};

std::string escape_literal(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string local_name_label(const Iri& iri) {
  size_t cut = iri.find_last_of("#/");
  std::string name = cut == std::string::npos ? iri : iri.substr(cut + 1);
  if (name.empty()) name = iri;
  std::replace(name.begin(), name.end(), '_', ' ');
  return name;
}

std::string to_ntriples_line(const Triple& t) {
  std::string out = "<" + t.subject + "> <" + t.predicate + "> ";
  if (t.object.is_iri) {
    out += "<" + t.object.value + ">";
  } else {
    out += "\"" + escape_literal(t.object.value) + "\"";
    if (t.object.lang) out += "@" + *t.object.lang;
  }
  out += " .";
  return out;
}

Kb Kb::load_ntriples(std::istream& in, const IngestConfig& config) {
  Kb kb;
  kb.config_ = config;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    LineParser p{line, line_no};
    Triple t;
    t.subject = p.parse_iri();
    t.predicate = p.parse_iri();
    t.object = p.parse_object();
    p.parse_dot();

    if (!t.object.is_iri && t.object.value.empty() &&
        !config.allow_empty_literals)
      throw ParseError("empty literal", line_no);
    if (t.predicate == config.type_predicate && !t.object.is_iri)
      throw ParseError("type assertion with literal object", line_no);
    if (t.predicate == config.subclass_predicate && !t.object.is_iri)
      throw ParseError("subclass axiom with literal object", line_no);
    if (config.label_predicates.count(t.predicate) && t.object.is_iri)
      throw ParseError("label with IRI object", line_no);

    kb.index_triple(t);
  }
  kb.finalize();
  return kb;
}

Kb Kb::load_ntriples_file(const std::string& path, const IngestConfig& config) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return load_ntriples(in, config);
}

void Kb::index_triple(const Triple& t) {
  triples_.insert(t);
  predicates_.insert(t.predicate);
  if (t.predicate == config_.type_predicate) {
    instance_assertions_[t.subject].insert(t.object.value);
    asserted_instances_[t.object.value].insert(t.subject);
    classes_.insert(t.object.value);
  } else if (t.predicate == config_.subclass_predicate) {
    direct_parents_[t.subject].insert(t.object.value);
    direct_children_[t.object.value].insert(t.subject);
    classes_.insert(t.subject);
    classes_.insert(t.object.value);
  } else if (t.predicate == config_.disjoint_predicate && t.object.is_iri) {
    auto a = t.subject, b = t.object.value;
    if (b < a) std::swap(a, b);
    disjointness_axioms_.insert({a, b});
    classes_.insert(a);
    classes_.insert(b);
  } else if (config_.label_predicates.count(t.predicate)) {
    labels_[t.subject].insert(t.object.value);
  }
  if (t.object.is_iri) {
    object_index_[t.object.value][t.predicate].insert(t.subject);
  }
}

void Kb::finalize() {
  // Cycle detection over the subclass graph, with the offending cycle
  // reported in the error message.
  std::map<Iri, int> state;  // 0 unvisited, 1 on stack, 2 done
  std::vector<Iri> stack;
  std::function<void(const Iri&)> visit = [&](const Iri& c) {
    state[c] = 1;
    stack.push_back(c);
    auto it = direct_parents_.find(c);
    if (it != direct_parents_.end()) {
      for (const Iri& p : it->second) {
        int s = state.count(p) ? state[p] : 0;
        if (s == 1) {
          std::string msg = "subclass cycle: ";
          auto start = std::find(stack.begin(), stack.end(), p);
          for (auto i = start; i != stack.end(); ++i) msg += *i + " <= ";
          msg += p;
          throw Error(msg);
        }
        if (s == 0) visit(p);
      }
    }
    state[c] = 2;
    stack.pop_back();
  };
  for (const Iri& c : classes_)
    if (!state.count(c)) visit(c);

  // Reflexive-transitive closures, memoized bottom-up.
  std::function<const IriSet&(const Iri&)> up = [&](const Iri& c) -> const IriSet& {
    auto found = ancestors_.find(c);
    if (found != ancestors_.end()) return found->second;
    IriSet closure{c};
    auto it = direct_parents_.find(c);
    if (it != direct_parents_.end()) {
      for (const Iri& p : it->second) {
        const IriSet& above = up(p);
        closure.insert(above.begin(), above.end());
      }
    }
    return ancestors_.emplace(c, std::move(closure)).first->second;
  };
  for (const Iri& c : classes_) {
    const IriSet& anc = up(c);
    for (const Iri& a : anc) descendants_[a].insert(c);
  }
}

const IriSet& Kb::superclasses(const Iri& c) const {
  auto it = ancestors_.find(c);
  if (it == ancestors_.end()) throw Error("unknown class: " + c);
  return it->second;
}

const IriSet& Kb::descendants(const Iri& c) const {
  auto it = descendants_.find(c);
  if (it == descendants_.end()) throw Error("unknown class: " + c);
  return it->second;
}

IriSet Kb::instances_of(const Iri& c, bool inferred) const {
  if (!has_class(c)) throw Error("unknown class: " + c);
  IriSet out;
  if (!inferred) {
    auto it = asserted_instances_.find(c);
    if (it != asserted_instances_.end()) out = it->second;
    return out;
  }
  for (const Iri& sub : descendants(c)) {
    auto it = asserted_instances_.find(sub);
    if (it != asserted_instances_.end())
      out.insert(it->second.begin(), it->second.end());
  }
  return out;
}

bool Kb::is_instance_of(const Iri& e, const Iri& c, bool inferred) const {
  auto it = instance_assertions_.find(e);
  if (it == instance_assertions_.end()) return false;
  if (!inferred) return it->second.count(c) > 0;
  for (const Iri& a : it->second) {
    if (a == c) return true;
    auto anc = ancestors_.find(a);
    if (anc != ancestors_.end() && anc->second.count(c)) return true;
  }
  return false;
}

IriSet Kb::siblings(const Iri& c) const {
  if (!has_class(c)) throw Error("unknown class: " + c);
  IriSet out;
  auto parents = direct_parents_.find(c);
  if (parents == direct_parents_.end()) return out;
  for (const Iri& p : parents->second) {
    auto kids = direct_children_.find(p);
    if (kids == direct_children_.end()) continue;
    out.insert(kids->second.begin(), kids->second.end());
  }
  const IriSet& up = superclasses(c);
  const IriSet& down = descendants(c);
  for (auto it = out.begin(); it != out.end();) {
    if (up.count(*it) || down.count(*it)) it = out.erase(it);
    else ++it;
  }
  return out;
}

IriSet Kb::disjoint_set(const Iri& c) const {
  if (!has_class(c)) throw Error("unknown class: " + c);
  IriSet seeds;
  for (const Iri& anc : superclasses(c)) {
    IriSet sib = siblings(anc);
    seeds.insert(sib.begin(), sib.end());
    // declared axioms are inherited: an axiom on an ancestor reaches c
    for (const auto& [a, b] : disjointness_axioms_) {
      if (a == anc) seeds.insert(b);
      if (b == anc) seeds.insert(a);
    }
  }
  IriSet out;
  for (const Iri& s : seeds) {
    const IriSet& down = descendants(s);
    out.insert(down.begin(), down.end());
  }
  // A DAG can make an ancestor's sibling comparable to c; comparables are
  // never disjoint with c.
  for (const Iri& a : superclasses(c)) out.erase(a);
  for (const Iri& d : descendants(c)) out.erase(d);
  return out;
}

IriSet Kb::disjoint_candidates(const IriSet& candidates, const Iri& c) const {
  IriSet all = disjoint_set(c);
  IriSet out;
  for (const Iri& x : all)
    if (candidates.count(x)) out.insert(x);
  return out;
}

bool Kb::disjoint_with(const Iri& a, const Iri& b) const {
  if (!has_class(a) || !has_class(b)) return false;
  return disjoint_set(a).count(b) > 0;
}

IriSet Kb::subjects_of(const Iri& p, const Iri& e) const {
  auto obj = object_index_.find(e);
  if (obj == object_index_.end()) return {};
  auto it = obj->second.find(p);
  if (it == obj->second.end()) return {};
  return it->second;
}

IriSet Kb::subjects_any(const Iri& e) const {
  IriSet out;
  auto obj = object_index_.find(e);
  if (obj == object_index_.end()) return out;
  for (const auto& [p, subjects] : obj->second)
    out.insert(subjects.begin(), subjects.end());
  return out;
}

std::set<std::string> Kb::labels_of(const Iri& e) const {
  std::set<std::string> out;
  auto it = labels_.find(e);
  if (it != labels_.end()) out = it->second;
  out.insert(local_name_label(e));
  return out;
}

std::string Kb::primary_label(const Iri& e) const {
  auto it = labels_.find(e);
  if (it != labels_.end() && !it->second.empty()) return *it->second.begin();
  return local_name_label(e);
}

IriSet Kb::most_specific(const IriSet& classes) const {
  IriSet out;
  for (const Iri& c : classes) {
    bool minimal = true;
    for (const Iri& other : classes) {
      if (other == c) continue;
      // other strictly below c => c is not minimal
      auto anc = ancestors_.find(other);
      if (anc != ancestors_.end() && anc->second.count(c)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.insert(c);
  }
  return out;
}

IriSet Kb::asserted_classes(const Iri& e) const {
  auto it = instance_assertions_.find(e);
  return it == instance_assertions_.end() ? IriSet{} : it->second;
}

IriSet Kb::inferred_classes(const Iri& e) const {
  IriSet out;
  for (const Iri& c : asserted_classes(e)) {
    const IriSet& up = superclasses(c);
    out.insert(up.begin(), up.end());
  }
  return out;
}

IriSet Kb::roots() const {
  IriSet out;
  for (const Iri& c : classes_) {
    auto it = direct_parents_.find(c);
    if (it == direct_parents_.end() || it->second.empty()) out.insert(c);
  }
  return out;
}

IriSet Kb::entities() const {
  IriSet out;
  for (const auto& [e, _] : instance_assertions_) out.insert(e);
  for (const Triple& t : triples_) {
    out.insert(t.subject);
    if (t.object.is_iri) out.insert(t.object.value);
  }
  for (const Iri& c : classes_) out.erase(c);
  for (const Iri& p : predicates_) out.erase(p);
  return out;
}

Kb Kb::without_entities(const IriSet& removed) const {
  Kb out;
  out.config_ = config_;
  for (const Triple& t : triples_) {
    if (removed.count(t.subject)) continue;
    if (t.object.is_iri && removed.count(t.object.value)) continue;
    out.index_triple(t);
  }
  // Keep the full hierarchy even if some class is now unreferenced.
  for (const auto& [child, parents] : direct_parents_) {
    out.classes_.insert(child);
    for (const Iri& p : parents) {
      out.classes_.insert(p);
      out.direct_parents_[child].insert(p);
      out.direct_children_[p].insert(child);
    }
  }
  out.classes_.insert(classes_.begin(), classes_.end());
  out.disjointness_axioms_ = disjointness_axioms_;
  out.finalize();
  return out;
}

std::string Kb::to_ntriples() const {
  std::string out;
  for (const Triple& t : triples_) {
    out += to_ntriples_line(t);
    out += '\n';
  }
  return out;
}

}  // namespace kb
}  // namespace litecanon
