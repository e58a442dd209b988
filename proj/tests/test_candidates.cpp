#include <doctest.h>

#include "helpers.hpp"
#include "litecanon/candidates.hpp"

using namespace litecanon;
using testutil::kb_from;

namespace {

const std::string kKb =
    "<http://t/Wetland> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://t/Place> .\n"
    "<http://t/City> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://t/Place> .\n"
    "<http://t/Place> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://t/Thing> .\n"
    "<http://t/pm> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://t/Wetland> .\n"
    "<http://t/pm> <http://www.w3.org/2000/01/rdf-schema#label> \"port meadow\" .\n"
    "<http://t/ox> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://t/City> .\n"
    "<http://t/ox> <http://www.w3.org/2000/01/rdf-schema#label> \"oxford\" .\n"
    "<http://t/s1> <http://t/passes> <http://t/pm> .\n"
    "<http://t/s2> <http://t/passes> \"meadow banks\" .\n"
    "<http://t/s3> <http://t/born> <http://t/ox> .\n";

}  // namespace

TEST_CASE("entity_objects: literal-only property and two-entity property") {
  kb::Kb k = kb_from(kKb);
  CHECK(candgen::entity_objects(k, "http://t/passes") ==
        kb::IriSet{"http://t/pm"});
  CHECK(candgen::entity_objects(k, "http://t/born") == kb::IriSet{"http://t/ox"});
  CHECK(candgen::entity_objects(k, "http://t/nothing").empty());
  // linear-scan oracle
  kb::IriSet expected;
  for (const kb::Triple& t : k.triples())
    if (t.predicate == "http://t/passes" && t.object.is_iri)
      expected.insert(t.object.value);
  CHECK(candgen::entity_objects(k, "http://t/passes") == expected);
}

TEST_CASE("classes_of: closure with root excluded") {
  kb::Kb k = kb_from(kKb);
  CHECK(candgen::classes_of(k, {}).empty());
  CHECK(candgen::classes_of(k, {"http://t/pm"}, {"http://t/Thing"}) ==
        kb::IriSet{"http://t/Wetland", "http://t/Place"});
  // oracle: per-entity superclass closure
  kb::IriSet expected;
  for (const kb::Iri& c : k.asserted_classes("http://t/pm")) {
    const kb::IriSet& up = k.superclasses(c);
    expected.insert(up.begin(), up.end());
  }
  expected.erase("http://t/Thing");
  CHECK(candgen::classes_of(k, {"http://t/pm"}, {"http://t/Thing"}) == expected);
}

TEST_CASE("candidate_classes: pooling, emptiness, and the union invariant") {
  kb::Kb k = kb_from(kKb);
  lex::Index index = lex::build_index(k);

  candgen::CandidateSet none =
      candgen::candidate_classes(k, index, "http://t/nothing", {});
  CHECK(none.e_p.empty());
  CHECK(none.c_p.empty());
  CHECK(none.e_m.empty());
  CHECK(none.c_m.empty());
  CHECK(none.c_pm.empty());

  // literals matching nothing: c_pm collapses to c_p
  candgen::CandidateSet only_p =
      candgen::candidate_classes(k, index, "http://t/passes", {"zzz"});
  CHECK(only_p.c_m.empty());
  CHECK(only_p.c_pm == only_p.c_p);

  candgen::CandidateSet cs = candgen::candidate_classes(
      k, index, "http://t/passes", {"meadow banks"});
  CHECK(cs.e_p == kb::IriSet{"http://t/pm"});
  CHECK(cs.c_p == kb::IriSet{"http://t/Wetland", "http://t/Place"});
  CHECK(cs.e_m.count("http://t/pm"));  // shares the "meadow" token
  // union invariant, exact set equality
  kb::IriSet expected_union = cs.c_p;
  expected_union.insert(cs.c_m.begin(), cs.c_m.end());
  CHECK(cs.c_pm == expected_union);
}

TEST_CASE("candidate_classes: brute-force union oracle on the toy property") {
  kb::Kb k = kb_from(kKb);
  lex::Index index = lex::build_index(k);
  std::vector<std::string> literals{"meadow banks", "oxford"};
  candgen::CandidateSet cs =
      candgen::candidate_classes(k, index, "http://t/passes", literals);

  kb::IriSet e_m;
  for (const std::string& l : literals) {
    kb::IriSet m = lex::lookup_expanded(index, l, 30);
    e_m.insert(m.begin(), m.end());
  }
  CHECK(cs.e_m == e_m);
  kb::IriSet roots = k.roots();
  CHECK(cs.c_m == candgen::classes_of(k, e_m, roots));
  kb::IriSet u = candgen::classes_of(k, candgen::entity_objects(k, "http://t/passes"), roots);
  kb::IriSet cm = cs.c_m;
  u.insert(cm.begin(), cm.end());
  CHECK(cs.c_pm == u);
}

TEST_CASE("candidate monotonicity: adding a literal never shrinks c_m") {
  kb::Kb k = kb_from(kKb);
  lex::Index index = lex::build_index(k);
  std::vector<std::string> literals;
  kb::IriSet prev;
  for (const char* next : {"meadow", "oxford", "port meadow"}) {
    literals.push_back(next);
    candgen::CandidateSet cs =
        candgen::candidate_classes(k, index, "http://t/passes", literals);
    for (const kb::Iri& c : prev) CHECK(cs.c_m.count(c));
    prev = cs.c_m;
  }
}
