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

#ifndef LITECANON_SPARQL_HPP_
#define LITECANON_SPARQL_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace litecanon {
namespace sparql {

struct Binding {
  std::string type;   // "uri" or "literal"
  std::string value;
  std::optional<std::string> lang;
};

// Rows of variable bindings from a SPARQL-results JSON document,
// in response order.
struct ResultTable {
  std::vector<std::string> vars;
  std::vector<std::map<std::string, Binding>> rows;
};

// Parse an application/sparql-results+json body.
ResultTable parse_results_json(const std::string& body);

// Snapshot client: HTTP GET <endpoint>?query=..., Accept header set to
// SPARQL-results JSON. Queries are issued once and materialized to files;
// nothing in the pipeline talks to an endpoint during training.
ResultTable fetch_snapshot(const std::string& endpoint_url,
                           const std::string& query);

// Convert rows to N-Triples lines using the given variables for the
// subject, predicate and object columns.
std::string to_ntriples(const ResultTable& table, const std::string& svar,
                        const std::string& pvar, const std::string& ovar);

}  // namespace sparql
}  // namespace litecanon

#endif  // LITECANON_SPARQL_HPP_
