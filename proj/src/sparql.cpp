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

#include "litecanon/sparql.hpp"

#include <json.hpp>
#include <httplib.h>

#include "litecanon/kb.hpp"

namespace litecanon {
namespace sparql {

ResultTable parse_results_json(const std::string& body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed SPARQL results JSON: ") + e.what());
  }
  ResultTable table;
  if (!doc.contains("results") || !doc["results"].contains("bindings"))
    throw Error("malformed SPARQL results JSON: missing results.bindings");
  if (doc.contains("head") && doc["head"].contains("vars"))
    for (const auto& v : doc["head"]["vars"]) table.vars.push_back(v);
  for (const auto& row : doc["results"]["bindings"]) {
    std::map<std::string, Binding> bindings;
    for (auto it = row.begin(); it != row.end(); ++it) {
      Binding b;
      b.type = it.value().value("type", "literal");
      b.value = it.value().value("value", "");
      if (it.value().contains("xml:lang"))
        b.lang = it.value()["xml:lang"].get<std::string>();
      bindings[it.key()] = b;
    }
    table.rows.push_back(std::move(bindings));
  }
  return table;
}

ResultTable fetch_snapshot(const std::string& endpoint_url,
                           const std::string& query) {
  // Split scheme://host[:port]/path
  std::string url = endpoint_url;
  size_t scheme = url.find("://");
  if (scheme != std::string::npos) url = url.substr(scheme + 3);
  std::string path = "/";
  size_t slash = url.find('/');
  if (slash != std::string::npos) {
    path = url.substr(slash);
    url = url.substr(0, slash);
  }
  httplib::Client client(url);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  httplib::Params params{{"query", query}};
  httplib::Headers headers{{"Accept", "application/sparql-results+json"}};
  auto res = client.Get(path, params, headers);
  if (!res)
    throw Error("SPARQL endpoint unreachable: " + endpoint_url);
  if (res->status != 200)
    throw Error("SPARQL endpoint returned HTTP " +
                std::to_string(res->status));
  return parse_results_json(res->body);
}

std::string to_ntriples(const ResultTable& table, const std::string& svar,
                        const std::string& pvar, const std::string& ovar) {
  std::string out;
  for (const auto& row : table.rows) {
    auto s = row.find(svar);
    auto p = row.find(pvar);
    auto o = row.find(ovar);
    if (s == row.end() || p == row.end() || o == row.end())
      throw Error("row missing variable binding");
    kb::Triple t;
    t.subject = s->second.value;
    t.predicate = p->second.value;
    if (o->second.type == "uri") {
      t.object = kb::RdfObject{true, o->second.value, std::nullopt};
    } else {
      t.object = kb::RdfObject{false, o->second.value, o->second.lang};
    }
    out += kb::to_ntriples_line(t);
    out += '\n';
  }
  return out;
}

}  // namespace sparql
}  // namespace litecanon
