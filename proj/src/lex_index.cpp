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

#include "litecanon/lex_index.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace litecanon {
namespace lex {

namespace {

inline bool is_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}
inline bool is_lower(char c) {
  return std::islower(static_cast<unsigned char>(c)) != 0;
}
inline bool is_upper(char c) {
  return std::isupper(static_cast<unsigned char>(c)) != 0;
}
inline bool is_digit(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

size_t levenshtein(const std::string& a, const std::string& b) {
  const size_t n = a.size(), m = b.size();
  if (n == 0) return m;
  if (m == 0) return n;
  std::vector<size_t> prev(m + 1), cur(m + 1);
  for (size_t j = 0; j <= m; ++j) prev[j] = j;
  for (size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= m; ++j) {
      size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double best_text_similarity(const Index& index, const kb::Iri& entity,
                            const std::string& normalized_query) {
  double best = 0.0;
  auto it = index.entity_texts.find(entity);
  if (it == index.entity_texts.end()) return 0.0;
  for (const std::string& text : it->second)
    best = std::max(best, lexical_similarity(normalized_query, text));
  return best;
}

// Entities whose postings contain every token of the query.
kb::IriSet conjunctive_match(const Index& index,
                             const std::vector<std::string>& tokens) {
  kb::IriSet out;
  if (tokens.empty()) return out;
  auto first = index.postings.find(tokens[0]);
  if (first == index.postings.end()) return out;
  out = first->second;
  for (size_t i = 1; i < tokens.size() && !out.empty(); ++i) {
    auto it = index.postings.find(tokens[i]);
    if (it == index.postings.end()) return {};
    kb::IriSet next;
    std::set_intersection(out.begin(), out.end(), it->second.begin(),
                          it->second.end(),
                          std::inserter(next, next.begin()));
    out = std::move(next);
  }
  return out;
}

kb::IriSet rank_and_cap(const Index& index, const kb::IriSet& pool,
                        const std::string& normalized_query, int cap) {
  std::vector<RankedEntity> ranked;
  ranked.reserve(pool.size());
  for (const kb::Iri& e : pool)
    ranked.push_back({e, best_text_similarity(index, e, normalized_query)});
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.entity < b.entity;
  });
  kb::IriSet out;
  for (size_t i = 0; i < ranked.size() && i < static_cast<size_t>(cap); ++i)
    out.insert(ranked[i].entity);
  return out;
}

}  // namespace

std::vector<std::string> normalize_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  };
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (!is_alnum(c)) {
      flush();
      continue;
    }
    if (!cur.empty()) {
      char prev = text[i - 1];
      bool camel = (is_lower(prev) || is_digit(prev)) && is_upper(c);
      // acronym end: "HTTPServer" -> "http", "server"
      bool acronym = is_upper(prev) && is_upper(c) && i + 1 < text.size() &&
                     is_lower(text[i + 1]);
      if (camel || acronym) flush();
    }
    cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  flush();
  return tokens;
}

std::string normalize_phrase(std::string_view text) {
  std::string out;
  for (const std::string& t : normalize_tokens(text)) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

double lexical_similarity(std::string_view a, std::string_view b) {
  std::string na = normalize_phrase(a);
  std::string nb = normalize_phrase(b);
  size_t longest = std::max(na.size(), nb.size());
  if (longest == 0) return 1.0;
  size_t dist = levenshtein(na, nb);
  return 1.0 - static_cast<double>(dist) / static_cast<double>(longest);
}

Index build_index(const kb::Kb& kb,
                  const std::map<kb::Iri, std::string>* anchors) {
  Index index;
  for (const kb::Iri& e : kb.entities()) {
    std::set<std::string> texts;
    for (const std::string& label : kb.labels_of(e)) {
      std::string norm = normalize_phrase(label);
      if (!norm.empty()) texts.insert(norm);
    }
    if (anchors) {
      auto it = anchors->find(e);
      if (it != anchors->end()) {
        std::string norm = normalize_phrase(it->second);
        if (!norm.empty()) texts.insert(norm);
      }
    }
    if (texts.empty()) continue;
    for (const std::string& text : texts)
      for (const std::string& token : normalize_tokens(text))
        index.postings[token].insert(e);
    index.entity_texts[e] = std::move(texts);
  }
  return index;
}

std::map<kb::Iri, std::string> load_anchors_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::map<kb::Iri, std::string> anchors;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("expected `iri<TAB>text`", line_no);
    anchors[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return anchors;
}

kb::IriSet lookup_expanded(const Index& index, const std::string& literal,
                           int cap) {
  std::vector<std::string> tokens = normalize_tokens(literal);
  if (tokens.empty() || cap <= 0) return {};
  std::string phrase = normalize_phrase(literal);

  kb::IriSet out;
  // (i) whole phrase
  auto merge = [&](const kb::IriSet& capped) {
    out.insert(capped.begin(), capped.end());
  };
  merge(rank_and_cap(index, conjunctive_match(index, tokens), phrase, cap));
  // (ii) single tokens
  for (const std::string& t : tokens)
    merge(rank_and_cap(index, conjunctive_match(index, {t}), phrase, cap));
  // (iii) contiguous sub-phrases, n >= 2
  for (size_t n = 2; n < tokens.size(); ++n) {
    for (size_t start = 0; start + n <= tokens.size(); ++start) {
      std::vector<std::string> gram(tokens.begin() + start,
                                    tokens.begin() + start + n);
      merge(rank_and_cap(index, conjunctive_match(index, gram), phrase, cap));
    }
  }
  return out;
}

std::vector<RankedEntity> lookup_phrase(const Index& index,
                                        const std::string& phrase, int k) {
  std::string norm = normalize_phrase(phrase);
  std::vector<RankedEntity> ranked;
  for (const auto& [entity, texts] : index.entity_texts) {
    double best = 0.0;
    for (const std::string& text : texts)
      best = std::max(best, lexical_similarity(norm, text));
    if (best > 0.0) ranked.push_back({entity, best});
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.entity < b.entity;
  });
  if (k >= 0 && ranked.size() > static_cast<size_t>(k)) ranked.resize(k);
  return ranked;
}

}  // namespace lex
}  // namespace litecanon
