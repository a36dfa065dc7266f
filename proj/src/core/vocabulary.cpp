// Copyright 2026 The tcdiscover Authors
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

#include "tcdiscover/vocabulary.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include "tcdiscover/error.hpp"
#include "tcdiscover/text.hpp"

namespace tcd {
namespace {

constexpr std::array<std::string_view, kDimensionCount> kKeys = {"domain", "phenomenon",
                                                                 "assessment", "components"};
constexpr std::array<std::string_view, kDimensionCount> kLabels = {
    "Domain under Investigation", "Tested Phenomenon", "Type of Assessment",
    "Test System/Components"};
constexpr std::array<std::string_view, kDimensionCount> kEnumNames = {
    "DomainUnderInvestigation", "TestedPhenomenon", "TypeOfAssessment", "TestSystemComponents"};

// Characters that would break the line format.
bool has_reserved(std::string_view s, std::string_view reserved) {
  return s.find_first_of(reserved) != std::string_view::npos;
}

void check_field(std::string_view value, std::string_view reserved, std::string_view what) {
  if (has_reserved(value, reserved)) {
    throw Error("InvalidKeyword",
                std::string(what) + " '" + std::string(value) + "' contains a reserved character");
  }
}

}  // namespace

std::string_view dimension_key(Dimension d) { return kKeys[index_of(d)]; }
std::string_view dimension_label(Dimension d) { return kLabels[index_of(d)]; }

std::optional<Dimension> parse_dimension(std::string_view s) {
  auto key = text::fold_case(text::trim(s));
  for (auto d : kAllDimensions) {
    if (key == kKeys[index_of(d)] || key == text::fold_case(kEnumNames[index_of(d)])) return d;
  }
  return std::nullopt;
}

KeywordVocabulary::KeywordVocabulary(
    std::array<std::vector<KeywordEntry>, kDimensionCount> entries)
    : entries_(std::move(entries)) {
  for (auto d : kAllDimensions) {
    auto& list = entries_[index_of(d)];
    if (list.empty()) {
      throw Error("EmptyDimension",
                  "dimension '" + std::string(dimension_key(d)) + "' has no keywords");
    }
    auto& canon = canonical_lookup_[index_of(d)];
    auto& alias = alias_lookup_[index_of(d)];
    for (std::size_t i = 0; i < list.size(); ++i) {
      auto& e = list[i];
      e.canonical = text::normalize_whitespace(e.canonical);
      e.definition = text::normalize_whitespace(e.definition);
      if (e.canonical.empty()) throw Error("InvalidKeyword", "empty canonical keyword");
      check_field(e.canonical, "|;\n", "keyword");
      if (e.canonical.front() == '#' || e.canonical.front() == '[') {
        throw Error("InvalidKeyword", "keyword '" + e.canonical + "' starts with a reserved character");
      }
      check_field(e.definition, "|\n", "definition");
      for (auto& a : e.aliases) {
        a = text::normalize_whitespace(a);
        if (a.empty()) throw Error("InvalidKeyword", "empty alias for '" + e.canonical + "'");
        check_field(a, "|;\n", "alias");
      }
      if (!canon.emplace(text::fold_case(e.canonical), i).second) {
        throw Error("DuplicateKeyword", "keyword '" + e.canonical + "' appears twice in dimension '" +
                                            std::string(dimension_key(d)) + "'");
      }
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (const auto& a : list[i].aliases) {
        auto key = text::fold_case(a);
        auto hit = canon.find(key);
        if (hit != canon.end() && hit->second != i) {
          throw Error("DuplicateKeyword", "alias '" + a + "' of '" + list[i].canonical +
                                              "' collides with keyword '" +
                                              list[hit->second].canonical + "'");
        }
        auto [pos, inserted] = alias.emplace(key, i);
        if (!inserted && pos->second != i) {
          throw Error("DuplicateKeyword", "alias '" + a + "' is claimed by both '" +
                                              list[pos->second].canonical + "' and '" +
                                              list[i].canonical + "'");
        }
      }
    }
  }
}

KeywordMatch KeywordVocabulary::canonicalize(Dimension d, std::string_view raw) const {
  const auto key = text::match_key(raw);
  const auto& list = entries(d);
  KeywordMatch m;
  if (auto it = canonical_lookup_[index_of(d)].find(key); it != canonical_lookup_[index_of(d)].end()) {
    m.entry = &list[it->second];
    return m;
  }
  if (auto it = alias_lookup_[index_of(d)].find(key); it != alias_lookup_[index_of(d)].end()) {
    m.entry = &list[it->second];
    m.via_alias = true;
    return m;
  }
  std::vector<std::tuple<std::size_t, std::string>> near;
  for (const auto& e : list) {
    auto dist = text::levenshtein(key, text::fold_case(e.canonical));
    if (dist <= kSuggestionRadius) near.emplace_back(dist, e.canonical);
  }
  std::sort(near.begin(), near.end());
  for (auto& [dist, name] : near) m.suggestions.push_back(std::move(name));
  return m;
}

std::optional<std::size_t> KeywordVocabulary::position(Dimension d,
                                                       std::string_view canonical) const {
  const auto& lookup = canonical_lookup_[index_of(d)];
  auto it = lookup.find(text::match_key(canonical));
  if (it == lookup.end() || entries(d)[it->second].canonical != canonical) return std::nullopt;
  return it->second;
}

KeywordVocabulary parse_vocabulary(std::string_view source) {
  std::array<std::vector<KeywordEntry>, kDimensionCount> entries;
  std::array<std::vector<int>, kDimensionCount> entry_lines;
  std::array<int, kDimensionCount> header_line{};
  std::optional<Dimension> current;

  // Strip a UTF-8 byte order mark.
  if (source.substr(0, 3) == "\xEF\xBB\xBF") source.remove_prefix(3);

  int line_no = 0;
  for (auto raw : text::split_lines(source)) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      std::optional<Dimension> dim;
      for (auto d : kAllDimensions) {
        if (line == "[" + std::string(dimension_key(d)) + "]") dim = d;
      }
      if (!dim) {
        throw Error("SyntaxError", "line " + std::to_string(line_no) + ": unknown header '" +
                                       std::string(line) + "'", {}, line_no);
      }
      if (header_line[index_of(*dim)] != 0) {
        throw Error("SyntaxError",
                    "line " + std::to_string(line_no) + ": repeated header '" + std::string(line) +
                        "' (first on line " + std::to_string(header_line[index_of(*dim)]) + ")",
                    {}, line_no);
      }
      header_line[index_of(*dim)] = line_no;
      current = dim;
      continue;
    }
    if (!current) {
      throw Error("SyntaxError",
                  "line " + std::to_string(line_no) + ": keyword before any dimension header", {},
                  line_no);
    }
    auto fields = text::split(line, '|');
    if (fields.size() > 3) {
      throw Error("SyntaxError", "line " + std::to_string(line_no) + ": too many '|' fields", {},
                  line_no);
    }
    KeywordEntry e;
    e.canonical = text::normalize_whitespace(fields[0]);
    if (e.canonical.empty()) {
      throw Error("SyntaxError", "line " + std::to_string(line_no) + ": empty keyword", {},
                  line_no);
    }
    if (fields.size() > 1) e.definition = text::normalize_whitespace(fields[1]);
    if (fields.size() > 2) {
      for (auto a : text::split(fields[2], ';')) {
        auto alias = text::normalize_whitespace(a);
        if (!alias.empty()) e.aliases.push_back(std::move(alias));
      }
    }
    auto& list = entries[index_of(*current)];
    auto& lines = entry_lines[index_of(*current)];
    const auto key = text::fold_case(e.canonical);
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (text::fold_case(list[i].canonical) == key) {
        throw Error("DuplicateKeyword",
                    "keyword '" + e.canonical + "' in [" + std::string(dimension_key(*current)) +
                        "] on lines " + std::to_string(lines[i]) + " and " +
                        std::to_string(line_no),
                    {}, line_no);
      }
    }
    list.push_back(std::move(e));
    lines.push_back(line_no);
  }

  for (auto d : kAllDimensions) {
    if (header_line[index_of(d)] == 0) {
      throw Error("MissingDimension",
                  "missing dimension header [" + std::string(dimension_key(d)) + "]");
    }
    if (entries[index_of(d)].empty()) {
      throw Error("EmptyDimension",
                  "dimension [" + std::string(dimension_key(d)) + "] has no keywords", {},
                  header_line[index_of(d)]);
    }
  }
  return KeywordVocabulary(std::move(entries));
}

std::string serialize_vocabulary(const KeywordVocabulary& vocab) {
  std::ostringstream out;
  bool first = true;
  for (auto d : kAllDimensions) {
    if (!first) out << '\n';
    first = false;
    out << '[' << dimension_key(d) << "]\n";
    for (const auto& e : vocab.entries(d)) {
      out << e.canonical;
      if (!e.definition.empty() || !e.aliases.empty()) out << " | " << e.definition;
      if (!e.aliases.empty()) {
        out << " | ";
        for (std::size_t i = 0; i < e.aliases.size(); ++i) out << (i ? ";" : "") << e.aliases[i];
      }
      out << '\n';
    }
  }
  return out.str();
}

const KeywordVocabulary& default_vocabulary() {
  static const KeywordVocabulary vocab = parse_vocabulary(default_vocabulary_text());
  return vocab;
}

KeywordVocabulary load_vocabulary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", "cannot read vocabulary file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_vocabulary(buf.str());
}

}  // namespace tcd
