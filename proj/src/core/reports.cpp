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

#include "tcdiscover/reports.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "tcdiscover/error.hpp"
#include "tcdiscover/json_io.hpp"
#include "tcdiscover/text.hpp"

namespace tcd {
namespace {

using json::Json;

std::vector<Dimension> selected_dimensions(const std::vector<Dimension>& requested) {
  if (requested.empty()) return {kAllDimensions.begin(), kAllDimensions.end()};
  std::vector<Dimension> out;
  for (auto d : kAllDimensions) {
    if (std::find(requested.begin(), requested.end(), d) != requested.end()) out.push_back(d);
  }
  return out;
}

// Natural order of scenario ids, with the no-scenario group last.
struct GroupLess {
  bool operator()(const std::string& a, const std::string& b) const {
    const bool na = a == kNoScenario, nb = b == kNoScenario;
    if (na != nb) return nb;
    return text::natural_less(a, b);
  }
};

std::string group_of(const TestCaseDocument& doc) {
  return doc.scenario ? *doc.scenario : std::string(kNoScenario);
}

// scenario id -> member test cases (indexed ones only), natural order.
std::map<std::string, std::vector<std::string>, GroupLess> scenario_members(
    const Corpus& corpus, const FacetedIndex& index) {
  std::map<std::string, std::vector<std::string>, GroupLess> groups;
  for (const auto& id : index.universe()) {
    if (const auto* doc = corpus.find(id)) groups[group_of(*doc)].push_back(id);
  }
  return groups;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::string md_cell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out.push_back(' ');
    else out.push_back(c);
  }
  return out;
}

std::string column_label(const MatrixColumn& c) {
  return std::string(dimension_key(c.dimension)) + ":" + c.keyword;
}

std::string score_text(double score) {
  std::ostringstream out;
  out.precision(4);
  out << std::fixed << score;
  return out.str();
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

Dimension dimension_from_json(const nlohmann::json& j) {
  auto d = parse_dimension(j.get<std::string>());
  if (!d) throw Error("SyntaxError", "unknown dimension '" + j.get<std::string>() + "'");
  return *d;
}

}  // namespace

Scope Scope::parse(std::string_view s) {
  s = text::trim(s);
  if (s.empty() || s == "all") return Scope{};
  if (s.substr(0, 3) == "fs:" && s.size() > 3) return Scope{Kind::Scenario, std::string(s.substr(3))};
  if (s.substr(0, 8) == "profile:" && s.size() > 8) {
    return Scope{Kind::Profile, std::string(s.substr(8))};
  }
  throw Error("UnknownScope", "scope '" + std::string(s) + "' must be all, fs:ID or profile:NAME");
}

std::string Scope::to_string() const {
  switch (kind) {
    case Kind::All: return "all";
    case Kind::Scenario: return "fs:" + name;
    case Kind::Profile: return "profile:" + name;
  }
  return "all";
}

std::vector<std::string> CoverageMatrix::row_ids() const {
  std::vector<std::string> ids;
  for (const auto& g : groups) ids.insert(ids.end(), g.test_cases.begin(), g.test_cases.end());
  return ids;
}

CoverageMatrix coverage_matrix(const Corpus& corpus, const FacetedIndex& index,
                               const MatrixOptions& options,
                               const std::vector<TestCaseProfile>& profiles) {
  std::vector<std::string> in_scope;
  switch (options.scope.kind) {
    case Scope::Kind::All:
      in_scope = index.universe();
      break;
    case Scope::Kind::Scenario: {
      if (!corpus.scenarios.count(options.scope.name)) {
        throw Error("UnknownScope", "unknown scenario '" + options.scope.name + "'");
      }
      for (const auto& id : index.universe()) {
        const auto* doc = corpus.find(id);
        if (doc && doc->scenario == options.scope.name) in_scope.push_back(id);
      }
      break;
    }
    case Scope::Kind::Profile: {
      const auto* p = find_profile(profiles, options.scope.name);
      if (!p) throw Error("UnknownScope", "unknown profile '" + options.scope.name + "'");
      in_scope = profile_members(*p, index);
      break;
    }
  }

  std::map<std::string, std::vector<std::string>, GroupLess> grouped;
  std::vector<const TestCaseDocument*> docs;
  for (const auto& id : in_scope) {
    if (const auto* doc = corpus.find(id)) grouped[group_of(*doc)].push_back(id);
  }
  CoverageMatrix m;
  for (auto& [scenario, ids] : grouped) {
    for (const auto& id : ids) docs.push_back(corpus.find(id));
    m.groups.push_back(MatrixGroup{scenario, std::move(ids)});
  }

  for (auto d : selected_dimensions(options.dimensions)) {
    for (const auto& e : corpus.vocabulary.entries(d)) {
      const bool used = std::any_of(docs.begin(), docs.end(),
                                    [&](const auto* doc) { return doc->has_tag(d, e.canonical); });
      if (options.full_columns || used) m.columns.push_back(MatrixColumn{d, e.canonical});
    }
  }
  for (const auto* doc : docs) {
    std::vector<bool> row;
    row.reserve(m.columns.size());
    for (const auto& c : m.columns) row.push_back(doc->has_tag(c.dimension, c.keyword));
    m.cells.push_back(std::move(row));
  }
  return m;
}

bool GapReport::has_findings() const {
  const bool unused = std::any_of(unused_keywords.begin(), unused_keywords.end(),
                                  [](const auto& v) { return !v.empty(); });
  return unused || !untagged_dimensions.empty() || !singleton_keywords.empty() ||
         !low_similarity_pairs.empty();
}

GapReport gap_report(const Corpus& corpus, const FacetedIndex& index, const GapConfig& cfg) {
  cfg.similarity.validate();
  GapReport r;
  for (auto d : kAllDimensions) {
    for (const auto& e : corpus.vocabulary.entries(d)) {
      if (index.posting(d, e.canonical).empty()) r.unused_keywords[index_of(d)].push_back(e.canonical);
    }
  }
  for (const auto& id : index.universe()) {
    const auto* doc = corpus.find(id);
    for (auto d : kAllDimensions) {
      if (doc && doc->tags(d).empty()) r.untagged_dimensions.push_back(UntaggedDimension{id, d});
    }
  }

  const auto threshold = static_cast<std::size_t>(std::max(cfg.singleton_threshold, 0));
  auto singletons = [&](const std::string& scope, const std::vector<std::string>& members) {
    for (auto d : kAllDimensions) {
      for (const auto& e : corpus.vocabulary.entries(d)) {
        std::vector<std::string> users;
        for (const auto& id : members) {
          const auto* doc = corpus.find(id);
          if (doc && doc->has_tag(d, e.canonical)) users.push_back(id);
        }
        if (!users.empty() && users.size() <= threshold) {
          r.singleton_keywords.push_back(SingletonKeyword{scope, d, e.canonical, std::move(users)});
        }
      }
    }
  };
  singletons("all", index.universe());
  const auto groups = scenario_members(corpus, index);
  for (const auto& [scenario, members] : groups) {
    if (scenario == kNoScenario || members.size() < 2) continue;
    singletons(scenario, members);
  }

  if (cfg.similarity_floor > 0.0) {
    for (const auto& [scenario, members] : groups) {
      if (scenario == kNoScenario) continue;
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          const double s = similarity(*corpus.find(members[i]), *corpus.find(members[j]), cfg.similarity);
          if (s < cfg.similarity_floor) r.low_similarity_pairs.push_back({members[i], members[j], s});
        }
      }
    }
  }
  return r;
}

Format parse_format(std::string_view s) {
  auto key = text::fold_case(text::trim(s));
  if (key == "md" || key == "markdown") return Format::Markdown;
  if (key == "csv") return Format::Csv;
  if (key == "json") return Format::Json;
  throw Error("InvalidArgument", "unknown format '" + std::string(s) + "' (md, csv, json)");
}

std::string render(const CoverageMatrix& m, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::Markdown: {
      out << "| Scenario | Test Case |";
      for (const auto& c : m.columns) out << ' ' << md_cell(column_label(c)) << " |";
      out << "\n|---|---|";
      for (std::size_t i = 0; i < m.columns.size(); ++i) out << ":-:|";
      out << '\n';
      std::size_t row = 0;
      for (const auto& g : m.groups) {
        out << "| **" << md_cell(g.scenario) << "** | |";
        for (std::size_t i = 0; i < m.columns.size(); ++i) out << " |";
        out << '\n';
        for (const auto& id : g.test_cases) {
          out << "| | " << md_cell(id) << " |";
          for (bool cell : m.cells[row]) out << (cell ? " ✓ |" : " |");
          out << '\n';
          ++row;
        }
      }
      return out.str();
    }
    case Format::Csv: {
      out << "scenario,test_case";
      for (const auto& c : m.columns) out << ',' << csv_field(column_label(c));
      out << '\n';
      std::size_t row = 0;
      for (const auto& g : m.groups) {
        for (const auto& id : g.test_cases) {
          out << csv_field(g.scenario) << ',' << csv_field(id);
          for (bool cell : m.cells[row]) out << (cell ? ",1" : ",0");
          out << '\n';
          ++row;
        }
      }
      return out.str();
    }
    case Format::Json: {
      Json j;
      Json groups = Json::array();
      for (const auto& g : m.groups) {
        Json gj;
        gj["scenario"] = g.scenario;
        gj["test_cases"] = g.test_cases;
        groups.push_back(std::move(gj));
      }
      Json columns = Json::array();
      for (const auto& c : m.columns) {
        Json cj;
        cj["dimension"] = std::string(dimension_key(c.dimension));
        cj["keyword"] = c.keyword;
        columns.push_back(std::move(cj));
      }
      Json cells = Json::array();
      for (const auto& row : m.cells) {
        Json rj = Json::array();
        for (bool cell : row) rj.push_back(cell);
        cells.push_back(std::move(rj));
      }
      j["groups"] = std::move(groups);
      j["columns"] = std::move(columns);
      j["cells"] = std::move(cells);
      return json::dump(j);
    }
  }
  return {};
}

std::string render(const GapReport& r, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::Markdown: {
      out << "# Gap report\n\n## Unused keywords\n\n";
      bool any = false;
      for (auto d : kAllDimensions) {
        for (const auto& k : r.unused_keywords[index_of(d)]) {
          if (!any) out << "| Dimension | Keyword |\n|---|---|\n";
          any = true;
          out << "| " << dimension_key(d) << " | " << md_cell(k) << " |\n";
        }
      }
      if (!any) out << "_none_\n";

      out << "\n## Untagged dimensions\n\n";
      if (r.untagged_dimensions.empty()) out << "_none_\n";
      else out << "| Test Case | Dimension |\n|---|---|\n";
      for (const auto& u : r.untagged_dimensions) {
        out << "| " << md_cell(u.id) << " | " << dimension_key(u.dimension) << " |\n";
      }

      out << "\n## Singleton keywords (heuristic)\n\n";
      if (r.singleton_keywords.empty()) out << "_none_\n";
      else out << "| Scope | Dimension | Keyword | Test Cases |\n|---|---|---|---|\n";
      for (const auto& s : r.singleton_keywords) {
        out << "| " << md_cell(s.scope) << " | " << dimension_key(s.dimension) << " | "
            << md_cell(s.keyword) << " | " << md_cell(join(s.ids, ", ")) << " |\n";
      }

      out << "\n## Low-similarity pairs (heuristic)\n\n";
      if (r.low_similarity_pairs.empty()) out << "_none_\n";
      else out << "| Test Case A | Test Case B | Score |\n|---|---|---:|\n";
      for (const auto& p : r.low_similarity_pairs) {
        out << "| " << md_cell(p.a) << " | " << md_cell(p.b) << " | " << score_text(p.score)
            << " |\n";
      }
      return out.str();
    }
    case Format::Csv: {
      out << "finding,heuristic,scope,dimension,keyword,test_cases,score\n";
      for (auto d : kAllDimensions) {
        for (const auto& k : r.unused_keywords[index_of(d)]) {
          out << "unused_keyword,0,," << dimension_key(d) << ',' << csv_field(k) << ",,\n";
        }
      }
      for (const auto& u : r.untagged_dimensions) {
        out << "untagged_dimension,0,," << dimension_key(u.dimension) << ",," << csv_field(u.id)
            << ",\n";
      }
      for (const auto& s : r.singleton_keywords) {
        out << "singleton_keyword,1," << csv_field(s.scope) << ',' << dimension_key(s.dimension)
            << ',' << csv_field(s.keyword) << ',' << csv_field(join(s.ids, ";")) << ",\n";
      }
      for (const auto& p : r.low_similarity_pairs) {
        out << "low_similarity_pair,1,,,," << csv_field(p.a + ";" + p.b) << ','
            << score_text(p.score) << '\n';
      }
      return out.str();
    }
    case Format::Json: {
      Json j;
      j["heuristics"] = Json::array({"singleton_keywords", "low_similarity_pairs"});
      j["unused_keywords"] = json::keyword_sets_to_json(r.unused_keywords);
      Json untagged = Json::array();
      for (const auto& u : r.untagged_dimensions) {
        Json uj;
        uj["id"] = u.id;
        uj["dimension"] = std::string(dimension_key(u.dimension));
        untagged.push_back(std::move(uj));
      }
      j["untagged_dimensions"] = std::move(untagged);
      Json singles = Json::array();
      for (const auto& s : r.singleton_keywords) {
        Json sj;
        sj["scope"] = s.scope;
        sj["dimension"] = std::string(dimension_key(s.dimension));
        sj["keyword"] = s.keyword;
        sj["ids"] = s.ids;
        singles.push_back(std::move(sj));
      }
      j["singleton_keywords"] = std::move(singles);
      Json pairs = Json::array();
      for (const auto& p : r.low_similarity_pairs) {
        Json pj;
        pj["a"] = p.a;
        pj["b"] = p.b;
        pj["score"] = p.score;
        pairs.push_back(std::move(pj));
      }
      j["low_similarity_pairs"] = std::move(pairs);
      return json::dump(j);
    }
  }
  return {};
}

CoverageMatrix parse_matrix_json(std::string_view text_json) {
  CoverageMatrix m;
  try {
    auto j = nlohmann::json::parse(text_json);
    for (const auto& g : j.at("groups")) {
      m.groups.push_back(MatrixGroup{g.at("scenario").get<std::string>(),
                                     g.at("test_cases").get<std::vector<std::string>>()});
    }
    for (const auto& c : j.at("columns")) {
      m.columns.push_back(MatrixColumn{dimension_from_json(c.at("dimension")),
                                       c.at("keyword").get<std::string>()});
    }
    for (const auto& row : j.at("cells")) m.cells.push_back(row.get<std::vector<bool>>());
  } catch (const nlohmann::json::exception& e) {
    throw Error("SyntaxError", std::string("malformed matrix JSON: ") + e.what());
  }
  return m;
}

GapReport parse_gap_report_json(std::string_view text_json) {
  GapReport r;
  try {
    auto j = nlohmann::json::parse(text_json);
    for (const auto& [key, list] : j.at("unused_keywords").items()) {
      auto d = parse_dimension(key);
      if (!d) throw Error("SyntaxError", "unknown dimension '" + key + "'");
      r.unused_keywords[index_of(*d)] = list.get<std::vector<std::string>>();
    }
    for (const auto& u : j.at("untagged_dimensions")) {
      r.untagged_dimensions.push_back({u.at("id").get<std::string>(), dimension_from_json(u.at("dimension"))});
    }
    for (const auto& s : j.at("singleton_keywords")) {
      r.singleton_keywords.push_back({s.at("scope").get<std::string>(),
                                      dimension_from_json(s.at("dimension")),
                                      s.at("keyword").get<std::string>(),
                                      s.at("ids").get<std::vector<std::string>>()});
    }
    for (const auto& p : j.at("low_similarity_pairs")) {
      r.low_similarity_pairs.push_back(
          {p.at("a").get<std::string>(), p.at("b").get<std::string>(), p.at("score").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("SyntaxError", std::string("malformed gap report JSON: ") + e.what());
  }
  return r;
}

}  // namespace tcd
