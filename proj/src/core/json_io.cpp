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

#include "tcdiscover/json_io.hpp"

#include "tcdiscover/error.hpp"

namespace tcd::json {
namespace {

std::vector<std::string> string_list(const nlohmann::json& j, std::string_view what) {
  if (!j.is_array()) throw Error("InvalidArgument", std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw Error("InvalidArgument", std::string(what) + " must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

Json filter_to_json(const FacetFilter& filter) {
  Json j = Json::object();
  for (auto d : kAllDimensions) {
    const auto& sel = filter.at(d);
    if (!sel) continue;
    Json s;
    s["mode"] = std::string(match_mode_name(sel->mode));
    s["keywords"] = sel->keywords;
    j[std::string(dimension_key(d))] = std::move(s);
  }
  return j;
}

FacetFilter filter_from_json(const nlohmann::json& j) {
  FacetFilter filter;
  if (j.is_null()) return filter;
  if (!j.is_object()) throw Error("InvalidArgument", "selector must be an object");
  for (const auto& [key, value] : j.items()) {
    auto d = parse_dimension(key);
    if (!d) throw Error("InvalidArgument", "unknown dimension '" + key + "'");
    Selection sel;
    if (value.is_array()) {
      sel.keywords = string_list(value, "keywords");
    } else if (value.is_object()) {
      if (auto m = value.find("mode"); m != value.end()) {
        auto mode = m->is_string() ? parse_match_mode(m->get<std::string>()) : std::nullopt;
        if (!mode) throw Error("InvalidArgument", "mode must be \"all\" or \"any\"");
        sel.mode = *mode;
      }
      if (auto k = value.find("keywords"); k != value.end()) {
        sel.keywords = string_list(*k, "keywords");
      }
    } else {
      throw Error("InvalidArgument", "selection for '" + key + "' must be an object");
    }
    filter.selections[index_of(*d)] = std::move(sel);
  }
  return filter;
}

Json keyword_sets_to_json(const KeywordSets& sets) {
  Json j = Json::object();
  for (auto d : kAllDimensions) j[std::string(dimension_key(d))] = sets[index_of(d)];
  return j;
}

Json diagnostic_to_json(const Diagnostic& d) {
  Json j;
  j["severity"] = std::string(severity_name(d.severity));
  j["code"] = d.code;
  j["message"] = d.message;
  j["path"] = d.path;
  j["line"] = d.line ? Json(*d.line) : Json(nullptr);
  if (!d.suggestions.empty()) j["suggestions"] = d.suggestions;
  return j;
}

Json vocabulary_to_json(const KeywordVocabulary& vocab) {
  Json j = Json::object();
  for (auto d : kAllDimensions) {
    Json list = Json::array();
    for (const auto& e : vocab.entries(d)) {
      Json entry;
      entry["canonical"] = e.canonical;
      entry["definition"] = e.definition;
      entry["aliases"] = e.aliases;
      list.push_back(std::move(entry));
    }
    Json dim;
    dim["label"] = std::string(dimension_label(d));
    dim["keywords"] = std::move(list);
    j[std::string(dimension_key(d))] = std::move(dim);
  }
  return j;
}

Json test_case_summary(const TestCaseDocument& doc) {
  Json j;
  j["id"] = doc.id;
  j["title"] = doc.title;
  j["scenario"] = doc.scenario ? Json(*doc.scenario) : Json(nullptr);
  j["keywords"] = keyword_sets_to_json(doc.keywords);
  return j;
}

Json test_case_to_json(const TestCaseDocument& doc) {
  Json j = test_case_summary(doc);
  Json sections = Json::array();
  for (const auto& s : doc.sections) {
    Json sj;
    sj["heading"] = s.heading;
    sj["body"] = s.body;
    sections.push_back(std::move(sj));
  }
  j["sections"] = std::move(sections);
  j["source_path"] = doc.source_path;
  return j;
}

Json profile_to_json(const TestCaseProfile& p) {
  Json j;
  j["name"] = p.name;
  j["description"] = p.description;
  j["selector"] = filter_to_json(p.selector);
  if (!p.pinned_ids.empty()) j["pinned_ids"] = p.pinned_ids;
  return j;
}

TestCaseProfile profile_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("InvalidArgument", "profile must be an object");
  TestCaseProfile p;
  auto name = j.find("name");
  if (name == j.end() || !name->is_string()) {
    throw Error("InvalidArgument", "profile needs a string \"name\"");
  }
  p.name = name->get<std::string>();
  if (auto d = j.find("description"); d != j.end()) {
    if (!d->is_string()) throw Error("InvalidArgument", "description must be a string");
    p.description = d->get<std::string>();
  }
  if (auto s = j.find("selector"); s != j.end()) p.selector = filter_from_json(*s);
  if (auto pins = j.find("pinned_ids"); pins != j.end()) p.pinned_ids = string_list(*pins, "pinned_ids");
  return p;
}

SimilarityConfig similarity_from_json(const nlohmann::json& j) {
  SimilarityConfig cfg;
  if (j.is_null()) return cfg;
  if (!j.is_object()) throw Error("InvalidConfig", "weights must be an object");
  for (const auto& [key, value] : j.items()) {
    auto d = parse_dimension(key);
    if (!d) throw Error("InvalidConfig", "unknown dimension '" + key + "'");
    if (!value.is_number()) throw Error("InvalidConfig", "weight for '" + key + "' must be a number");
    cfg.weights[index_of(*d)] = value.get<double>();
  }
  return cfg;
}

std::string dump(const Json& j) {
  return j.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

}  // namespace tcd::json
