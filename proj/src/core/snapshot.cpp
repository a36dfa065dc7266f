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

#include "tcdiscover/snapshot.hpp"

#include "tcdiscover/error.hpp"
#include "tcdiscover/json_io.hpp"

namespace tcd {

using json::Json;

std::shared_ptr<const Snapshot> Snapshot::load(const SnapshotOptions& options) {
  auto s = std::make_shared<Snapshot>();
  s->options = options;
  s->corpus = load_corpus(options.root, options.vocabulary);
  s->index = std::make_shared<const FacetedIndex>(s->corpus);
  s->profiles_path = (options.profiles ? *options.profiles : options.root / "profiles.tcp.json").string();
  s->profiles = load_profiles(s->profiles_path, s->corpus.vocabulary);
  return s;
}

std::shared_ptr<const Snapshot> Snapshot::with_profiles(std::vector<TestCaseProfile> p) const {
  auto s = std::make_shared<Snapshot>(*this);
  s->profiles = std::move(p);
  return s;
}

const TestCaseProfile& Snapshot::profile(std::string_view name) const {
  const auto* p = find_profile(profiles, name);
  if (!p) throw Error("UnknownProfile", "unknown profile '" + std::string(name) + "'");
  return *p;
}

namespace views {

std::string query(const Snapshot& s, const FacetFilter& filter, bool with_facet_counts) {
  const auto clean = validate_filter(s.corpus.vocabulary, filter);
  Json j;
  j["ids"] = s.index->query(clean);
  if (with_facet_counts) {
    auto counts = s.index->facet_counts(clean);
    Json cj = Json::object();
    for (auto d : kAllDimensions) {
      Json dim = Json::object();
      for (const auto& [k, n] : counts[index_of(d)]) dim[k] = n;
      cj[std::string(dimension_key(d))] = std::move(dim);
    }
    j["facet_counts"] = std::move(cj);
  }
  return json::dump(j);
}

std::string similar(const Snapshot& s, std::string_view id, std::size_t k,
                    const SimilarityConfig& cfg) {
  Json list = Json::array();
  for (const auto& n : neighbors(*s.index, s.corpus, id, k, cfg)) {
    Json nj;
    nj["id"] = n.id;
    nj["score"] = n.score;
    list.push_back(std::move(nj));
  }
  Json j;
  j["neighbors"] = std::move(list);
  return json::dump(j);
}

std::string matrix(const Snapshot& s, const MatrixOptions& options, Format format) {
  return render(coverage_matrix(s.corpus, *s.index, options, s.profiles), format);
}

std::string gaps(const Snapshot& s, const GapConfig& cfg, Format format) {
  return render(gap_report(s.corpus, *s.index, cfg), format);
}

std::string vocabulary(const KeywordVocabulary& vocab) {
  return json::dump(json::vocabulary_to_json(vocab));
}

std::string keyword(const KeywordVocabulary& vocab, std::string_view raw) {
  Json matches = Json::array();
  Json suggestions = Json::object();
  for (auto d : kAllDimensions) {
    auto m = vocab.canonicalize(d, raw);
    if (m) {
      Json mj;
      mj["dimension"] = std::string(dimension_key(d));
      mj["canonical"] = m.entry->canonical;
      mj["definition"] = m.entry->definition;
      mj["aliases"] = m.entry->aliases;
      mj["via_alias"] = m.via_alias;
      matches.push_back(std::move(mj));
    } else if (!m.suggestions.empty()) {
      suggestions[std::string(dimension_key(d))] = m.suggestions;
    }
  }
  Json j;
  j["query"] = std::string(raw);
  j["matches"] = std::move(matches);
  j["suggestions"] = std::move(suggestions);
  return json::dump(j);
}

std::string test_cases(const Snapshot& s) {
  Json list = Json::array();
  for (const auto& id : s.index->universe()) list.push_back(json::test_case_summary(*s.corpus.find(id)));
  Json j;
  j["testcases"] = std::move(list);
  return json::dump(j);
}

std::string test_case(const Snapshot& s, std::string_view id) {
  const auto* doc = s.corpus.find(id);
  if (!doc) throw Error("UnknownId", "unknown test case '" + std::string(id) + "'");
  return json::dump(json::test_case_to_json(*doc));
}

std::string profiles(const Snapshot& s) {
  Json list = Json::array();
  for (const auto& p : s.profiles) list.push_back(json::profile_to_json(p));
  Json j;
  j["profiles"] = std::move(list);
  return json::dump(j);
}

std::string profile_members(const Snapshot& s, std::string_view name) {
  const auto& p = s.profile(name);
  Json j;
  j["name"] = p.name;
  j["ids"] = tcd::profile_members(p, *s.index);
  return json::dump(j);
}

std::string benchmark_requirements(const Snapshot& s, std::string_view name) {
  const auto& p = s.profile(name);
  Json j;
  j["name"] = p.name;
  j["members"] = tcd::profile_members(p, *s.index);
  j["requirements"] = json::keyword_sets_to_json(tcd::benchmark_requirements(p, s.corpus, *s.index));
  return json::dump(j);
}

std::string capabilities(const Snapshot& s, const CapabilitySet& cap) {
  const auto clean = validate_capabilities(s.corpus.vocabulary, cap);
  Json list = Json::array();
  for (const auto& m : capability_match(clean, s.corpus)) {
    Json mj;
    mj["id"] = m.id;
    mj["executable"] = m.executable;
    mj["missing"] = m.missing;
    list.push_back(std::move(mj));
  }
  Json j;
  j["matches"] = std::move(list);
  return json::dump(j);
}

std::string diagnostics(const std::vector<Diagnostic>& diags) {
  Json list = Json::array();
  std::size_t errors = 0, warnings = 0;
  for (const auto& d : diags) {
    (d.severity == Severity::Error ? errors : warnings) += 1;
    list.push_back(json::diagnostic_to_json(d));
  }
  Json j;
  j["errors"] = errors;
  j["warnings"] = warnings;
  j["diagnostics"] = std::move(list);
  return json::dump(j);
}

std::string corpus_summary(const Snapshot& s) {
  std::size_t errors = 0;
  for (const auto& d : s.corpus.diagnostics) errors += d.severity == Severity::Error;
  Json j;
  j["root"] = s.options.root.generic_string();
  j["vocabulary"] = s.corpus.vocabulary_source;
  j["test_cases"] = s.corpus.test_cases.size();
  j["scenarios"] = s.corpus.scenarios.size();
  j["profiles"] = s.profiles.size();
  j["errors"] = errors;
  j["diagnostics"] = s.corpus.diagnostics.size();
  return json::dump(j);
}

}  // namespace views
}  // namespace tcd
