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

#include "tcdiscover/index.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

#include "tcdiscover/error.hpp"

namespace fs = std::filesystem;

namespace tcd {
namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("IoError", "cannot read '" + p.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

using Postings = FacetedIndex::Postings;

Postings intersect(const Postings& a, const Postings& b) {
  Postings out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Postings unite(const Postings& a, const Postings& b) {
  Postings out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t intersection_size(const Postings& a, const Postings& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

class CorpusBuilder {
 public:
  explicit CorpusBuilder(Corpus& c) : corpus_(c) {}

  void add(TestCaseDocument doc) {
    auto [it, inserted] = corpus_.test_cases.try_emplace(doc.id, doc);
    if (!inserted) duplicate("test case", doc.id, it->second.source_path, doc.source_path);
  }

  void add(ScenarioDocument doc) {
    auto [it, inserted] = corpus_.scenarios.try_emplace(doc.id, doc);
    if (!inserted) duplicate("scenario", doc.id, it->second.source_path, doc.source_path);
  }

  void finish() {
    for (const auto& [id, tc] : corpus_.test_cases) {
      if (tc.scenario && !corpus_.scenarios.count(*tc.scenario)) {
        corpus_.diagnostics.push_back(Diagnostic{
            Severity::Warning, "DanglingScenario",
            "test case " + id + " references unknown scenario '" + *tc.scenario + "'",
            tc.source_path, std::nullopt, {}});
      }
    }
  }

 private:
  void duplicate(std::string_view kind, const std::string& id, const std::string& first,
                 const std::string& second) {
    corpus_.diagnostics.push_back(Diagnostic{
        Severity::Error, "DuplicateId",
        std::string(kind) + " id '" + id + "' is claimed by '" + first + "' and '" + second +
            "'; the second file is skipped",
        second, std::nullopt, {}});
  }

  Corpus& corpus_;
};

}  // namespace

const TestCaseDocument* Corpus::find(std::string_view id) const {
  auto it = test_cases.find(id);
  return it == test_cases.end() ? nullptr : &it->second;
}

std::pair<KeywordVocabulary, std::string> resolve_vocabulary(
    const fs::path& root, const std::optional<fs::path>& vocab_path) {
  if (vocab_path) return {load_vocabulary_file(vocab_path->string()), vocab_path->string()};
  std::error_code ec;
  if (auto local = root / "vocabulary.tcv"; fs::is_regular_file(local, ec)) {
    return {load_vocabulary_file(local.string()), local.string()};
  }
  if (const char* env = std::getenv(kVocabularyEnv); env && *env) {
    return {load_vocabulary_file(env), env};
  }
  return {default_vocabulary(), "<built-in>"};
}

Corpus load_corpus(const fs::path& root, const std::optional<fs::path>& vocab_path) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error("IoError", "corpus root '" + root.string() + "' is not a readable directory");
  }
  Corpus corpus;
  std::tie(corpus.vocabulary, corpus.vocabulary_source) = resolve_vocabulary(root, vocab_path);

  std::vector<fs::path> files;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw Error("IoError", "cannot list '" + root.string() + "': " + ec.message());
  for (const auto& entry : it) {
    if (!entry.is_regular_file(ec)) continue;
    auto name = entry.path().filename().string();
    if (ends_with(name, ".tc.md") || ends_with(name, ".fs.md")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });

  CorpusBuilder builder(corpus);
  for (const auto& file : files) {
    const auto path = file.generic_string();
    const auto source = read_file(file);
    if (ends_with(path, ".tc.md")) {
      auto result = parse_test_case(source, corpus.vocabulary, path);
      corpus.diagnostics.insert(corpus.diagnostics.end(), result.diagnostics.begin(),
                                result.diagnostics.end());
      if (result.document) builder.add(std::move(*result.document));
    } else {
      auto result = parse_scenario(source, path);
      corpus.diagnostics.insert(corpus.diagnostics.end(), result.diagnostics.begin(),
                                result.diagnostics.end());
      if (result.document) builder.add(std::move(*result.document));
    }
  }
  builder.finish();
  return corpus;
}

Corpus make_corpus(KeywordVocabulary vocab, std::vector<TestCaseDocument> test_cases,
                   std::vector<ScenarioDocument> scenarios) {
  Corpus corpus;
  corpus.vocabulary = std::move(vocab);
  corpus.vocabulary_source = "<memory>";
  CorpusBuilder builder(corpus);
  for (auto& s : scenarios) builder.add(std::move(s));
  for (auto& t : test_cases) builder.add(std::move(t));
  builder.finish();
  return corpus;
}

std::string_view match_mode_name(MatchMode m) { return m == MatchMode::All ? "all" : "any"; }

std::optional<MatchMode> parse_match_mode(std::string_view s) {
  auto key = text::fold_case(text::trim(s));
  if (key == "all") return MatchMode::All;
  if (key == "any") return MatchMode::Any;
  return std::nullopt;
}

bool FacetFilter::empty() const {
  return std::none_of(selections.begin(), selections.end(),
                      [](const auto& s) { return s && !s->keywords.empty(); });
}

FacetFilter& FacetFilter::add(Dimension d, std::string keyword) {
  auto& sel = selections[index_of(d)];
  if (!sel) sel = Selection{};
  sel->keywords.push_back(std::move(keyword));
  return *this;
}

FacetFilter& FacetFilter::set_mode(Dimension d, MatchMode mode) {
  auto& sel = selections[index_of(d)];
  if (!sel) sel = Selection{};
  sel->mode = mode;
  return *this;
}

FacetFilter validate_filter(const KeywordVocabulary& vocab, const FacetFilter& filter) {
  FacetFilter out;
  for (auto d : kAllDimensions) {
    const auto& sel = filter.at(d);
    if (!sel || sel->keywords.empty()) continue;
    Selection clean{sel->mode, {}};
    for (const auto& raw : sel->keywords) {
      auto match = vocab.canonicalize(d, raw);
      if (!match) {
        std::string msg = "unknown " + std::string(dimension_key(d)) + " keyword '" + raw + "'";
        if (!match.suggestions.empty()) msg += "; did you mean '" + match.suggestions.front() + "'?";
        throw Error("UnknownKeyword", msg, match.suggestions);
      }
      const auto& canonical = match.entry->canonical;
      if (std::find(clean.keywords.begin(), clean.keywords.end(), canonical) ==
          clean.keywords.end()) {
        clean.keywords.push_back(canonical);
      }
    }
    out.selections[index_of(d)] = std::move(clean);
  }
  return out;
}

FacetedIndex::FacetedIndex(const Corpus& corpus) {
  // Corpus maps are already in natural order, so DocIds ascend with it.
  ids_.reserve(corpus.test_cases.size());
  for (const auto& [id, doc] : corpus.test_cases) {
    const auto doc_id = static_cast<DocId>(ids_.size());
    ids_.push_back(id);
    for (auto d : kAllDimensions) {
      for (const auto& k : doc.tags(d)) postings_[index_of(d)][k].push_back(doc_id);
    }
  }
  for (auto d : kAllDimensions) {
    for (const auto& e : corpus.vocabulary.entries(d)) keywords_[index_of(d)].push_back(e.canonical);
  }
}

const Postings* FacetedIndex::find(Dimension d, std::string_view keyword) const {
  const auto& m = postings_[index_of(d)];
  auto it = m.find(keyword);
  return it == m.end() ? nullptr : &it->second;
}

std::vector<std::string> FacetedIndex::names(const Postings& p) const {
  std::vector<std::string> out;
  out.reserve(p.size());
  for (auto id : p) out.push_back(ids_[id]);
  return out;
}

std::vector<std::string> FacetedIndex::posting(Dimension d, std::string_view keyword) const {
  const auto* p = find(d, keyword);
  return p ? names(*p) : std::vector<std::string>{};
}

std::map<std::string, std::vector<std::string>> FacetedIndex::postings(Dimension d) const {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [k, p] : postings_[index_of(d)]) out.emplace(k, names(p));
  return out;
}

Postings FacetedIndex::match(const FacetFilter& filter) const {
  Postings result(ids_.size());
  for (DocId i = 0; i < result.size(); ++i) result[i] = i;
  static const Postings kNone;
  for (auto d : kAllDimensions) {
    const auto& sel = filter.at(d);
    if (!sel || sel->keywords.empty()) continue;
    if (sel->mode == MatchMode::All) {
      for (const auto& k : sel->keywords) {
        const auto* p = find(d, k);
        result = intersect(result, p ? *p : kNone);
      }
    } else {
      Postings any;
      for (const auto& k : sel->keywords) {
        if (const auto* p = find(d, k)) any = unite(any, *p);
      }
      result = intersect(result, any);
    }
    if (result.empty()) break;
  }
  return result;
}

std::vector<std::string> FacetedIndex::query(const FacetFilter& filter) const {
  return names(match(filter));
}

std::array<std::vector<std::pair<std::string, std::size_t>>, kDimensionCount>
FacetedIndex::facet_counts(const FacetFilter& filter) const {
  const auto current = match(filter);
  std::array<std::vector<std::pair<std::string, std::size_t>>, kDimensionCount> out;
  for (auto d : kAllDimensions) {
    for (const auto& k : keywords_[index_of(d)]) {
      const auto* p = find(d, k);
      out[index_of(d)].emplace_back(k, p ? intersection_size(current, *p) : 0);
    }
  }
  return out;
}

std::string FacetedIndex::to_cache_json() const {
  nlohmann::ordered_json j;
  j["universe"] = ids_;
  auto& postings = j["postings"];
  postings = nlohmann::ordered_json::object();
  for (auto d : kAllDimensions) {
    auto& dim = postings[std::string(dimension_key(d))];
    dim = nlohmann::ordered_json::object();
    // Vocabulary order first, then any keyword outside the vocabulary.
    for (const auto& k : keywords_[index_of(d)]) {
      if (const auto* p = find(d, k)) dim[k] = names(*p);
    }
    for (const auto& [k, p] : postings_[index_of(d)]) {
      if (!dim.contains(k)) dim[k] = names(p);
    }
  }
  return j.dump(2) + "\n";
}

IndexCache parse_index_cache(std::string_view json) {
  IndexCache cache;
  try {
    auto j = nlohmann::json::parse(json);
    cache.universe = j.at("universe").get<std::vector<std::string>>();
    for (const auto& [key, dim] : j.at("postings").items()) {
      auto d = parse_dimension(key);
      if (!d) throw Error("SyntaxError", "unknown dimension '" + key + "' in index cache");
      for (const auto& [k, ids] : dim.items()) {
        cache.postings[index_of(*d)][k] = ids.get<std::vector<std::string>>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("SyntaxError", std::string("malformed index cache: ") + e.what());
  }
  return cache;
}

QuerySession::QuerySession(std::shared_ptr<const FacetedIndex> index, KeywordVocabulary vocab)
    : index_(std::move(index)), vocab_(std::move(vocab)) {
  frames_.push_back(Frame{FacetFilter{}, index_->universe(), std::chrono::system_clock::now()});
}

const QuerySession::Frame& QuerySession::refine(const FacetFilter& delta) {
  auto clean = validate_filter(vocab_, delta);
  FacetFilter merged = top().filter;
  for (auto d : kAllDimensions) {
    const auto& add = clean.at(d);
    if (!add) continue;
    const auto& have = merged.at(d);
    if (add->mode != MatchMode::All || (have && have->mode != MatchMode::All)) {
      throw Error("InvalidRefinement", "refinement may only add keywords with mode 'all' (" +
                                           std::string(dimension_key(d)) + ")");
    }
    for (const auto& k : add->keywords) {
      if (!have || std::find(have->keywords.begin(), have->keywords.end(), k) == have->keywords.end()) {
        merged.add(d, k);
      }
    }
  }
  auto results = index_->query(merged);
  frames_.push_back(Frame{std::move(merged), std::move(results), std::chrono::system_clock::now()});
  return frames_.back();
}

bool QuerySession::undo() {
  if (frames_.size() <= 1) return false;
  frames_.pop_back();
  return true;
}

}  // namespace tcd
