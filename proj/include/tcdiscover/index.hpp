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

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcdiscover/document.hpp"
#include "tcdiscover/text.hpp"
#include "tcdiscover/vocabulary.hpp"

namespace tcd {

/// A loaded corpus directory. Only Error-free documents are kept; all
/// diagnostics (including those of rejected files) are retained.
struct Corpus {
  KeywordVocabulary vocabulary = default_vocabulary();
  std::map<std::string, TestCaseDocument, text::NaturalLess> test_cases;
  std::map<std::string, ScenarioDocument, text::NaturalLess> scenarios;
  std::vector<Diagnostic> diagnostics;
  std::string vocabulary_source;  // file path, or "<built-in>"

  const TestCaseDocument* find(std::string_view id) const;
};

/// Environment variable naming a fallback vocabulary file.
inline constexpr const char* kVocabularyEnv = "TC_DISCOVER_VOCAB";

/// Vocabulary precedence: explicit path, `<root>/vocabulary.tcv`,
/// $TC_DISCOVER_VOCAB, built-in default. Returns the vocabulary and the
/// path it came from.
std::pair<KeywordVocabulary, std::string> resolve_vocabulary(
    const std::filesystem::path& root, const std::optional<std::filesystem::path>& vocab_path);

/// Parses every `*.tc.md` and `*.fs.md` below root in lexicographic path
/// order. Throws Error("IoError") when root cannot be read.
Corpus load_corpus(const std::filesystem::path& root,
                   const std::optional<std::filesystem::path>& vocab_path = std::nullopt);

/// Builds a corpus from already-parsed documents, applying the same id
/// collision and scenario-reference checks as load_corpus.
Corpus make_corpus(KeywordVocabulary vocab, std::vector<TestCaseDocument> test_cases,
                   std::vector<ScenarioDocument> scenarios = {});

enum class MatchMode { All, Any };

std::string_view match_mode_name(MatchMode m);
std::optional<MatchMode> parse_match_mode(std::string_view s);

struct Selection {
  MatchMode mode = MatchMode::All;
  std::vector<std::string> keywords;

  friend bool operator==(const Selection&, const Selection&) = default;
};

/// Per-dimension keyword selection. Dimensions combine conjunctively.
struct FacetFilter {
  std::array<std::optional<Selection>, kDimensionCount> selections;

  bool empty() const;
  const std::optional<Selection>& at(Dimension d) const { return selections[index_of(d)]; }
  /// Appends a keyword to dimension d, creating an All selection if absent.
  FacetFilter& add(Dimension d, std::string keyword);
  FacetFilter& set_mode(Dimension d, MatchMode mode);

  friend bool operator==(const FacetFilter&, const FacetFilter&) = default;
};

/// Canonicalizes every keyword of the filter, dropping empty selections and
/// duplicate keywords. Throws Error("UnknownKeyword") with suggestions.
FacetFilter validate_filter(const KeywordVocabulary& vocab, const FacetFilter& filter);

/// Immutable four-dimension inverted index over the Error-free test cases.
class FacetedIndex {
 public:
  using DocId = std::uint32_t;
  using Postings = std::vector<DocId>;  // ascending, i.e. natural id order

  explicit FacetedIndex(const Corpus& corpus);

  /// All indexed ids in natural order.
  const std::vector<std::string>& universe() const { return ids_; }

  /// Ids carrying keyword k in dimension d (empty for unknown keywords).
  std::vector<std::string> posting(Dimension d, std::string_view keyword) const;

  /// Keyword -> ids for one dimension; only keywords with at least one id.
  std::map<std::string, std::vector<std::string>> postings(Dimension d) const;

  /// Vocabulary order of dimension d.
  const std::vector<std::string>& keywords(Dimension d) const { return keywords_[index_of(d)]; }

  /// Matching ids in natural order. Keywords are expected in canonical form;
  /// unknown keywords behave like empty postings.
  std::vector<std::string> query(const FacetFilter& filter) const;

  /// For each (d, k): |query(filter) ∩ postings[d][k]|, i.e. the result size
  /// when k is additionally required in d. Keywords in vocabulary order,
  /// zero counts included.
  std::array<std::vector<std::pair<std::string, std::size_t>>, kDimensionCount> facet_counts(
      const FacetFilter& filter) const;

  /// {"universe": [...], "postings": {"domain": {kw: [...]}, ...}}
  std::string to_cache_json() const;

 private:
  Postings match(const FacetFilter& filter) const;
  const Postings* find(Dimension d, std::string_view keyword) const;
  std::vector<std::string> names(const Postings& p) const;

  std::vector<std::string> ids_;
  std::array<std::vector<std::string>, kDimensionCount> keywords_;
  std::array<std::map<std::string, Postings, std::less<>>, kDimensionCount> postings_;
};

/// Parses the cache JSON back into universe and postings form.
struct IndexCache {
  std::vector<std::string> universe;
  std::array<std::map<std::string, std::vector<std::string>>, kDimensionCount> postings;

  friend bool operator==(const IndexCache&, const IndexCache&) = default;
};
IndexCache parse_index_cache(std::string_view json);

/// Iterative narrowing: a stack of filters and their result sets, the
/// bottom frame being the empty filter.
class QuerySession {
 public:
  struct Frame {
    FacetFilter filter;
    std::vector<std::string> results;
    std::chrono::system_clock::time_point timestamp;
  };

  QuerySession(std::shared_ptr<const FacetedIndex> index, KeywordVocabulary vocab);

  const Frame& top() const { return frames_.back(); }
  const std::vector<Frame>& frames() const { return frames_; }
  std::size_t depth() const { return frames_.size(); }

  /// Merges delta (mode All additions only) into the top filter and pushes
  /// the result. Throws UnknownKeyword, or InvalidRefinement when delta
  /// would loosen the filter.
  const Frame& refine(const FacetFilter& delta);

  /// Pops the top frame; the bottom frame is never removed.
  bool undo();

 private:
  std::shared_ptr<const FacetedIndex> index_;
  KeywordVocabulary vocab_;
  std::vector<Frame> frames_;
};

}  // namespace tcd
