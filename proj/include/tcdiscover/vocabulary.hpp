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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tcd {

/// The four facet axes of a test case profile. Declaration order is the
/// display and serialization order everywhere in the library.
enum class Dimension {
  DomainUnderInvestigation = 0,
  TestedPhenomenon = 1,
  TypeOfAssessment = 2,
  TestSystemComponents = 3,
};

inline constexpr std::size_t kDimensionCount = 4;
inline constexpr std::array<Dimension, kDimensionCount> kAllDimensions = {
    Dimension::DomainUnderInvestigation, Dimension::TestedPhenomenon,
    Dimension::TypeOfAssessment, Dimension::TestSystemComponents};

constexpr std::size_t index_of(Dimension d) { return static_cast<std::size_t>(d); }

/// Short key used in files, JSON and the CLI: "domain", "phenomenon",
/// "assessment", "components".
std::string_view dimension_key(Dimension d);

/// Human-readable label, e.g. "Domain under Investigation".
std::string_view dimension_label(Dimension d);

/// Accepts the short key or the enumerator name, case-insensitively.
std::optional<Dimension> parse_dimension(std::string_view s);

struct KeywordEntry {
  std::string canonical;
  std::string definition;
  std::vector<std::string> aliases;

  friend bool operator==(const KeywordEntry&, const KeywordEntry&) = default;
};

/// Result of resolving free text against one dimension.
struct KeywordMatch {
  const KeywordEntry* entry = nullptr;  // null when not found
  bool via_alias = false;
  std::vector<std::string> suggestions;  // filled only when entry is null

  explicit operator bool() const { return entry != nullptr; }
};

/// Maximum edit distance for "did you mean" suggestions.
inline constexpr std::size_t kSuggestionRadius = 2;

/// Immutable four-dimension controlled vocabulary.
class KeywordVocabulary {
 public:
  /// Validates and builds. Throws tcd::Error with code EmptyDimension,
  /// DuplicateKeyword or InvalidKeyword.
  explicit KeywordVocabulary(std::array<std::vector<KeywordEntry>, kDimensionCount> entries);

  const std::vector<KeywordEntry>& entries(Dimension d) const { return entries_[index_of(d)]; }
  std::size_t size(Dimension d) const { return entries(d).size(); }

  /// Matches canonical names first, then aliases, after whitespace
  /// normalization and case folding. On a miss, suggestions are canonical
  /// names within kSuggestionRadius, sorted by (distance, name).
  KeywordMatch canonicalize(Dimension d, std::string_view raw) const;

  /// Position of a canonical keyword in its dimension, if present.
  std::optional<std::size_t> position(Dimension d, std::string_view canonical) const;

  friend bool operator==(const KeywordVocabulary& a, const KeywordVocabulary& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::array<std::vector<KeywordEntry>, kDimensionCount> entries_;
  // match key -> entry position; separate maps for canonical and alias forms
  std::array<std::unordered_map<std::string, std::size_t>, kDimensionCount> canonical_lookup_;
  std::array<std::unordered_map<std::string, std::size_t>, kDimensionCount> alias_lookup_;
};

/// Parses the `.tcv` line format. Throws tcd::Error with code SyntaxError,
/// MissingDimension, EmptyDimension or DuplicateKeyword; line() carries the
/// offending line number.
KeywordVocabulary parse_vocabulary(std::string_view source);

/// Emits the `.tcv` form; parse_vocabulary(serialize_vocabulary(v)) == v.
std::string serialize_vocabulary(const KeywordVocabulary& vocab);

/// The bundled default vocabulary text and its parsed form.
std::string_view default_vocabulary_text();
const KeywordVocabulary& default_vocabulary();

KeywordVocabulary load_vocabulary_file(const std::string& path);

}  // namespace tcd
