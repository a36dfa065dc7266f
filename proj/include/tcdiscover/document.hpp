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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcdiscover/vocabulary.hpp"

namespace tcd {

enum class Severity { Error, Warning };

std::string_view severity_name(Severity s);

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::string path;
  std::optional<int> line;
  std::vector<std::string> suggestions;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Sorts by (line, code); diagnostics without a line come first.
void sort_diagnostics(std::vector<Diagnostic>& diags);

bool has_errors(const std::vector<Diagnostic>& diags);

struct Section {
  std::string heading;
  std::string body;

  friend bool operator==(const Section&, const Section&) = default;
};

/// Per-dimension canonical keywords, in tag order, unique within a dimension.
using KeywordSets = std::array<std::vector<std::string>, kDimensionCount>;

struct TestCaseDocument {
  std::string id;
  std::string title;
  std::optional<std::string> scenario;
  KeywordSets keywords;
  std::vector<Section> sections;
  std::string source_path;

  const std::vector<std::string>& tags(Dimension d) const { return keywords[index_of(d)]; }
  bool has_tag(Dimension d, std::string_view keyword) const;

  /// Equality ignoring source_path.
  bool same_content(const TestCaseDocument& other) const;
};

struct ScenarioDocument {
  std::string id;
  std::string title;
  std::vector<Section> sections;
  std::string source_path;

  bool same_content(const ScenarioDocument& other) const;
};

template <class Doc>
struct ParseResult {
  std::optional<Doc> document;
  std::vector<Diagnostic> diagnostics;
};

/// Headings a test case is expected to carry (matched case-insensitively).
inline constexpr std::array<std::string_view, 6> kRecommendedTestCaseSections = {
    "Narrative", "Test Objective", "System under Test", "Object under Investigation",
    "Functions under Test", "Test Criteria"};

/// Headings of a functional scenario document.
inline constexpr std::array<std::string_view, 6> kScenarioSections = {
    "System Description", "Motivation", "Use Case", "Test Case", "Experiment Setup", "Relevance"};

/// Parses and lints a `.tc.md` document. A document is returned iff no
/// diagnostic has Error severity. Keywords are stored in canonical form.
ParseResult<TestCaseDocument> parse_test_case(std::string_view source,
                                              const KeywordVocabulary& vocab,
                                              std::string_view path = {});

ParseResult<ScenarioDocument> parse_scenario(std::string_view source, std::string_view path = {});

std::string serialize_test_case(const TestCaseDocument& doc);
std::string serialize_scenario(const ScenarioDocument& doc);

}  // namespace tcd
