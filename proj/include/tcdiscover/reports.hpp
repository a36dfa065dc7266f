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

#include <string>
#include <string_view>
#include <vector>

#include "tcdiscover/index.hpp"
#include "tcdiscover/profiles.hpp"
#include "tcdiscover/similarity.hpp"

namespace tcd {

/// Group label for test cases without a scenario (U+2014, an em dash).
inline constexpr std::string_view kNoScenario = "\xE2\x80\x94";

struct Scope {
  enum class Kind { All, Scenario, Profile };
  Kind kind = Kind::All;
  std::string name;

  /// "all", "fs:ID" or "profile:NAME". Throws Error("UnknownScope").
  static Scope parse(std::string_view s);
  std::string to_string() const;
};

struct MatrixGroup {
  std::string scenario;
  std::vector<std::string> test_cases;

  friend bool operator==(const MatrixGroup&, const MatrixGroup&) = default;
};

struct MatrixColumn {
  Dimension dimension;
  std::string keyword;

  friend bool operator==(const MatrixColumn&, const MatrixColumn&) = default;
};

/// Boolean test-case x keyword table. Rows follow the group order, then the
/// order of test cases within each group.
struct CoverageMatrix {
  std::vector<MatrixGroup> groups;
  std::vector<MatrixColumn> columns;
  std::vector<std::vector<bool>> cells;

  std::vector<std::string> row_ids() const;

  friend bool operator==(const CoverageMatrix&, const CoverageMatrix&) = default;
};

struct MatrixOptions {
  Scope scope;
  std::vector<Dimension> dimensions;  // empty: all four
  bool full_columns = false;
};

/// Throws Error("UnknownScope") when the scenario or profile does not exist.
CoverageMatrix coverage_matrix(const Corpus& corpus, const FacetedIndex& index,
                               const MatrixOptions& options,
                               const std::vector<TestCaseProfile>& profiles = {});

struct UntaggedDimension {
  std::string id;
  Dimension dimension;

  friend bool operator==(const UntaggedDimension&, const UntaggedDimension&) = default;
};

/// A keyword used by at least one and at most `threshold` test cases within a
/// scope ("all" or a scenario id).
struct SingletonKeyword {
  std::string scope;
  Dimension dimension;
  std::string keyword;
  std::vector<std::string> ids;

  friend bool operator==(const SingletonKeyword&, const SingletonKeyword&) = default;
};

struct LowSimilarityPair {
  std::string a;
  std::string b;
  double score = 0.0;

  friend bool operator==(const LowSimilarityPair&, const LowSimilarityPair&) = default;
};

struct GapConfig {
  int singleton_threshold = 1;
  double similarity_floor = 0.0;  // 0 disables the pair check
  SimilarityConfig similarity;
};

struct GapReport {
  KeywordSets unused_keywords;  // vocabulary order
  std::vector<UntaggedDimension> untagged_dimensions;
  std::vector<SingletonKeyword> singleton_keywords;
  std::vector<LowSimilarityPair> low_similarity_pairs;

  bool has_findings() const;

  friend bool operator==(const GapReport&, const GapReport&) = default;
};

/// Singleton keywords are reported for the whole corpus (scope "all") and
/// for each scenario with at least two test cases. Low-similarity pairs are
/// same-scenario pairs scoring below the floor.
GapReport gap_report(const Corpus& corpus, const FacetedIndex& index, const GapConfig& cfg = {});

enum class Format { Markdown, Csv, Json };

/// "md", "csv" or "json". Throws Error("InvalidArgument").
Format parse_format(std::string_view s);

std::string render(const CoverageMatrix& matrix, Format format);
std::string render(const GapReport& report, Format format);

/// Inverses of the JSON renderings.
CoverageMatrix parse_matrix_json(std::string_view json);
GapReport parse_gap_report_json(std::string_view json);

}  // namespace tcd
