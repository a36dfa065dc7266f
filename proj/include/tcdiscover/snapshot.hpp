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

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcdiscover/index.hpp"
#include "tcdiscover/profiles.hpp"
#include "tcdiscover/reports.hpp"
#include "tcdiscover/similarity.hpp"

namespace tcd {

struct SnapshotOptions {
  std::filesystem::path root;
  std::optional<std::filesystem::path> vocabulary;
  std::optional<std::filesystem::path> profiles;  // default: <root>/profiles.tcp.json
};

/// Everything a request needs, loaded from disk at one point in time.
/// Immutable once built; reloads construct a new snapshot.
struct Snapshot {
  SnapshotOptions options;
  Corpus corpus;
  std::shared_ptr<const FacetedIndex> index;
  std::vector<TestCaseProfile> profiles;
  std::string profiles_path;

  static std::shared_ptr<const Snapshot> load(const SnapshotOptions& options);

  /// Copy of this snapshot with a different profile list (index shared).
  std::shared_ptr<const Snapshot> with_profiles(std::vector<TestCaseProfile> profiles) const;

  const TestCaseProfile& profile(std::string_view name) const;  // throws UnknownProfile
};

/// JSON responses shared by the C API (and therefore the CLI) and the HTTP
/// service, so both produce byte-identical bodies for the same inputs.
namespace views {

std::string query(const Snapshot& s, const FacetFilter& filter, bool with_facet_counts);
std::string similar(const Snapshot& s, std::string_view id, std::size_t k,
                    const SimilarityConfig& cfg);
std::string matrix(const Snapshot& s, const MatrixOptions& options, Format format);
std::string gaps(const Snapshot& s, const GapConfig& cfg, Format format);

std::string vocabulary(const KeywordVocabulary& vocab);
std::string keyword(const KeywordVocabulary& vocab, std::string_view raw);
std::string test_cases(const Snapshot& s);
std::string test_case(const Snapshot& s, std::string_view id);  // throws UnknownId
std::string profiles(const Snapshot& s);
std::string profile_members(const Snapshot& s, std::string_view name);
std::string benchmark_requirements(const Snapshot& s, std::string_view name);
std::string capabilities(const Snapshot& s, const CapabilitySet& cap);
std::string diagnostics(const std::vector<Diagnostic>& diags);
std::string corpus_summary(const Snapshot& s);

}  // namespace views
}  // namespace tcd
