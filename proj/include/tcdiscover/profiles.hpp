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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcdiscover/document.hpp"
#include "tcdiscover/index.hpp"

namespace tcd {

/// A named keyword selector. Membership is whatever the selector matches in
/// the current corpus; pinned_ids is an optional archival snapshot.
struct TestCaseProfile {
  std::string name;
  std::string description;
  FacetFilter selector;
  std::vector<std::string> pinned_ids;

  friend bool operator==(const TestCaseProfile&, const TestCaseProfile&) = default;
};

/// Equipment a laboratory can provide. Without domains, every test case is
/// considered; with domains, only test cases sharing one of them.
struct CapabilitySet {
  std::vector<std::string> components;
  std::optional<std::vector<std::string>> domains;
};

struct CapabilityMatch {
  std::string id;
  bool executable = false;
  std::vector<std::string> missing;  // component tags the capability lacks, in tag order

  friend bool operator==(const CapabilityMatch&, const CapabilityMatch&) = default;
};

std::vector<std::string> profile_members(const TestCaseProfile& profile,
                                         const FacetedIndex& index);

/// Union of member keywords per dimension, in vocabulary order. The
/// components union is what a benchmark network must provide.
KeywordSets benchmark_requirements(const TestCaseProfile& profile, const Corpus& corpus,
                                   const FacetedIndex& index);

/// Canonicalizes the set against the vocabulary; throws UnknownKeyword.
CapabilitySet validate_capabilities(const KeywordVocabulary& vocab, const CapabilitySet& cap);

/// One entry per considered test case in natural id order; executable iff
/// its components are a subset of cap.components.
std::vector<CapabilityMatch> capability_match(const CapabilitySet& cap, const Corpus& corpus);

/// Validates names (token pattern, unique) and selectors. Keywords are
/// canonicalized. Throws DuplicateProfile, BadName or UnknownKeyword.
std::vector<TestCaseProfile> validate_profiles(const KeywordVocabulary& vocab,
                                               std::vector<TestCaseProfile> profiles);

/// `.tcp.json` text form.
std::vector<TestCaseProfile> parse_profiles(std::string_view json, const KeywordVocabulary& vocab);
std::string serialize_profiles(const std::vector<TestCaseProfile>& profiles);

/// A missing file loads as an empty list. Throws IoError on unreadable files.
std::vector<TestCaseProfile> load_profiles(const std::string& path, const KeywordVocabulary& vocab);
void save_profiles(const std::vector<TestCaseProfile>& profiles, const std::string& path);

const TestCaseProfile* find_profile(const std::vector<TestCaseProfile>& profiles,
                                    std::string_view name);

}  // namespace tcd
