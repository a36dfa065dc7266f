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

// JSON shapes shared by the profile store, the HTTP service and the C API.
// Keys are emitted in a fixed order so that output is byte-stable.

#include "json.hpp"

#include "tcdiscover/document.hpp"
#include "tcdiscover/index.hpp"
#include "tcdiscover/profiles.hpp"
#include "tcdiscover/similarity.hpp"

namespace tcd::json {

using Json = nlohmann::ordered_json;

/// {"domain": {"mode": "all", "keywords": [...]}, ...}; absent dimensions
/// are omitted.
Json filter_to_json(const FacetFilter& filter);
/// Throws Error("InvalidArgument") on shape errors; keywords are not validated.
FacetFilter filter_from_json(const nlohmann::json& j);

Json keyword_sets_to_json(const KeywordSets& sets);
Json diagnostic_to_json(const Diagnostic& d);
Json vocabulary_to_json(const KeywordVocabulary& vocab);
Json test_case_summary(const TestCaseDocument& doc);
Json test_case_to_json(const TestCaseDocument& doc);

Json profile_to_json(const TestCaseProfile& p);
TestCaseProfile profile_from_json(const nlohmann::json& j);

/// Reads weights from an object {"domain": 2, ...}; missing keys keep the
/// default of 1.
SimilarityConfig similarity_from_json(const nlohmann::json& j);

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const Json& j);

}  // namespace tcd::json
