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

#include "tcdiscover/profiles.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "tcdiscover/error.hpp"
#include "tcdiscover/json_io.hpp"
#include "tcdiscover/text.hpp"

namespace tcd {
namespace {

bool contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::vector<std::string> canonical_list(const KeywordVocabulary& vocab, Dimension d,
                                        const std::vector<std::string>& raw) {
  FacetFilter f;
  for (const auto& k : raw) f.add(d, k);
  auto clean = validate_filter(vocab, f);
  return clean.at(d) ? clean.at(d)->keywords : std::vector<std::string>{};
}

}  // namespace

std::vector<std::string> profile_members(const TestCaseProfile& profile,
                                         const FacetedIndex& index) {
  return index.query(profile.selector);
}

KeywordSets benchmark_requirements(const TestCaseProfile& profile, const Corpus& corpus,
                                   const FacetedIndex& index) {
  std::array<std::set<std::string>, kDimensionCount> used;
  for (const auto& id : profile_members(profile, index)) {
    const auto* doc = corpus.find(id);
    if (!doc) continue;
    for (auto d : kAllDimensions) used[index_of(d)].insert(doc->tags(d).begin(), doc->tags(d).end());
  }
  KeywordSets out;
  for (auto d : kAllDimensions) {
    auto& set = used[index_of(d)];
    for (const auto& e : corpus.vocabulary.entries(d)) {
      if (set.erase(e.canonical)) out[index_of(d)].push_back(e.canonical);
    }
    // Anything left is outside the vocabulary; keep it, sorted.
    out[index_of(d)].insert(out[index_of(d)].end(), set.begin(), set.end());
  }
  return out;
}

CapabilitySet validate_capabilities(const KeywordVocabulary& vocab, const CapabilitySet& cap) {
  CapabilitySet out;
  out.components = canonical_list(vocab, Dimension::TestSystemComponents, cap.components);
  if (cap.domains) out.domains = canonical_list(vocab, Dimension::DomainUnderInvestigation, *cap.domains);
  return out;
}

std::vector<CapabilityMatch> capability_match(const CapabilitySet& cap, const Corpus& corpus) {
  std::vector<CapabilityMatch> out;
  for (const auto& [id, doc] : corpus.test_cases) {
    if (cap.domains) {
      const auto& dom = doc.tags(Dimension::DomainUnderInvestigation);
      bool shared = std::any_of(dom.begin(), dom.end(),
                                [&](const std::string& k) { return contains(*cap.domains, k); });
      if (!shared) continue;
    }
    CapabilityMatch m{id, true, {}};
    for (const auto& k : doc.tags(Dimension::TestSystemComponents)) {
      if (!contains(cap.components, k)) m.missing.push_back(k);
    }
    m.executable = m.missing.empty();
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<TestCaseProfile> validate_profiles(const KeywordVocabulary& vocab,
                                               std::vector<TestCaseProfile> profiles) {
  std::set<std::string> names;
  for (auto& p : profiles) {
    if (!text::is_token(p.name)) {
      throw Error("BadName", "profile name '" + p.name + "' must match [A-Za-z][A-Za-z0-9_-]*");
    }
    if (!names.insert(p.name).second) {
      throw Error("DuplicateProfile", "profile '" + p.name + "' is defined more than once");
    }
    p.selector = validate_filter(vocab, p.selector);
  }
  return profiles;
}

std::vector<TestCaseProfile> parse_profiles(std::string_view text_json,
                                            const KeywordVocabulary& vocab) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text_json);
  } catch (const nlohmann::json::exception& e) {
    throw Error("SyntaxError", std::string("malformed profile store: ") + e.what());
  }
  if (!j.is_array()) throw Error("SyntaxError", "profile store must be a JSON array");
  std::vector<TestCaseProfile> profiles;
  for (const auto& item : j) profiles.push_back(json::profile_from_json(item));
  return validate_profiles(vocab, std::move(profiles));
}

std::string serialize_profiles(const std::vector<TestCaseProfile>& profiles) {
  json::Json j = json::Json::array();
  for (const auto& p : profiles) j.push_back(json::profile_to_json(p));
  return json::dump(j);
}

std::vector<TestCaseProfile> load_profiles(const std::string& path,
                                           const KeywordVocabulary& vocab) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return {};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", "cannot read profile store '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profiles(buf.str(), vocab);
}

void save_profiles(const std::vector<TestCaseProfile>& profiles, const std::string& path) {
  // Temp file plus rename: readers see either the old or the new store.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("IoError", "cannot write profile store '" + path + "'");
    out << serialize_profiles(profiles);
    if (!out) throw Error("IoError", "cannot write profile store '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("IoError", "cannot replace profile store '" + path + "': " + ec.message());
}

const TestCaseProfile* find_profile(const std::vector<TestCaseProfile>& profiles,
                                    std::string_view name) {
  for (const auto& p : profiles) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace tcd
