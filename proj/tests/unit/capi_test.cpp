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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <string>

#include "json.hpp"
#include "support/test_support.hpp"
#include "tcdiscover/tcdiscover.h"

namespace {

using nlohmann::json;

// Owns a tcd-allocated string.
struct Out {
  char* p = nullptr;
  ~Out() { tcd_free(p); }
  std::string str() const { return p ? p : ""; }
  json parsed() const { return json::parse(str()); }
};

class CorpusHandle {
 public:
  explicit CorpusHandle(const std::string& root, const char* profiles = nullptr) {
    status_ = tcd_corpus_open(root.c_str(), nullptr, profiles, &c_);
  }
  ~CorpusHandle() { tcd_corpus_close(c_); }
  tcd_corpus* get() const { return c_; }
  tcd_status status() const { return status_; }

 private:
  tcd_corpus* c_ = nullptr;
  tcd_status status_;
};

const std::string kFixture = tcd::testing::fixture_root().string();

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(tcd_version(), "0.1.0");
  EXPECT_STREQ(tcd_status_name(TCD_OK), "ok");
  EXPECT_STREQ(tcd_status_name(TCD_E_UNKNOWN_KEYWORD), "unknown keyword");
}

TEST(CApi, OpenAndSummarize) {
  CorpusHandle c(kFixture);
  ASSERT_EQ(c.status(), TCD_OK);
  Out out;
  ASSERT_EQ(tcd_corpus_summary(c.get(), &out.p), TCD_OK);
  auto j = out.parsed();
  EXPECT_EQ(j["test_cases"], 25);
  EXPECT_EQ(j["scenarios"], 7);
  EXPECT_EQ(j["errors"], 0);
}

TEST(CApi, MissingCorpusIsIoError) {
  CorpusHandle c("/nonexistent/corpus");
  EXPECT_EQ(c.status(), TCD_E_IO);
  EXPECT_EQ(c.get(), nullptr);
  EXPECT_STREQ(tcd_last_error_code(), "IoError");
  EXPECT_GT(std::strlen(tcd_last_error()), 0u);
}

TEST(CApi, QueryAndErrors) {
  CorpusHandle c(kFixture);
  Out out;
  const char* filter = R"({"domain": {"mode": "all", "keywords": ["Control", "ICT"]},
                           "components": {"mode": "all", "keywords": ["Control Devices / IED"]},
                           "phenomenon": {"mode": "all", "keywords": ["Package Loss"]}})";
  ASSERT_EQ(tcd_query(c.get(), filter, 0, &out.p), TCD_OK);
  EXPECT_EQ(out.parsed()["ids"], json::parse(R"(["TC17","TC23","TC24","TC25"])"));

  Out all;
  ASSERT_EQ(tcd_query(c.get(), nullptr, 1, &all.p), TCD_OK);
  EXPECT_EQ(all.parsed()["ids"].size(), 25u);
  EXPECT_TRUE(all.parsed().contains("facet_counts"));

  Out bad;
  EXPECT_EQ(tcd_query(c.get(), R"({"phenomenon": {"mode": "all", "keywords": ["Enrgy Balance"]}})", 0, &bad.p),
            TCD_E_UNKNOWN_KEYWORD);
  EXPECT_EQ(bad.p, nullptr);
  auto err = json::parse(tcd_last_error_json());
  EXPECT_EQ(err["code"], "UnknownKeyword");
  EXPECT_EQ(err["suggestions"][0], "Energy Balance");

  Out garbage;
  EXPECT_EQ(tcd_query(c.get(), "{", 0, &garbage.p), TCD_E_INVALID_ARGUMENT);
  EXPECT_EQ(tcd_query(nullptr, nullptr, 0, &garbage.p), TCD_E_INVALID_ARGUMENT);
  EXPECT_EQ(tcd_query(c.get(), nullptr, 0, nullptr), TCD_E_INVALID_ARGUMENT);
}

TEST(CApi, LastErrorClearsOnSuccess) {
  CorpusHandle c(kFixture);
  Out a, b;
  EXPECT_NE(tcd_testcase(c.get(), "TC99", &a.p), TCD_OK);
  EXPECT_STREQ(tcd_last_error_code(), "UnknownId");
  EXPECT_EQ(tcd_testcase(c.get(), "TC1", &b.p), TCD_OK);
  EXPECT_STREQ(tcd_last_error_code(), "");
}

TEST(CApi, SimilarMatrixGaps) {
  CorpusHandle c(kFixture);
  Out sim, zero, weighted, bad_weight;
  ASSERT_EQ(tcd_similar(c.get(), "TC24", 3, nullptr, &sim.p), TCD_OK);
  EXPECT_EQ(sim.parsed()["neighbors"].size(), 3u);
  ASSERT_EQ(tcd_similar(c.get(), "TC24", 0, nullptr, &zero.p), TCD_OK);
  EXPECT_EQ(zero.parsed(), json::parse(R"({"neighbors": []})"));
  ASSERT_EQ(tcd_similar(c.get(), "TC24", 3, R"({"domain": 2})", &weighted.p), TCD_OK);
  EXPECT_EQ(tcd_similar(c.get(), "TC24", 3, R"({"domain": -1})", &bad_weight.p), TCD_E_INVALID_CONFIG);
  EXPECT_EQ(tcd_similar(c.get(), "TC99", 3, nullptr, &bad_weight.p), TCD_E_UNKNOWN_ID);

  Out m, csv, scoped;
  ASSERT_EQ(tcd_matrix(c.get(), nullptr, "json", &m.p), TCD_OK);
  EXPECT_EQ(m.parsed()["cells"].size(), 25u);
  ASSERT_EQ(tcd_matrix(c.get(), R"({"scope": "fs:FS03", "full_columns": true, "dimensions": ["components"]})",
                       "csv", &csv.p),
            TCD_OK);
  const auto csv_text = csv.str();
  EXPECT_EQ(std::count(csv_text.begin(), csv_text.end(), '\n'), 4);
  EXPECT_EQ(tcd_matrix(c.get(), R"({"scope": "fs:FS99"})", "md", &scoped.p), TCD_E_UNKNOWN_SCOPE);
  EXPECT_EQ(tcd_matrix(c.get(), nullptr, "pdf", &scoped.p), TCD_E_INVALID_ARGUMENT);

  Out g;
  int findings = -1;
  ASSERT_EQ(tcd_gaps(c.get(), R"({"singleton_threshold": 1})", "json", &g.p, &findings), TCD_OK);
  EXPECT_EQ(findings, 1);
  EXPECT_TRUE(g.parsed().contains("unused_keywords"));
}

TEST(CApi, ProfilesPersistAndResolve) {
  tcd::testing::TempDir dir;
  tcd::testing::copy_fixtures(dir.path());
  const auto store = (dir.path() / "custom.tcp.json").string();
  {
    CorpusHandle c(dir.path().string(), store.c_str());
    ASSERT_EQ(c.status(), TCD_OK);
    Out added, dup, members, bench, list;
    const char* profile = R"({"name": "beginner", "description": "",
                              "selector": {"phenomenon": {"mode": "all", "keywords": ["packet loss"]}}})";
    ASSERT_EQ(tcd_profile_add(c.get(), profile, &added.p), TCD_OK);
    EXPECT_EQ(added.parsed()["selector"]["phenomenon"]["keywords"][0], "Package Loss");
    EXPECT_EQ(tcd_profile_add(c.get(), profile, &dup.p), TCD_E_DUPLICATE);
    ASSERT_EQ(tcd_profile_members(c.get(), "beginner", &members.p), TCD_OK);
    EXPECT_FALSE(members.parsed()["ids"].empty());
    ASSERT_EQ(tcd_benchmark_requirements(c.get(), "beginner", &bench.p), TCD_OK);
    EXPECT_EQ(bench.parsed()["members"], members.parsed()["ids"]);
    EXPECT_EQ(tcd_profile_members(c.get(), "nobody", &list.p), TCD_E_UNKNOWN_PROFILE);
  }
  CorpusHandle reopened(dir.path().string(), store.c_str());
  Out list;
  ASSERT_EQ(tcd_profiles(reopened.get(), &list.p), TCD_OK);
  EXPECT_EQ(list.parsed()["profiles"].size(), 1u);
}

TEST(CApi, Capabilities) {
  CorpusHandle c(kFixture);
  Out out, bad;
  ASSERT_EQ(tcd_capabilities(c.get(), R"({"components": [], "domains": ["ICT"]})", &out.p), TCD_OK);
  for (const auto& m : out.parsed()["matches"]) EXPECT_EQ(m["executable"].get<bool>(), m["missing"].empty());
  EXPECT_EQ(tcd_capabilities(c.get(), R"({"components": ["Flux Capacitor"]})", &bad.p), TCD_E_UNKNOWN_KEYWORD);
}

TEST(CApi, VocabularyHandle) {
  tcd_vocabulary* v = nullptr;
  ASSERT_EQ(tcd_vocabulary_open(nullptr, nullptr, &v), TCD_OK);
  Out j, t, hit, miss;
  ASSERT_EQ(tcd_vocabulary_json(v, &j.p), TCD_OK);
  ASSERT_EQ(tcd_vocabulary_text(v, &t.p), TCD_OK);
  EXPECT_NE(t.str().find("[components]"), std::string::npos);
  ASSERT_EQ(tcd_vocabulary_lookup(v, "packet loss", &hit.p), TCD_OK);
  EXPECT_EQ(hit.parsed()["matches"][0]["canonical"], "Package Loss");
  EXPECT_EQ(hit.parsed()["matches"][0]["via_alias"], true);
  ASSERT_EQ(tcd_vocabulary_lookup(v, "Enrgy Balance", &miss.p), TCD_OK);
  EXPECT_TRUE(miss.parsed()["matches"].empty());
  tcd_vocabulary_close(v);

  tcd_vocabulary* missing = nullptr;
  EXPECT_EQ(tcd_vocabulary_open(nullptr, "/nonexistent.tcv", &missing), TCD_E_IO);
}

TEST(CApi, Lint) {
  const std::string root = kFixture;
  const char* paths[] = {root.c_str()};
  Out out;
  size_t errors = 99;
  ASSERT_EQ(tcd_lint(paths, 1, nullptr, &out.p, &errors), TCD_OK);
  EXPECT_EQ(errors, 0u);
  EXPECT_EQ(out.parsed()["warnings"], 0);

  tcd::testing::TempDir dir;
  const auto bad = dir.path() / "TC1.tc.md";
  tcd::testing::write_file(bad, "---\nid: TC1\ntitle: x\ndomain: Nowhere\n---\n");
  const std::string bad_path = bad.string();
  const char* bad_paths[] = {bad_path.c_str()};
  Out bad_out;
  ASSERT_EQ(tcd_lint(bad_paths, 1, nullptr, &bad_out.p, &errors), TCD_OK);
  EXPECT_GE(errors, 1u);
}

TEST(CApi, FreeAcceptsNull) { tcd_free(nullptr); }

}  // namespace
