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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Runs against the bundled fixture corpus and seeded random corpora.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "support/test_support.hpp"
#include "tcdiscover/error.hpp"
#include "tcdiscover/profiles.hpp"
#include "tcdiscover/reports.hpp"
#include "tcdiscover/service.hpp"
#include "tcdiscover/similarity.hpp"

namespace {

using namespace tcd;
using D = Dimension;
using Ids = std::vector<std::string>;

struct Failure {
  std::string detail;
};

void expect(bool ok, const std::string& detail) {
  if (!ok) throw Failure{detail};
}

std::string join(const Ids& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? ", " : "") + ids[i];
  return out + "}";
}

bool subset(const Ids& small, const Ids& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end(), text::NaturalLess{});
}

const Corpus& fixture() {
  static const Corpus c = load_corpus(testing::fixture_root());
  return c;
}

FacetFilter step_one() {
  FacetFilter f;
  f.add(D::DomainUnderInvestigation, "Control").add(D::DomainUnderInvestigation, "ICT");
  f.add(D::TestSystemComponents, "Control Devices / IED");
  f.add(D::TestedPhenomenon, "Package Loss");
  return f;
}

FacetFilter step_two_delta() {
  FacetFilter f;
  f.add(D::TestedPhenomenon, "Energy Balance");
  f.add(D::TypeOfAssessment, "Communication Performance");
  return f;
}

// ---- criteria -----------------------------------------------------------------

void beginner_walkthrough() {
  const auto start = std::chrono::steady_clock::now();
  const auto corpus = load_corpus(testing::fixture_root());
  auto index = std::make_shared<const FacetedIndex>(corpus);
  const Ids first = index->query(step_one());
  auto combined = step_one();
  combined.add(D::TestedPhenomenon, "Energy Balance").add(D::TypeOfAssessment, "Communication Performance");
  const Ids second = index->query(combined);

  QuerySession session(index, corpus.vocabulary);
  const Ids s1 = session.refine(step_one()).results;
  const Ids s2 = session.refine(step_two_delta()).results;
  const auto elapsed = std::chrono::steady_clock::now() - start;

  const Ids want1 = {"TC17", "TC23", "TC24", "TC25"}, want2 = {"TC24"};
  expect(corpus.test_cases.size() == 25, "fixture has " + std::to_string(corpus.test_cases.size()) + " test cases");
  expect(first == want1, "step 1 returned " + join(first));
  expect(second == want2, "step 2 returned " + join(second));
  expect(s1 == want1 && s2 == want2, "session refinement returned " + join(s1) + " then " + join(s2));
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  expect(ms < 1000, "took " + std::to_string(ms) + " ms");
}

void scenario_matrix_structure() {
  FacetedIndex index(fixture());
  const auto m = coverage_matrix(fixture(), index, {});
  std::size_t fs02 = m.groups.size(), fs03 = m.groups.size();
  for (std::size_t i = 0; i < m.groups.size(); ++i) {
    if (m.groups[i].scenario == "FS02") fs02 = i;
    if (m.groups[i].scenario == "FS03") fs03 = i;
  }
  expect(fs02 < m.groups.size() && fs03 < m.groups.size(), "FS02 or FS03 group missing");
  expect(fs02 < fs03, "FS02 does not precede FS03");
  expect(m.groups[fs02].test_cases == Ids{"TC1"}, "FS02 holds " + join(m.groups[fs02].test_cases));
  expect(m.groups[fs03].test_cases == (Ids{"TC11", "TC12", "TC13"}), "FS03 holds " + join(m.groups[fs03].test_cases));

  const auto rows = m.row_ids();
  std::size_t checked = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto* doc = fixture().find(rows[r]);
    for (std::size_t c = 0; c < m.columns.size(); ++c) {
      const auto& tags = doc->tags(m.columns[c].dimension);
      const bool direct = std::find(tags.begin(), tags.end(), m.columns[c].keyword) != tags.end();
      expect(m.cells[r][c] == direct, "cell " + rows[r] + " x " + m.columns[c].keyword);
      checked += m.cells[r][c];
    }
  }
  const auto md = render(m, Format::Markdown);
  std::size_t ticks = 0;
  for (auto pos = md.find("✓"); pos != std::string::npos; pos = md.find("✓", pos + 1)) ++ticks;
  expect(ticks == checked, "markdown shows " + std::to_string(ticks) + " ticks for " + std::to_string(checked) +
                               " true cells");
  expect(md.find("| **FS02** |") < md.find("| **FS03** |"), "markdown group rows out of order");
}

void vocabulary_fidelity() {
  const auto& v = default_vocabulary();
  const std::size_t want[] = {7, 22, 19, 18};
  for (auto d : kAllDimensions) {
    expect(v.size(d) == want[index_of(d)], std::string(dimension_key(d)) + " has " + std::to_string(v.size(d)));
  }
  const auto m = v.canonicalize(D::TestedPhenomenon, "Packet Loss");
  expect(m && m.entry->canonical == "Package Loss" && m.via_alias, "Packet Loss does not resolve to Package Loss");
}

void index_oracle_equivalence() {
  testing::Rng rng(20240601);
  std::size_t queries = 0, any_mode = 0, all_mode = 0;
  for (int round = 0; round < 200; ++round) {
    const auto docs = testing::random_test_cases(rng, default_vocabulary(), 10);
    expect(docs.size() <= 10, "generator produced more than 10 test cases");
    const auto corpus = make_corpus(default_vocabulary(), docs);
    FacetedIndex index(corpus);
    for (int q = 0; q < 25; ++q) {
      const auto f = testing::random_filter(rng, default_vocabulary());
      for (const auto& s : f.selections) {
        if (s && !s->keywords.empty()) (s->mode == MatchMode::Any ? any_mode : all_mode)++;
      }
      const auto got = index.query(f), want = testing::oracle::query(docs, f);
      expect(got == want, "corpus " + std::to_string(round) + ": index " + join(got) + " vs scan " + join(want));
      ++queries;
    }
  }
  expect(any_mode > 0 && all_mode > 0, "generator did not exercise both modes");
  std::cout << "      " << queries << " queries, " << all_mode << " All / " << any_mode << " Any selections\n";
}

void narrowing_monotonicity() {
  testing::Rng rng(4242);
  for (int chain = 0; chain < 500; ++chain) {
    const auto docs = testing::random_test_cases(rng, default_vocabulary());
    auto index = std::make_shared<const FacetedIndex>(make_corpus(default_vocabulary(), docs));
    QuerySession session(index, default_vocabulary());
    const std::size_t steps = 1 + testing::pick(rng, 6);
    for (std::size_t step = 0; step < steps; ++step) {
      const Ids before = session.top().results;
      session.refine(testing::random_filter(rng, default_vocabulary(), 6, 0.0));
      expect(subset(session.top().results, before),
             "chain " + std::to_string(chain) + " grew from " + join(before) + " to " + join(session.top().results));
    }
  }
}

void similarity_properties() {
  testing::Rng rng(777);
  std::uniform_real_distribution<double> weight(0.0, 4.0), factor(0.001, 1000.0);
  for (int round = 0; round < 200; ++round) {
    const auto docs = testing::random_test_cases(rng, default_vocabulary());
    std::array<double, kDimensionCount> w{};
    for (auto& x : w) x = testing::coin(rng, 0.2) ? 0.0 : weight(rng);
    if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) w[0] = 1.0;
    SimilarityConfig cfg, scaled;
    cfg.weights = w;
    const double k = factor(rng);
    for (std::size_t i = 0; i < kDimensionCount; ++i) scaled.weights[i] = w[i] * k;
    for (const auto& a : docs) {
      bool tagged = false;
      for (std::size_t i = 0; i < kDimensionCount; ++i) tagged = tagged || (w[i] > 0 && !a.keywords[i].empty());
      if (tagged) expect(similarity(a, a, cfg) == 1.0, "self-similarity of " + a.id + " below 1");
      for (const auto& b : docs) {
        const double s = similarity(a, b, cfg);
        expect(s >= 0.0 && s <= 1.0, "score out of range");
        expect(s == similarity(b, a, cfg), "asymmetric score for " + a.id + ", " + b.id);
        expect(std::abs(s - similarity(a, b, scaled)) <= 1e-12, "weight scaling changed a score");
        expect(std::abs(s - testing::oracle::similarity_of(a, b, w)) <= 1e-12, "oracle disagrees");
        if (tagged) expect(s <= similarity(a, a, cfg), "self is not maximal");
      }
    }
  }
}

void round_trips() {
  for (const auto& [id, doc] : fixture().test_cases) {
    auto again = parse_test_case(serialize_test_case(doc), fixture().vocabulary);
    expect(again.document && again.document->same_content(doc), "test case " + id + " changed");
  }
  for (const auto& [id, doc] : fixture().scenarios) {
    auto again = parse_scenario(serialize_scenario(doc));
    expect(again.document && again.document->same_content(doc), "scenario " + id + " changed");
  }
  const auto& v = default_vocabulary();
  expect(parse_vocabulary(serialize_vocabulary(v)) == v, "default vocabulary changed");
  expect(parse_vocabulary(default_vocabulary_text()) == v, "bundled vocabulary text differs");

  testing::Rng rng(99);
  testing::TempDir dir;
  const auto store = (dir.path() / "profiles.tcp.json").string();
  for (int round = 0; round < 50; ++round) {
    std::vector<TestCaseProfile> ps;
    for (std::size_t i = 0, n = testing::pick(rng, 5); i < n; ++i) {
      TestCaseProfile p;
      p.name = "profile_" + std::to_string(i);
      p.description = testing::coin(rng) ? "" : "round \"" + std::to_string(round) + "\"";
      p.selector = testing::random_filter(rng, v);
      if (testing::coin(rng, 0.3)) p.pinned_ids = {"TC1", "TC24"};
      ps.push_back(std::move(p));
    }
    ps = validate_profiles(v, ps);
    save_profiles(ps, store);
    expect(load_profiles(store, v) == ps, "profile store changed in round " + std::to_string(round));
  }

  FacetedIndex index(fixture());
  for (const char* scope : {"all", "fs:FS03", "fs:FS07"}) {
    for (bool full : {false, true}) {
      MatrixOptions o;
      o.scope = Scope::parse(scope);
      o.full_columns = full;
      const auto m = coverage_matrix(fixture(), index, o);
      expect(parse_matrix_json(render(m, Format::Json)) == m, std::string("matrix ") + scope + " changed");
    }
  }
  GapConfig cfg;
  cfg.singleton_threshold = 2;
  cfg.similarity_floor = 0.35;
  const auto g = gap_report(fixture(), index, cfg);
  expect(parse_gap_report_json(render(g, Format::Json)) == g, "gap report changed");
}

void capability_and_benchmark_properties() {
  testing::Rng rng(31337);
  const auto& v = default_vocabulary();
  const auto& comps = v.entries(D::TestSystemComponents);
  for (int round = 0; round < 300; ++round) {
    const auto docs = testing::random_test_cases(rng, v, 10, 8);
    const auto corpus = make_corpus(v, docs);
    FacetedIndex index(corpus);

    CapabilitySet small, large;
    for (std::size_t i = 0; i < 8; ++i) {
      const bool in_small = testing::coin(rng, 0.4);
      if (in_small) small.components.push_back(comps[i].canonical);
      if (in_small || testing::coin(rng, 0.5)) large.components.push_back(comps[i].canonical);
    }
    const auto a = capability_match(small, corpus), b = capability_match(large, corpus);
    expect(a.size() == b.size(), "capability lists differ in length");
    for (std::size_t i = 0; i < a.size(); ++i) {
      expect(!a[i].executable || b[i].executable, a[i].id + " lost executability when capabilities grew");
    }

    TestCaseProfile narrow, wide;
    narrow.name = "narrow";
    narrow.selector = testing::random_filter(rng, v, 6, 0.0);
    wide.name = "wide";
    wide.selector = narrow.selector;
    for (auto& s : wide.selector.selections) {
      if (s && testing::coin(rng)) s->mode = MatchMode::Any;
    }
    const auto mn = profile_members(narrow, index), mw = profile_members(wide, index);
    expect(subset(mn, mw), "membership did not grow");
    const auto rn = benchmark_requirements(narrow, corpus, index), rw = benchmark_requirements(wide, corpus, index);
    for (std::size_t d = 0; d < kDimensionCount; ++d) {
      std::set<std::string> want;
      for (const auto& id : mn) want.insert(corpus.find(id)->keywords[d].begin(), corpus.find(id)->keywords[d].end());
      expect(testing::oracle::as_set(rn[d]) == want && rn[d].size() == want.size(), "union differs from members");
      const auto sn = testing::oracle::as_set(rn[d]), sw = testing::oracle::as_set(rw[d]);
      expect(std::includes(sw.begin(), sw.end(), sn.begin(), sn.end()), "union shrank as membership grew");
    }
  }
}

// ---- API/CLI parity -------------------------------------------------------------

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

std::string run_cli(const std::vector<std::string>& args) {
  std::string cmd = quote(TCD_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  expect(pipe != nullptr, "cannot run " + cmd);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, "CLI failed: " + cmd);
  return out;
}

void api_cli_parity() {
  const std::string root = testing::fixture_root().string();
  ServiceOptions options;
  options.snapshot.root = root;
  Service service(options);
  const int port = service.bind("127.0.0.1", 0);
  std::thread server([&] { service.run(); });
  struct Stop {
    Service& s;
    std::thread& t;
    ~Stop() {
      s.stop();
      t.join();
    }
  } stop{service, server};

  httplib::Client client("127.0.0.1", port);
  for (int i = 0; i < 300 && !client.Get("/api/vocabulary"); ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  auto body = [&](httplib::Result r, const std::string& what) {
    expect(static_cast<bool>(r), what + ": no response");
    expect(r->status == 200, what + ": HTTP " + std::to_string(r->status));
    return r->body;
  };
  auto same = [&](const std::string& api, const std::string& cli, const std::string& what) {
    expect(!api.empty() && api == cli, what + " differs between API and CLI");
  };

  const std::vector<std::string> selector = {"-d", "Control", "-d", "ICT", "-c", "Control Devices / IED",
                                             "-p", "Package Loss"};
  const std::string filter = R"({"domain": {"mode": "all", "keywords": ["Control", "ICT"]},
    "components": {"mode": "all", "keywords": ["Control Devices / IED"]},
    "phenomenon": {"mode": "all", "keywords": ["Package Loss"]}})";
  auto cli = [&](std::vector<std::string> head, const std::vector<std::string>& tail = {}) {
    head.insert(head.begin() + 1, {"--corpus", root});
    head.insert(head.end(), tail.begin(), tail.end());
    return run_cli(head);
  };

  std::vector<std::string> q = {"query"};
  q.insert(q.end(), selector.begin(), selector.end());
  same(body(client.Post("/api/query", R"({"filter": )" + filter + "}", "application/json"), "query"),
       cli(q, {"--format", "json"}), "query");
  same(body(client.Post("/api/query", R"({"with_facet_counts": true, "filter": )" + filter + "}",
                        "application/json"),
            "query with counts"),
       cli(q, {"--facet-counts", "--format", "json"}), "query with facet counts");
  std::vector<std::string> any = {"query", "-p", "Package Loss", "-p", "Voltage Stability", "--any-within",
                                  "phenomenon"};
  same(body(client.Post("/api/query",
                        R"({"filter": {"phenomenon": {"mode": "any", "keywords": ["Package Loss", "Voltage Stability"]}}})",
                        "application/json"),
            "any query"),
       cli(any, {"--format", "json"}), "any-mode query");

  same(body(client.Get("/api/similar/TC24?k=3"), "similar"), cli({"similar", "TC24", "-k", "3", "--format", "json"}),
       "similar");
  same(body(client.Get("/api/similar/TC24?k=0"), "similar k=0"),
       cli({"similar", "TC24", "-k", "0", "--format", "json"}), "similar k=0");
  same(body(client.Get("/api/similar/TC11?k=30&domain=2&components=0.5"), "weighted similar"),
       cli({"similar", "TC11", "-k", "30", "--weight", "domain=2", "--weight", "components=0.5", "--format", "json"}),
       "weighted similar");

  same(body(client.Get("/api/matrix?format=json"), "matrix"), cli({"matrix", "--format", "json"}), "matrix");
  same(body(client.Get("/api/matrix?scope=fs:FS03&format=json&full_columns=true&dimension=components"),
            "scoped matrix"),
       cli({"matrix", "--scope", "fs:FS03", "--full-columns", "--dimension", "components", "--format", "json"}),
       "scoped matrix");

  same(body(client.Get("/api/gaps"), "gaps"), cli({"gaps", "--format", "json"}), "gaps");
  same(body(client.Get("/api/gaps?singleton_threshold=2&similarity_floor=0.3"), "tuned gaps"),
       cli({"gaps", "--singleton-threshold", "2", "--similarity-floor", "0.3", "--format", "json"}), "tuned gaps");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
      {"beginner walkthrough: 4 then 1 results, under 1 s", beginner_walkthrough},
      {"scenario coverage matrix structure", scenario_matrix_structure},
      {"vocabulary fidelity: 7/22/19/18 and Packet Loss alias", vocabulary_fidelity},
      {"index oracle equivalence on 200 random corpora", index_oracle_equivalence},
      {"narrowing monotonicity over 500 All-mode chains", narrowing_monotonicity},
      {"similarity properties", similarity_properties},
      {"round trips: documents, vocabulary, profiles, report JSON", round_trips},
      {"capability and benchmark properties", capability_and_benchmark_properties},
      {"API/CLI parity for query, similar, matrix, gaps", api_cli_parity},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    std::ostringstream detail;
    bool ok = false;
    try {
      run();
      ok = true;
    } catch (const Failure& f) {
      detail << f.detail;
    } catch (const tcd::Error& e) {
      detail << e.code() << ": " << e.what();
    } catch (const std::exception& e) {
      detail << e.what();
    }
    std::cout << (ok ? "PASS  " : "FAIL  ") << name;
    if (!ok) std::cout << "  (" << detail.str() << ")";
    std::cout << std::endl;
    failed += !ok;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
