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

#include <cmath>
#include <limits>
#include <numeric>

#include "support/test_support.hpp"
#include "tcdiscover/error.hpp"
#include "tcdiscover/similarity.hpp"
#include "tcdiscover/text.hpp"

namespace tcd {
namespace {

using testing::oracle::similarity_of;

const Corpus& fixture() {
  static const Corpus c = load_corpus(testing::fixture_root());
  return c;
}

const TestCaseDocument& tc(const char* id) { return *fixture().find(id); }

std::array<double, kDimensionCount> random_weights(testing::Rng& rng) {
  std::array<double, kDimensionCount> w{};
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (auto& x : w) x = testing::coin(rng, 0.2) ? 0.0 : u(rng);
  if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) w[testing::pick(rng, 4)] = 1.0;
  return w;
}

SimilarityConfig config(const std::array<double, kDimensionCount>& w) {
  SimilarityConfig c;
  c.weights = w;
  return c;
}

TEST(Similarity, SelfSimilarityOfTaggedTestCase) {
  EXPECT_DOUBLE_EQ(similarity(tc("TC24"), tc("TC24")), 1.0);
  SimilarityConfig c;
  c.weights = {0.0, 5.0, 0.5, 0.0};
  EXPECT_DOUBLE_EQ(similarity(tc("TC24"), tc("TC24"), c), 1.0);
}

TEST(Similarity, DisjointTagsScoreZero) {
  TestCaseDocument a, b;
  a.keywords[0] = {"ICT"};
  b.keywords[0] = {"Market"};
  a.keywords[1] = {"Energy Balance"};
  EXPECT_EQ(similarity(a, b), 0.0);
}

TEST(Similarity, UntaggedPairIsZero) {
  TestCaseDocument a, b;
  EXPECT_EQ(similarity(a, b), 0.0);
  EXPECT_EQ(similarity(a, a), 0.0);
}

TEST(Similarity, DimensionsUntaggedOnBothSidesAreIgnored) {
  TestCaseDocument a, b;
  a.keywords[0] = {"ICT", "Control"};
  b.keywords[0] = {"ICT"};
  EXPECT_DOUBLE_EQ(similarity(a, b), 0.5);
  b.keywords[3] = {"DER Controller"};
  EXPECT_DOUBLE_EQ(similarity(a, b), 0.25);
}

TEST(Similarity, PinnedFixturePair) {
  // domain 2/3, phenomenon 2/4, assessment 0/3, components 1/4; mean of four
  const double pinned = 17.0 / 48.0;
  EXPECT_NEAR(similarity(tc("TC24"), tc("TC23")), pinned, 1e-15);
  EXPECT_NEAR(similarity_of(tc("TC24"), tc("TC23"), {1, 1, 1, 1}), pinned, 1e-15);
}

TEST(Similarity, InvalidConfigs) {
  TestCaseDocument a;
  auto code = [&](std::array<double, 4> w) {
    try {
      similarity(a, a, config(w));
    } catch (const Error& e) {
      return e.code();
    }
    return std::string("none");
  };
  EXPECT_EQ(code({0, 0, 0, 0}), "InvalidConfig");
  EXPECT_EQ(code({-1, 1, 1, 1}), "InvalidConfig");
  EXPECT_EQ(code({std::numeric_limits<double>::infinity(), 1, 1, 1}), "InvalidConfig");
  EXPECT_EQ(code({std::nan(""), 1, 1, 1}), "InvalidConfig");
  EXPECT_EQ(code({0, 0, 0, 2}), "none");
}

TEST(Similarity, SetWeightParsesAssignments) {
  SimilarityConfig c;
  c.set_weight("domain=2");
  c.set_weight("components=0.5");
  EXPECT_EQ(c.weights[0], 2.0);
  EXPECT_EQ(c.weights[3], 0.5);
  EXPECT_THROW(c.set_weight("colour=2"), Error);
  EXPECT_THROW(c.set_weight("domain=x"), Error);
  EXPECT_THROW(c.set_weight("domain"), Error);
}

TEST(Similarity, PropertiesOnRandomCorpora) {
  testing::Rng rng(77);
  for (int round = 0; round < 100; ++round) {
    auto docs = testing::random_test_cases(rng, default_vocabulary());
    const auto w = random_weights(rng);
    const auto cfg = config(w);
    auto scaled = w;
    const double factor = std::uniform_real_distribution<double>(0.01, 100.0)(rng);
    for (auto& x : scaled) x *= factor;
    for (const auto& a : docs) {
      for (const auto& b : docs) {
        const double s = similarity(a, b, cfg);
        ASSERT_GE(s, 0.0);
        ASSERT_LE(s, 1.0);
        ASSERT_EQ(s, similarity(b, a, cfg));
        ASSERT_NEAR(s, similarity_of(a, b, w), 1e-12);
        ASSERT_NEAR(s, similarity(a, b, config(scaled)), 1e-12);
      }
    }
  }
}

TEST(Neighbors, FixtureRankingMatchesExhaustiveScan) {
  FacetedIndex idx(fixture());
  auto got = neighbors(idx, fixture(), "TC24", 3);
  ASSERT_EQ(got.size(), 3u);
  std::vector<std::pair<double, std::string>> all;
  for (const auto& [id, doc] : fixture().test_cases) {
    if (id != "TC24") all.emplace_back(testing::oracle::similarity_of(tc("TC24"), doc, {1, 1, 1, 1}), id);
  }
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (i) {
      EXPECT_GE(got[i - 1].score + 1e-12, got[i].score);
    }
    // nothing outside the top three scores strictly higher than the third
    EXPECT_NEAR(got[i].score, testing::oracle::similarity_of(tc("TC24"), tc(got[i].id.c_str()), {1, 1, 1, 1}),
                1e-12);
  }
  for (const auto& [score, id] : all) {
    const bool listed = std::any_of(got.begin(), got.end(), [&](const Neighbor& n) { return n.id == id; });
    if (!listed) {
      EXPECT_LE(score, got.back().score + 1e-12) << id;
    }
  }
}

TEST(Neighbors, TiesBreakByNaturalIdOrder) {
  TestCaseDocument q, a, b, c;
  q.id = "TC1";
  a.id = "TC10";
  b.id = "TC2";
  c.id = "TC3";
  q.keywords[0] = {"ICT", "Control", "Market"};
  // each shares one of three keywords: Jaccard 1/3 computed via different sums
  a.keywords[0] = {"ICT"};
  b.keywords[0] = {"Control"};
  c.keywords[0] = {"Market", "ICT", "Control", "Thermal"};
  auto corpus = make_corpus(default_vocabulary(), {q, a, b, c});
  FacetedIndex idx(corpus);
  auto got = neighbors(idx, corpus, "TC1", 10);
  ASSERT_EQ(got.size(), 3u);
  EXPECT_EQ(got[0].id, "TC3");
  EXPECT_EQ(got[1].id, "TC2");
  EXPECT_EQ(got[2].id, "TC10");
}

// Exact rational score for unit weights: (sum of per-dimension fractions) / |D'|.
struct Fraction {
  std::int64_t num = 0, den = 1;
  Fraction operator+(const Fraction& o) const {
    Fraction r{num * o.den + o.num * den, den * o.den};
    const auto g = std::gcd(r.num, r.den);
    return {r.num / g, r.den / g};
  }
  bool operator<(const Fraction& o) const { return num * o.den < o.num * den; }
  bool operator==(const Fraction& o) const { return num * o.den == o.num * den; }
};

Fraction exact_similarity(const TestCaseDocument& a, const TestCaseDocument& b) {
  Fraction sum;
  std::int64_t dims = 0;
  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    const auto sa = testing::oracle::as_set(a.keywords[d]), sb = testing::oracle::as_set(b.keywords[d]);
    if (sa.empty() && sb.empty()) continue;
    std::int64_t inter = 0;
    for (const auto& k : sa) inter += sb.count(k);
    const std::int64_t uni = static_cast<std::int64_t>(sa.size() + sb.size()) - inter;
    sum = sum + Fraction{inter, uni};
    ++dims;
  }
  if (dims == 0) return {};
  return {sum.num, sum.den * dims};
}

TEST(Neighbors, RankingFollowsExactScoresThenNaturalIds) {
  FacetedIndex idx(fixture());
  for (const auto& id : idx.universe()) {
    auto got = neighbors(idx, fixture(), id, 100);
    ASSERT_EQ(got.size(), 24u);
    for (std::size_t i = 1; i < got.size(); ++i) {
      const auto prev = exact_similarity(tc(id.c_str()), tc(got[i - 1].id.c_str()));
      const auto cur = exact_similarity(tc(id.c_str()), tc(got[i].id.c_str()));
      ASSERT_FALSE(prev < cur) << id << ": " << got[i - 1].id << " before " << got[i].id;
      if (prev == cur) {
        ASSERT_TRUE(text::natural_less(got[i - 1].id, got[i].id)) << id << ": tie " << got[i - 1].id << " " << got[i].id;
      }
    }
  }
}

TEST(Neighbors, TC24TopFourIncludesThreeWayTie) {
  FacetedIndex idx(fixture());
  auto got = neighbors(idx, fixture(), "TC24", 4);
  ASSERT_EQ(got.size(), 4u);
  EXPECT_EQ(got[0].id, "TC17");
  EXPECT_EQ(got[1].id, "TC21");
  EXPECT_EQ(got[2].id, "TC25");
  EXPECT_EQ(got[3].id, "TC19");
}

TEST(Neighbors, EdgeCases) {
  TestCaseDocument only;
  only.id = "TC1";
  only.keywords[0] = {"ICT"};
  auto single = make_corpus(default_vocabulary(), {only});
  FacetedIndex idx(single);
  EXPECT_TRUE(neighbors(idx, single, "TC1", 5).empty());

  FacetedIndex fidx(fixture());
  EXPECT_EQ(neighbors(fidx, fixture(), "TC24", 100).size(), 24u);
  EXPECT_TRUE(neighbors(fidx, fixture(), "TC24", 0).empty());
  try {
    neighbors(fidx, fixture(), "TC99", 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "UnknownId");
  }
}

TEST(Neighbors, WeightScalingKeepsRanking) {
  testing::Rng rng(12);
  for (int round = 0; round < 50; ++round) {
    auto docs = testing::random_test_cases(rng, default_vocabulary());
    auto corpus = make_corpus(default_vocabulary(), docs);
    FacetedIndex idx(corpus);
    auto w = random_weights(rng);
    auto scaled = w;
    for (auto& x : scaled) x *= 7.0;
    const auto& id = idx.universe().front();
    auto a = neighbors(idx, corpus, id, 10, config(w));
    auto b = neighbors(idx, corpus, id, 10, config(scaled));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].id, b[i].id);
      EXPECT_NEAR(a[i].score, b[i].score, 1e-12);
    }
  }
}

}  // namespace
}  // namespace tcd
