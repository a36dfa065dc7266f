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

#include "tcdiscover/similarity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iterator>

#include "tcdiscover/error.hpp"

namespace tcd {
namespace {

double jaccard(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::string> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  const auto united = a.size() + b.size() - common.size();
  return united == 0 ? 0.0 : static_cast<double>(common.size()) / static_cast<double>(united);
}

}  // namespace

void SimilarityConfig::validate() const {
  bool any_positive = false;
  for (auto d : kAllDimensions) {
    const double w = weights[index_of(d)];
    if (!std::isfinite(w) || w < 0.0) {
      throw Error("InvalidConfig", "weight for " + std::string(dimension_key(d)) +
                                       " must be a finite non-negative number");
    }
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw Error("InvalidConfig", "at least one similarity weight must be positive");
}

void SimilarityConfig::set_weight(std::string_view assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error("InvalidConfig", "expected DIM=WEIGHT, got '" + std::string(assignment) + "'");
  }
  auto dim = parse_dimension(assignment.substr(0, eq));
  if (!dim) {
    throw Error("InvalidConfig",
                "unknown dimension '" + std::string(assignment.substr(0, eq)) + "'");
  }
  auto value = assignment.substr(eq + 1);
  double w = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), w);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw Error("InvalidConfig", "weight '" + std::string(value) + "' is not a number");
  }
  weights[index_of(*dim)] = w;
}

double similarity(const TestCaseDocument& a, const TestCaseDocument& b,
                  const SimilarityConfig& cfg) {
  cfg.validate();
  double num = 0.0, den = 0.0;
  for (auto d : kAllDimensions) {
    if (a.tags(d).empty() && b.tags(d).empty()) continue;
    const double w = cfg.weights[index_of(d)];
    num += w * jaccard(a.tags(d), b.tags(d));
    den += w;
  }
  return den > 0.0 ? num / den : 0.0;
}

std::vector<Neighbor> neighbors(const FacetedIndex& index, const Corpus& corpus,
                                std::string_view id, std::size_t k,
                                const SimilarityConfig& cfg) {
  cfg.validate();
  const auto& universe = index.universe();
  const TestCaseDocument* self = corpus.find(id);
  if (!self || !std::binary_search(universe.begin(), universe.end(), id, text::NaturalLess{})) {
    throw Error("UnknownId", "unknown test case '" + std::string(id) + "'");
  }
  std::vector<Neighbor> scored;
  scored.reserve(universe.size());
  for (const auto& other : universe) {
    if (other == id) continue;
    const auto* doc = corpus.find(other);
    if (!doc) continue;
    scored.push_back(Neighbor{other, similarity(*self, *doc, cfg)});
  }
  // Rounding noise (2/3 + 1/3 summed in doubles) must not split true ties, so
  // ranks use the score quantized to 1e-9; universe is in natural order and the
  // stable sort keeps tied ids that way.
  auto rank_key = [](double s) { return std::llround(s * 1e9); };
  std::stable_sort(scored.begin(), scored.end(), [&](const Neighbor& x, const Neighbor& y) {
    return rank_key(x.score) > rank_key(y.score);
  });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

}  // namespace tcd
