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
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tcdiscover/document.hpp"
#include "tcdiscover/index.hpp"

namespace tcd {

/// Per-dimension weights of the test case similarity.
///
/// The score is a weighted mean of per-dimension Jaccard indices,
///
///   sim(a, b) = sum_{d in D'} w_d * |A_d ∩ B_d| / |A_d ∪ B_d|  /  sum_{d in D'} w_d
///
/// where D' holds the dimensions in which a or b carries at least one
/// keyword. Dimensions untagged on both sides are missing data and do not
/// count. sim is 0 when D' is empty or all weights in D' are zero.
struct SimilarityConfig {
  std::array<double, kDimensionCount> weights{1.0, 1.0, 1.0, 1.0};

  /// Throws Error("InvalidConfig") for negative or non-finite weights, or
  /// when every weight is zero.
  void validate() const;

  /// Parses "domain=2" style assignments onto this config.
  void set_weight(std::string_view assignment);
};

double similarity(const TestCaseDocument& a, const TestCaseDocument& b,
                  const SimilarityConfig& cfg = {});

struct Neighbor {
  std::string id;
  double score = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Top-k other test cases by descending score, ties broken by natural id
/// order. Throws Error("UnknownId") when id is not indexed.
std::vector<Neighbor> neighbors(const FacetedIndex& index, const Corpus& corpus,
                                std::string_view id, std::size_t k,
                                const SimilarityConfig& cfg = {});

}  // namespace tcd
