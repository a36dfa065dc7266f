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
#include <string>
#include <string_view>
#include <vector>

namespace tcd::text {

/// Trims both ends and collapses internal whitespace runs to one space.
std::string normalize_whitespace(std::string_view s);

/// ASCII lower-casing; bytes outside ASCII pass through unchanged.
std::string fold_case(std::string_view s);

/// normalize_whitespace followed by fold_case. Keyword comparisons use this.
std::string match_key(std::string_view s);

std::string_view trim(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);

/// Splits on LF, dropping one trailing CR per line.
std::vector<std::string_view> split_lines(std::string_view s);

/// Byte-wise edit distance (insert, delete, substitute all cost 1).
std::size_t levenshtein(std::string_view a, std::string_view b);

/// `[A-Za-z][A-Za-z0-9_-]*`
bool is_token(std::string_view s);

/// Numeric-aware ordering: digit runs compare by value, so "TC2" < "TC10".
/// Ties in value (e.g. "TC01" vs "TC1") fall back to plain byte order, which
/// keeps the ordering total.
bool natural_less(std::string_view a, std::string_view b);

struct NaturalLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const { return natural_less(a, b); }
};

}  // namespace tcd::text
