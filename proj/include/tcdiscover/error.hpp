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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tcd {

/// Library exception. `code()` is a stable token such as "UnknownKeyword" or
/// "DuplicateKeyword"; the C API and HTTP service map it to their own error
/// representations.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message,
        std::vector<std::string> suggestions = {},
        std::optional<int> line = std::nullopt)
      : std::runtime_error(message),
        code_(std::move(code)),
        suggestions_(std::move(suggestions)),
        line_(line) {}

  const std::string& code() const noexcept { return code_; }
  const std::vector<std::string>& suggestions() const noexcept { return suggestions_; }
  std::optional<int> line() const noexcept { return line_; }

 private:
  std::string code_;
  std::vector<std::string> suggestions_;
  std::optional<int> line_;
};

}  // namespace tcd
