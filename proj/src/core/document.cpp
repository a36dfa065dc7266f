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

#include "tcdiscover/document.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <sstream>

#include "tcdiscover/text.hpp"

namespace tcd {
namespace {

struct FrontMatterField {
  std::string value;
  int line = 0;
};

struct RawDocument {
  std::map<std::string, FrontMatterField> fields;
  std::vector<Section> sections;
  std::vector<int> section_lines;
  bool front_matter_ok = false;
};

class Linter {
 public:
  explicit Linter(std::string_view path) : path_(path) {}

  void error(std::string code, std::string message, std::optional<int> line = std::nullopt,
             std::vector<std::string> suggestions = {}) {
    add(Severity::Error, std::move(code), std::move(message), line, std::move(suggestions));
  }
  void warn(std::string code, std::string message, std::optional<int> line = std::nullopt) {
    add(Severity::Warning, std::move(code), std::move(message), line, {});
  }

  std::vector<Diagnostic> take() {
    sort_diagnostics(diags_);
    return std::move(diags_);
  }
  bool failed() const { return has_errors(diags_); }

 private:
  void add(Severity s, std::string code, std::string message, std::optional<int> line,
           std::vector<std::string> suggestions) {
    diags_.push_back(Diagnostic{s, std::move(code), std::move(message), std::string(path_), line,
                                std::move(suggestions)});
  }

  std::string_view path_;
  std::vector<Diagnostic> diags_;
};

std::string join_body(const std::vector<std::string_view>& lines) {
  std::size_t first = 0, last = lines.size();
  while (first < last && text::trim(lines[first]).empty()) ++first;
  while (last > first && text::trim(lines[last - 1]).empty()) --last;
  std::string body;
  for (std::size_t i = first; i < last; ++i) {
    if (i != first) body.push_back('\n');
    body.append(lines[i]);
  }
  return body;
}

bool is_heading(std::string_view line) { return line.substr(0, 2) == "# "; }

// Splits front matter and body. Front-matter problems are reported on the
// linter; the body is still parsed when the front matter is usable.
RawDocument split_document(std::string_view source, Linter& lint) {
  RawDocument doc;
  if (source.substr(0, 3) == "\xEF\xBB\xBF") source.remove_prefix(3);
  auto lines = text::split_lines(source);

  if (lines.empty() || text::trim(lines[0]) != "---") {
    lint.error("MissingFrontMatter", "document must start with a '---' front-matter block", 1);
    return doc;
  }
  std::size_t close = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (text::trim(lines[i]) == "---") {
      close = i;
      break;
    }
  }
  if (close == 0) {
    lint.error("MissingFrontMatter", "front-matter block is not closed by '---'", 1);
    return doc;
  }
  doc.front_matter_ok = true;

  for (std::size_t i = 1; i < close; ++i) {
    const int line_no = static_cast<int>(i) + 1;
    auto line = text::trim(lines[i]);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      lint.error("MalformedFrontMatter", "expected 'key: value', got '" + std::string(line) + "'",
                 line_no);
      continue;
    }
    auto key = text::fold_case(text::trim(line.substr(0, colon)));
    auto value = std::string(text::trim(line.substr(colon + 1)));
    auto [it, inserted] = doc.fields.emplace(key, FrontMatterField{value, line_no});
    if (!inserted) {
      lint.error("DuplicateField",
                 "field '" + key + "' repeated (first on line " + std::to_string(it->second.line) +
                     ")",
                 line_no);
    }
  }

  std::vector<std::string_view> pending;
  std::optional<int> preamble_line;
  bool in_section = false;
  auto flush = [&] {
    if (in_section) {
      doc.sections.back().body = join_body(pending);
    }
    pending.clear();
  };
  for (std::size_t i = close + 1; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    if (is_heading(lines[i])) {
      flush();
      doc.sections.push_back(Section{text::normalize_whitespace(lines[i].substr(2)), {}});
      doc.section_lines.push_back(line_no);
      in_section = true;
      continue;
    }
    if (!in_section && !text::trim(lines[i]).empty() && !preamble_line) preamble_line = line_no;
    pending.push_back(lines[i]);
  }
  flush();
  if (preamble_line) {
    lint.warn("TextOutsideSection", "text before the first '# ' heading is ignored", preamble_line);
  }
  return doc;
}

void check_identity(const RawDocument& raw, Linter& lint, std::string& id, std::string& title) {
  auto it = raw.fields.find("id");
  if (it == raw.fields.end() || it->second.value.empty()) {
    lint.error("MissingId", "front matter has no 'id' field",
               it == raw.fields.end() ? std::optional<int>(1) : it->second.line);
  } else if (!text::is_token(it->second.value)) {
    lint.error("BadId",
               "id '" + it->second.value + "' must match [A-Za-z][A-Za-z0-9_-]*", it->second.line);
  } else {
    id = it->second.value;
  }
  if (auto t = raw.fields.find("title"); t != raw.fields.end() && !t->second.value.empty()) {
    title = text::normalize_whitespace(t->second.value);
  } else {
    lint.warn("MissingTitle", "front matter has no 'title'", 1);
  }
}

void check_sections(const RawDocument& raw, std::span<const std::string_view> expected,
                    Linter& lint) {
  std::set<std::string> present;
  for (std::size_t i = 0; i < raw.sections.size(); ++i) {
    present.insert(text::match_key(raw.sections[i].heading));
    if (raw.sections[i].body.empty()) {
      lint.warn("EmptySection", "section '" + raw.sections[i].heading + "' is empty",
                raw.section_lines[i]);
    }
  }
  for (auto heading : expected) {
    if (!present.count(text::match_key(heading))) {
      lint.warn("MissingSection", "missing section '" + std::string(heading) + "'");
    }
  }
}

void emit_sections(std::ostringstream& out, const std::vector<Section>& sections) {
  for (const auto& s : sections) {
    out << "\n# " << s.heading << '\n';
    if (!s.body.empty()) out << '\n' << s.body << '\n';
  }
}

}  // namespace

std::string_view severity_name(Severity s) { return s == Severity::Error ? "error" : "warning"; }

void sort_diagnostics(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
    auto la = a.line.value_or(0), lb = b.line.value_or(0);
    if (la != lb) return la < lb;
    return a.code < b.code;
  });
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

bool TestCaseDocument::has_tag(Dimension d, std::string_view keyword) const {
  const auto& t = tags(d);
  return std::find(t.begin(), t.end(), keyword) != t.end();
}

bool TestCaseDocument::same_content(const TestCaseDocument& o) const {
  return id == o.id && title == o.title && scenario == o.scenario && keywords == o.keywords &&
         sections == o.sections;
}

bool ScenarioDocument::same_content(const ScenarioDocument& o) const {
  return id == o.id && title == o.title && sections == o.sections;
}

ParseResult<TestCaseDocument> parse_test_case(std::string_view source,
                                              const KeywordVocabulary& vocab,
                                              std::string_view path) {
  Linter lint(path);
  auto raw = split_document(source, lint);
  ParseResult<TestCaseDocument> result;
  if (!raw.front_matter_ok) {
    result.diagnostics = lint.take();
    return result;
  }

  TestCaseDocument doc;
  doc.source_path = std::string(path);
  check_identity(raw, lint, doc.id, doc.title);

  for (const auto& [key, field] : raw.fields) {
    if (key == "id" || key == "title" || key == "scenario" || parse_dimension(key)) continue;
    lint.warn("UnknownField", "unknown front-matter field '" + key + "'", field.line);
  }

  if (auto it = raw.fields.find("scenario"); it != raw.fields.end() && !it->second.value.empty()) {
    if (text::is_token(it->second.value)) {
      doc.scenario = it->second.value;
    } else {
      lint.error("BadId", "scenario reference '" + it->second.value + "' is not a valid id",
                 it->second.line);
    }
  }

  for (auto d : kAllDimensions) {
    auto it = raw.fields.find(std::string(dimension_key(d)));
    if (it == raw.fields.end()) continue;
    const int line = it->second.line;
    auto& tags = doc.keywords[index_of(d)];
    for (auto part : text::split(it->second.value, ';')) {
      auto written = text::normalize_whitespace(part);
      if (written.empty()) continue;
      auto match = vocab.canonicalize(d, written);
      if (!match) {
        std::string msg = "unknown " + std::string(dimension_key(d)) + " keyword '" + written + "'";
        if (!match.suggestions.empty()) {
          msg += "; did you mean ";
          for (std::size_t i = 0; i < match.suggestions.size(); ++i) {
            msg += (i ? ", '" : "'") + match.suggestions[i] + "'";
          }
          msg += "?";
        }
        lint.error("UnknownKeyword", msg, line, match.suggestions);
        continue;
      }
      const auto& canonical = match.entry->canonical;
      if (match.via_alias) {
        lint.warn("AliasUsed", "'" + written + "' is an alias of '" + canonical + "'", line);
      } else if (written != canonical) {
        lint.warn("NonCanonicalForm", "'" + written + "' should be written '" + canonical + "'",
                  line);
      }
      if (std::find(tags.begin(), tags.end(), canonical) != tags.end()) {
        lint.error("DuplicateKeywordInDimension",
                   "keyword '" + canonical + "' listed twice in " + std::string(dimension_key(d)),
                   line);
        continue;
      }
      tags.push_back(canonical);
    }
  }
  for (auto d : kAllDimensions) {
    if (doc.keywords[index_of(d)].empty()) {
      lint.warn("UntaggedDimension",
                "no " + std::string(dimension_key(d)) + " keywords (" +
                    std::string(dimension_label(d)) + ")");
    }
  }

  check_sections(raw, kRecommendedTestCaseSections, lint);
  doc.sections = std::move(raw.sections);

  const bool failed = lint.failed();
  result.diagnostics = lint.take();
  if (!failed) result.document = std::move(doc);
  return result;
}

ParseResult<ScenarioDocument> parse_scenario(std::string_view source, std::string_view path) {
  Linter lint(path);
  auto raw = split_document(source, lint);
  ParseResult<ScenarioDocument> result;
  if (!raw.front_matter_ok) {
    result.diagnostics = lint.take();
    return result;
  }
  ScenarioDocument doc;
  doc.source_path = std::string(path);
  check_identity(raw, lint, doc.id, doc.title);
  for (const auto& [key, field] : raw.fields) {
    if (key == "id" || key == "title") continue;
    lint.warn("UnknownField", "unknown front-matter field '" + key + "'", field.line);
  }
  check_sections(raw, kScenarioSections, lint);
  doc.sections = std::move(raw.sections);

  const bool failed = lint.failed();
  result.diagnostics = lint.take();
  if (!failed) result.document = std::move(doc);
  return result;
}

std::string serialize_test_case(const TestCaseDocument& doc) {
  std::ostringstream out;
  out << "---\n";
  out << "id: " << doc.id << '\n';
  if (!doc.title.empty()) out << "title: " << doc.title << '\n';
  if (doc.scenario) out << "scenario: " << *doc.scenario << '\n';
  for (auto d : kAllDimensions) {
    const auto& tags = doc.tags(d);
    if (tags.empty()) continue;
    out << dimension_key(d) << ": ";
    for (std::size_t i = 0; i < tags.size(); ++i) out << (i ? "; " : "") << tags[i];
    out << '\n';
  }
  out << "---\n";
  emit_sections(out, doc.sections);
  return out.str();
}

std::string serialize_scenario(const ScenarioDocument& doc) {
  std::ostringstream out;
  out << "---\n";
  out << "id: " << doc.id << '\n';
  if (!doc.title.empty()) out << "title: " << doc.title << '\n';
  out << "---\n";
  emit_sections(out, doc.sections);
  return out.str();
}

}  // namespace tcd
