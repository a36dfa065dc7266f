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

// tc-discover: command-line front end over the tcdiscover C API.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tcdiscover/tcdiscover.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitUsage = 2;

constexpr const char* kDimensionKeys[] = {"domain", "phenomenon", "assessment", "components"};

constexpr const char* kSimilarityHelp =
    "Similarity is this tool's own choice of metric: a weighted mean of per-dimension\n"
    "Jaccard indices,\n"
    "  sim(a,b) = sum_{d in D'} w_d * |A_d & B_d| / |A_d | B_d|  /  sum_{d in D'} w_d\n"
    "where D' holds the dimensions tagged on at least one side. Dimensions untagged on\n"
    "both sides are left out; sim is 0 when D' is empty. Weights default to 1 and must\n"
    "be non-negative. Ties are broken by natural id order.";

// Thrown after a C API call fails; carries the library's error payload.
struct ApiFailure {
  tcd_status status;
  std::string message;
  std::vector<std::string> suggestions;
};

struct UsageFailure {
  std::string message;
};

class Owned {
 public:
  Owned() = default;
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
  ~Owned() { tcd_free(p_); }
  char** out() { return &p_; }
  std::string str() const { return p_ ? std::string(p_) : std::string(); }

 private:
  char* p_ = nullptr;
};

void check(tcd_status st) {
  if (st == TCD_OK) return;
  ApiFailure f{st, tcd_last_error(), {}};
  try {
    auto j = nlohmann::json::parse(tcd_last_error_json());
    if (j.contains("suggestions")) f.suggestions = j["suggestions"].get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception&) {
  }
  throw f;
}

const char* c_or_null(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

struct CorpusOptions {
  std::string root = ".";
  std::string vocab;
  std::string profiles;
};

class Corpus {
 public:
  explicit Corpus(const CorpusOptions& o) {
    check(tcd_corpus_open(o.root.c_str(), c_or_null(o.vocab), c_or_null(o.profiles), &c_));
  }
  Corpus(const Corpus&) = delete;
  Corpus& operator=(const Corpus&) = delete;
  ~Corpus() { tcd_corpus_close(c_); }
  tcd_corpus* get() const { return c_; }

 private:
  tcd_corpus* c_ = nullptr;
};

void add_corpus_options(CLI::App* cmd, CorpusOptions& o) {
  cmd->add_option("--corpus", o.root, "Corpus root directory")->capture_default_str();
  cmd->add_option("--vocab", o.vocab, "Vocabulary file (.tcv)");
  cmd->add_option("--profiles", o.profiles, "Profile store (default: <corpus>/profiles.tcp.json)");
}

struct SelectorOptions {
  std::vector<std::string> keywords[4];
  std::vector<std::string> any_within;
};

void add_selector_options(CLI::App* cmd, SelectorOptions& s) {
  cmd->add_option("-d,--domain", s.keywords[0], "Domain under Investigation keyword (repeatable)");
  cmd->add_option("-p,--phenomenon", s.keywords[1], "Tested Phenomenon keyword (repeatable)");
  cmd->add_option("-a,--assessment", s.keywords[2], "Type of Assessment keyword (repeatable)");
  cmd->add_option("-c,--component", s.keywords[3], "Test System/Components keyword (repeatable)");
  cmd->add_option("--any-within", s.any_within,
                  "Match any (instead of all) selected keywords in this dimension (repeatable)");
}

ordered_json selector_json(const SelectorOptions& s) {
  ordered_json j = ordered_json::object();
  for (int i = 0; i < 4; ++i) {
    if (s.keywords[i].empty()) continue;
    const bool is_any = std::any_of(s.any_within.begin(), s.any_within.end(),
                                    [&](const std::string& d) { return d == kDimensionKeys[i]; });
    j[kDimensionKeys[i]] = {{"mode", is_any ? "any" : "all"}, {"keywords", s.keywords[i]}};
  }
  // Unknown --any-within names go through so the library reports them.
  for (const auto& d : s.any_within) {
    if (std::find(std::begin(kDimensionKeys), std::end(kDimensionKeys), d) == std::end(kDimensionKeys) &&
        !j.contains(d)) {
      j[d] = {{"mode", "any"}, {"keywords", ordered_json::array()}};
    }
  }
  return j;
}

ordered_json weights_json(const std::vector<std::string>& specs) {
  ordered_json j = ordered_json::object();
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageFailure{"--weight expects DIM=W, got '" + spec + "'"};
    }
    const auto value = std::string_view(spec).substr(eq + 1);
    double w = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), w);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
      throw UsageFailure{"weight in '" + spec + "' is not a number"};
    }
    j[spec.substr(0, eq)] = w;
  }
  return j;
}

std::vector<std::string> split_keywords(const std::string& list) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto end = list.find(';', start);
    if (end == std::string::npos) end = list.size();
    auto item = list.substr(start, end - start);
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    start = end + 1;
  }
  return out;
}

// Plain left-aligned table; the last column is not padded.
void print_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    std::string out;
    for (std::size_t i = 0; i < r.size(); ++i) {
      out += r[i];
      if (i + 1 < r.size()) out += std::string(width[i] - r[i].size() + 2, ' ');
    }
    std::cout << out << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::map<std::string, ordered_json> summaries(const Corpus& corpus) {
  Owned out;
  check(tcd_testcases(corpus.get(), out.out()));
  std::map<std::string, ordered_json> by_id;
  auto doc = ordered_json::parse(out.str());
  for (auto& tc : doc["testcases"]) by_id[tc["id"].get<std::string>()] = tc;
  return by_id;
}

void print_id_table(const Corpus& corpus, const ordered_json& ids) {
  auto info = summaries(corpus);
  std::vector<std::vector<std::string>> rows;
  for (const auto& id : ids) {
    const auto& tc = info[id.get<std::string>()];
    const auto& fs = tc["scenario"];
    rows.push_back({id.get<std::string>(), fs.is_string() ? fs.get<std::string>() : "-",
                    tc.value("title", std::string())});
  }
  print_table({"ID", "SCENARIO", "TITLE"}, rows);
  std::cout << ids.size() << (ids.size() == 1 ? " test case\n" : " test cases\n");
}

void require_choice(const std::string& value, std::initializer_list<const char*> choices, const char* flag) {
  for (const char* c : choices) {
    if (value == c) return;
  }
  throw UsageFailure{std::string(flag) + ": unsupported value '" + value + "'"};
}

// ---- subcommands ------------------------------------------------------------

struct LintArgs {
  std::vector<std::string> paths;
  std::string vocab;
  std::string format = "text";
};

int run_lint(const LintArgs& a) {
  require_choice(a.format, {"text", "json"}, "--format");
  auto paths = a.paths.empty() ? std::vector<std::string>{"."} : a.paths;
  std::vector<const char*> cpaths;
  for (const auto& p : paths) cpaths.push_back(p.c_str());
  Owned out;
  std::size_t errors = 0;
  check(tcd_lint(cpaths.data(), cpaths.size(), c_or_null(a.vocab), out.out(), &errors));
  if (a.format == "json") {
    std::cout << out.str();
  } else {
    auto j = ordered_json::parse(out.str());
    for (const auto& d : j["diagnostics"]) {
      std::string where = d["path"].get<std::string>();
      if (d["line"].is_number()) where += ":" + std::to_string(d["line"].get<long>());
      std::cout << where << ": " << d["severity"].get<std::string>() << ": " << d["code"].get<std::string>()
                << ": " << d["message"].get<std::string>();
      if (d.contains("suggestions")) {
        std::cout << " (did you mean: " << join(d["suggestions"].get<std::vector<std::string>>(), ", ") << ")";
      }
      std::cout << "\n";
    }
    const auto e = j["errors"].get<std::size_t>();
    const auto w = j["warnings"].get<std::size_t>();
    std::cout << e << (e == 1 ? " error, " : " errors, ") << w << (w == 1 ? " warning\n" : " warnings\n");
  }
  return errors ? kExitFindings : kExitOk;
}

struct QueryArgs {
  CorpusOptions corpus;
  SelectorOptions selector;
  bool facet_counts = false;
  std::string format = "table";
};

int run_query(const QueryArgs& a) {
  require_choice(a.format, {"table", "json"}, "--format");
  Corpus corpus(a.corpus);
  const auto filter = selector_json(a.selector).dump();
  Owned out;
  check(tcd_query(corpus.get(), filter.c_str(), a.facet_counts ? 1 : 0, out.out()));
  if (a.format == "json") {
    std::cout << out.str();
    return kExitOk;
  }
  auto j = ordered_json::parse(out.str());
  print_id_table(corpus, j["ids"]);
  if (j.contains("facet_counts")) {
    std::cout << "\n";
    for (const auto& [dim, counts] : j["facet_counts"].items()) {
      for (const auto& [kw, n] : counts.items()) {
        if (n.get<long>() > 0) std::cout << dim << ": " << kw << " (" << n.get<long>() << ")\n";
      }
    }
  }
  return kExitOk;
}

struct SimilarArgs {
  CorpusOptions corpus;
  std::string id;
  std::size_t k = 5;
  std::vector<std::string> weights;
  std::string format = "table";
};

int run_similar(const SimilarArgs& a) {
  require_choice(a.format, {"table", "json"}, "--format");
  const auto weights = weights_json(a.weights).dump();
  Corpus corpus(a.corpus);
  Owned out;
  check(tcd_similar(corpus.get(), a.id.c_str(), a.k, weights.c_str(), out.out()));
  if (a.format == "json") {
    std::cout << out.str();
    return kExitOk;
  }
  auto j = ordered_json::parse(out.str());
  std::vector<std::vector<std::string>> rows;
  int rank = 0;
  for (const auto& n : j["neighbors"]) {
    char score[32];
    std::snprintf(score, sizeof score, "%.4f", n["score"].get<double>());
    rows.push_back({std::to_string(++rank), n["id"].get<std::string>(), score});
  }
  print_table({"RANK", "ID", "SCORE"}, rows);
  return kExitOk;
}

struct MatrixArgs {
  CorpusOptions corpus;
  std::string scope = "all";
  std::vector<std::string> dimensions;
  bool full_columns = false;
  std::string format = "md";
};

int run_matrix(const MatrixArgs& a) {
  ordered_json opts;
  opts["scope"] = a.scope;
  opts["dimensions"] = a.dimensions;
  opts["full_columns"] = a.full_columns;
  Corpus corpus(a.corpus);
  Owned out;
  check(tcd_matrix(corpus.get(), opts.dump().c_str(), a.format.c_str(), out.out()));
  std::cout << out.str();
  return kExitOk;
}

struct GapsArgs {
  CorpusOptions corpus;
  int singleton_threshold = 1;
  double similarity_floor = 0.0;
  std::vector<std::string> weights;
  bool fail_on_gaps = false;
  std::string format = "md";
};

int run_gaps(const GapsArgs& a) {
  ordered_json opts;
  opts["singleton_threshold"] = a.singleton_threshold;
  opts["similarity_floor"] = a.similarity_floor;
  if (!a.weights.empty()) opts["weights"] = weights_json(a.weights);
  Corpus corpus(a.corpus);
  Owned out;
  int findings = 0;
  check(tcd_gaps(corpus.get(), opts.dump().c_str(), a.format.c_str(), out.out(), &findings));
  std::cout << out.str();
  return a.fail_on_gaps && findings ? kExitFindings : kExitOk;
}

struct ProfileArgs {
  CorpusOptions corpus;
  std::string name;
  std::string description;
  SelectorOptions selector;
  std::vector<std::string> pins;
  std::string format = "table";
};

int run_profile_add(const ProfileArgs& a) {
  ordered_json p;
  p["name"] = a.name;
  p["description"] = a.description;
  p["selector"] = selector_json(a.selector);
  if (!a.pins.empty()) p["pinned_ids"] = a.pins;
  Corpus corpus(a.corpus);
  Owned out;
  check(tcd_profile_add(corpus.get(), p.dump().c_str(), out.out()));
  std::cout << out.str();
  return kExitOk;
}

int run_profile_list(const ProfileArgs& a) {
  require_choice(a.format, {"table", "json"}, "--format");
  Corpus corpus(a.corpus);
  Owned out;
  check(tcd_profiles(corpus.get(), out.out()));
  if (a.format == "json") {
    std::cout << out.str();
    return kExitOk;
  }
  std::vector<std::vector<std::string>> rows;
  auto doc = ordered_json::parse(out.str());
  for (const auto& p : doc["profiles"]) {
    rows.push_back({p["name"].get<std::string>(), p["description"].get<std::string>()});
  }
  print_table({"NAME", "DESCRIPTION"}, rows);
  return kExitOk;
}

int run_profile_members(const ProfileArgs& a) {
  require_choice(a.format, {"table", "json"}, "--format");
  Corpus corpus(a.corpus);
  Owned out;
  check(tcd_profile_members(corpus.get(), a.name.c_str(), out.out()));
  if (a.format == "json") {
    std::cout << out.str();
    return kExitOk;
  }
  print_id_table(corpus, ordered_json::parse(out.str())["ids"]);
  return kExitOk;
}

int run_profile_bench(const ProfileArgs& a) {
  require_choice(a.format, {"table", "json"}, "--format");
  Corpus corpus(a.corpus);
  Owned out;
  check(tcd_benchmark_requirements(corpus.get(), a.name.c_str(), out.out()));
  if (a.format == "json") {
    std::cout << out.str();
    return kExitOk;
  }
  auto j = ordered_json::parse(out.str());
  std::cout << "profile " << a.name << ": " << j["members"].size() << " test cases\n";
  for (const auto& [dim, kws] : j["requirements"].items()) {
    for (const auto& kw : kws) std::cout << dim << ": " << kw.get<std::string>() << "\n";
  }
  return kExitOk;
}

struct CapabilityArgs {
  CorpusOptions corpus;
  std::string have;
  std::vector<std::string> domains;
  std::string format = "table";
};

int run_capabilities(const CapabilityArgs& a) {
  require_choice(a.format, {"table", "json"}, "--format");
  ordered_json cap;
  cap["components"] = split_keywords(a.have);
  if (!a.domains.empty()) cap["domains"] = a.domains;
  Corpus corpus(a.corpus);
  Owned out;
  check(tcd_capabilities(corpus.get(), cap.dump().c_str(), out.out()));
  if (a.format == "json") {
    std::cout << out.str();
    return kExitOk;
  }
  std::vector<std::vector<std::string>> rows;
  std::size_t runnable = 0;
  auto doc = ordered_json::parse(out.str());
  for (const auto& m : doc["matches"]) {
    const bool ok = m["executable"].get<bool>();
    runnable += ok;
    rows.push_back({m["id"].get<std::string>(), ok ? "yes" : "no",
                    join(m["missing"].get<std::vector<std::string>>(), "; ")});
  }
  print_table({"ID", "EXECUTABLE", "MISSING"}, rows);
  std::cout << runnable << " of " << rows.size() << " test cases executable\n";
  return kExitOk;
}

struct VocabArgs {
  CorpusOptions corpus;
  std::string keyword;
  std::string format = "table";
};

class Vocabulary {
 public:
  explicit Vocabulary(const CorpusOptions& o) {
    check(tcd_vocabulary_open(o.root.c_str(), c_or_null(o.vocab), &v_));
  }
  Vocabulary(const Vocabulary&) = delete;
  Vocabulary& operator=(const Vocabulary&) = delete;
  ~Vocabulary() { tcd_vocabulary_close(v_); }
  tcd_vocabulary* get() const { return v_; }

 private:
  tcd_vocabulary* v_ = nullptr;
};

int run_vocab_list(const VocabArgs& a) {
  require_choice(a.format, {"table", "json", "tcv"}, "--format");
  Vocabulary vocab(a.corpus);
  Owned out;
  if (a.format == "tcv") {
    check(tcd_vocabulary_text(vocab.get(), out.out()));
    std::cout << out.str();
    return kExitOk;
  }
  check(tcd_vocabulary_json(vocab.get(), out.out()));
  if (a.format == "json") {
    std::cout << out.str();
    return kExitOk;
  }
  auto doc = ordered_json::parse(out.str());
  for (const auto& [dim, body] : doc.items()) {
    std::cout << body["label"].get<std::string>() << " (" << dim << ", " << body["keywords"].size() << ")\n";
    for (const auto& kw : body["keywords"]) {
      std::cout << "  " << kw["canonical"].get<std::string>();
      if (!kw["aliases"].empty()) {
        std::cout << "  [aka " << join(kw["aliases"].get<std::vector<std::string>>(), ", ") << "]";
      }
      std::cout << "\n";
    }
  }
  return kExitOk;
}

int run_vocab_show(const VocabArgs& a) {
  require_choice(a.format, {"table", "json"}, "--format");
  Vocabulary vocab(a.corpus);
  Owned out;
  check(tcd_vocabulary_lookup(vocab.get(), a.keyword.c_str(), out.out()));
  if (a.format == "json") {
    std::cout << out.str();
    return kExitOk;
  }
  auto j = ordered_json::parse(out.str());
  if (j["matches"].empty()) {
    std::vector<std::string> all;
    for (const auto& [dim, list] : j["suggestions"].items()) {
      for (const auto& s : list) all.push_back(s.get<std::string>());
    }
    std::string msg = "unknown keyword '" + a.keyword + "'";
    if (!all.empty()) msg += "; did you mean '" + all.front() + "'?";
    throw ApiFailure{TCD_E_UNKNOWN_KEYWORD, msg, all};
  }
  for (const auto& m : j["matches"]) {
    std::cout << m["dimension"].get<std::string>() << ": " << m["canonical"].get<std::string>() << "\n";
    if (!m["definition"].get<std::string>().empty()) {
      std::cout << "  " << m["definition"].get<std::string>() << "\n";
    }
    if (!m["aliases"].empty()) {
      std::cout << "  aliases: " << join(m["aliases"].get<std::vector<std::string>>(), ", ") << "\n";
    }
  }
  return kExitOk;
}

struct ServeArgs {
  CorpusOptions corpus;
  std::string address = "127.0.0.1:8080";
  std::string static_dir;
};

int run_serve(const ServeArgs& a) {
  check(tcd_serve(a.corpus.root.c_str(), c_or_null(a.corpus.vocab), c_or_null(a.corpus.profiles),
                  c_or_null(a.static_dir), a.address.c_str()));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discover, compare and report on structured test-case documents.", "tc-discover"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tcd_version()));
  app.footer(std::string("Exit status: 0 success, 1 findings (lint errors, gaps with --fail-on-gaps),\n"
                         "2 usage or I/O error.\n"
                         "Vocabulary lookup: --vocab, <corpus>/vocabulary.tcv, $TC_DISCOVER_VOCAB, built-in."));

  int rc = kExitOk;

  LintArgs lint;
  auto* lint_cmd = app.add_subcommand("lint", "Validate test-case and scenario documents");
  lint_cmd->add_option("paths", lint.paths, "Files or directories (default: .)");
  lint_cmd->add_option("--vocab", lint.vocab, "Vocabulary file (.tcv)");
  lint_cmd->add_option("--format", lint.format, "text|json")->capture_default_str();
  lint_cmd->callback([&] { rc = run_lint(lint); });

  QueryArgs query;
  auto* query_cmd = app.add_subcommand("query", "Faceted query; dimensions combine with AND");
  add_corpus_options(query_cmd, query.corpus);
  add_selector_options(query_cmd, query.selector);
  query_cmd->add_flag("--facet-counts", query.facet_counts, "Include per-keyword facet counts");
  query_cmd->add_option("--format", query.format, "table|json")->capture_default_str();
  query_cmd->callback([&] { rc = run_query(query); });

  SimilarArgs similar;
  auto* similar_cmd = app.add_subcommand("similar", "Rank test cases by keyword similarity");
  add_corpus_options(similar_cmd, similar.corpus);
  similar_cmd->add_option("id", similar.id, "Test case id")->required();
  similar_cmd->add_option("-k", similar.k, "Number of neighbors")->capture_default_str();
  similar_cmd->add_option("--weight", similar.weights, "Dimension weight as DIM=W (repeatable)");
  similar_cmd->add_option("--format", similar.format, "table|json")->capture_default_str();
  similar_cmd->footer(kSimilarityHelp);
  similar_cmd->callback([&] { rc = run_similar(similar); });

  MatrixArgs matrix;
  auto* matrix_cmd = app.add_subcommand("matrix", "Coverage matrix grouped by functional scenario");
  add_corpus_options(matrix_cmd, matrix.corpus);
  matrix_cmd->add_option("--scope", matrix.scope, "all | fs:ID | profile:NAME")->capture_default_str();
  matrix_cmd->add_option("--dimension", matrix.dimensions, "Restrict columns to DIM (repeatable)");
  matrix_cmd->add_flag("--full-columns", matrix.full_columns, "Include keywords no test case uses");
  matrix_cmd->add_option("--format", matrix.format, "md|csv|json")->capture_default_str();
  matrix_cmd->callback([&] { rc = run_matrix(matrix); });

  GapsArgs gaps;
  auto* gaps_cmd = app.add_subcommand("gaps", "Report unused keywords, untagged dimensions and outliers");
  add_corpus_options(gaps_cmd, gaps.corpus);
  gaps_cmd->add_option("--singleton-threshold", gaps.singleton_threshold,
                       "Flag keywords used by at most N test cases in a scope")
      ->capture_default_str();
  gaps_cmd->add_option("--similarity-floor", gaps.similarity_floor,
                       "Flag same-scenario pairs scoring below X (0 disables)")
      ->capture_default_str();
  gaps_cmd->add_option("--weight", gaps.weights, "Dimension weight as DIM=W (repeatable)");
  gaps_cmd->add_flag("--fail-on-gaps", gaps.fail_on_gaps, "Exit 1 when any finding is reported");
  gaps_cmd->add_option("--format", gaps.format, "md|csv|json")->capture_default_str();
  gaps_cmd->footer(kSimilarityHelp);
  gaps_cmd->callback([&] { rc = run_gaps(gaps); });

  ProfileArgs profile;
  auto* profile_cmd = app.add_subcommand("profile", "Manage test case profiles");
  profile_cmd->require_subcommand(1);
  auto* padd = profile_cmd->add_subcommand("add", "Create a profile from a keyword selector");
  add_corpus_options(padd, profile.corpus);
  padd->add_option("name", profile.name, "Profile name")->required();
  padd->add_option("--description", profile.description, "Free-text description");
  add_selector_options(padd, profile.selector);
  padd->add_option("--pin", profile.pins, "Reference test case id (repeatable)");
  padd->callback([&] { rc = run_profile_add(profile); });
  auto* plist = profile_cmd->add_subcommand("list", "List profiles");
  add_corpus_options(plist, profile.corpus);
  plist->add_option("--format", profile.format, "table|json")->capture_default_str();
  plist->callback([&] { rc = run_profile_list(profile); });
  auto* pmem = profile_cmd->add_subcommand("members", "Test cases matching a profile");
  add_corpus_options(pmem, profile.corpus);
  pmem->add_option("name", profile.name, "Profile name")->required();
  pmem->add_option("--format", profile.format, "table|json")->capture_default_str();
  pmem->callback([&] { rc = run_profile_members(profile); });
  auto* pbench = profile_cmd->add_subcommand("bench-reqs", "Union of member keywords per dimension");
  add_corpus_options(pbench, profile.corpus);
  pbench->add_option("name", profile.name, "Profile name")->required();
  pbench->add_option("--format", profile.format, "table|json")->capture_default_str();
  pbench->callback([&] { rc = run_profile_bench(profile); });

  CapabilityArgs cap;
  auto* cap_cmd = app.add_subcommand("capabilities", "Which test cases a laboratory can execute");
  add_corpus_options(cap_cmd, cap.corpus);
  cap_cmd->add_option("--have", cap.have, "Available components, separated by ';'")->required();
  cap_cmd->add_option("--domain", cap.domains, "Only consider test cases in this domain (repeatable)");
  cap_cmd->add_option("--format", cap.format, "table|json")->capture_default_str();
  cap_cmd->callback([&] { rc = run_capabilities(cap); });

  VocabArgs vocab;
  auto* vocab_cmd = app.add_subcommand("vocab", "Inspect the keyword vocabulary");
  vocab_cmd->require_subcommand(1);
  auto* vlist = vocab_cmd->add_subcommand("list", "List all keywords");
  add_corpus_options(vlist, vocab.corpus);
  vlist->add_option("--format", vocab.format, "table|json|tcv")->capture_default_str();
  vlist->callback([&] { rc = run_vocab_list(vocab); });
  auto* vshow = vocab_cmd->add_subcommand("show", "Resolve a keyword or alias");
  add_corpus_options(vshow, vocab.corpus);
  vshow->add_option("keyword", vocab.keyword, "Keyword")->required();
  vshow->add_option("--format", vocab.format, "table|json")->capture_default_str();
  vshow->callback([&] { rc = run_vocab_show(vocab); });

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the local HTTP JSON API");
  add_corpus_options(serve_cmd, serve.corpus);
  serve_cmd->add_option("--addr", serve.address, "HOST:PORT")->capture_default_str();
  serve_cmd->add_option("--static", serve.static_dir, "Web UI asset directory served at /");
  serve_cmd->callback([&] { rc = run_serve(serve); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const UsageFailure& e) {
    std::cerr << "tc-discover: " << e.message << "\n";
    return kExitUsage;
  } catch (const ApiFailure& e) {
    std::cerr << "tc-discover: error: " << e.message << "\n";
    if (e.suggestions.size() > 1) std::cerr << "  suggestions: " << join(e.suggestions, ", ") << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "tc-discover: error: " << e.what() << "\n";
    return kExitUsage;
  }
  return rc;
}
