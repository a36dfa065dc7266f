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

#include "tcdiscover/tcdiscover.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tcdiscover/error.hpp"
#include "tcdiscover/json_io.hpp"
#include "tcdiscover/service.hpp"
#include "tcdiscover/snapshot.hpp"
#include "tcdiscover/version.hpp"

struct tcd_corpus {
  std::shared_ptr<const tcd::Snapshot> snapshot;
};

struct tcd_vocabulary {
  tcd::KeywordVocabulary vocab;
};

namespace {

namespace fs = std::filesystem;

struct LastError {
  std::string code;
  std::string message;
  std::string json;
};

thread_local LastError g_last_error;

tcd_status status_for(const std::string& code) {
  if (code == "InvalidArgument" || code == "InvalidRefinement" || code == "BadName") {
    return TCD_E_INVALID_ARGUMENT;
  }
  if (code == "IoError") return TCD_E_IO;
  if (code == "SyntaxError" || code == "MissingDimension" || code == "EmptyDimension" ||
      code == "InvalidKeyword") {
    return TCD_E_SYNTAX;
  }
  if (code == "UnknownKeyword") return TCD_E_UNKNOWN_KEYWORD;
  if (code == "UnknownId") return TCD_E_UNKNOWN_ID;
  if (code == "UnknownScope") return TCD_E_UNKNOWN_SCOPE;
  if (code == "UnknownProfile") return TCD_E_UNKNOWN_PROFILE;
  if (code == "DuplicateProfile" || code == "DuplicateKeyword") return TCD_E_DUPLICATE;
  if (code == "InvalidConfig") return TCD_E_INVALID_CONFIG;
  return TCD_E_INTERNAL;
}

tcd_status fail(std::string code, std::string message, std::vector<std::string> suggestions = {}) {
  tcd::json::Json j;
  j["code"] = code;
  j["message"] = message;
  j["suggestions"] = suggestions;
  g_last_error = LastError{code, std::move(message), j.dump()};
  return status_for(g_last_error.code);
}

char* dup(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn, converting exceptions to status codes and the thread's last error.
template <class Fn>
tcd_status guard(Fn&& fn) {
  try {
    g_last_error = LastError{};
    fn();
    return TCD_OK;
  } catch (const tcd::Error& e) {
    return fail(e.code(), e.what(), e.suggestions());
  } catch (const nlohmann::json::exception& e) {
    return fail("InvalidArgument", std::string("malformed JSON argument: ") + e.what());
  } catch (const std::exception& e) {
    return fail("Internal", e.what());
  } catch (...) {
    return fail("Internal", "unknown error");
  }
}

nlohmann::json parse_arg(const char* text) {
  if (!text || !*text) return nlohmann::json();
  return nlohmann::json::parse(text);
}

void require(const void* p, const char* what) {
  if (!p) throw tcd::Error("InvalidArgument", std::string(what) + " must not be NULL");
}

void emit(char** out, const std::string& s) {
  require(out, "out");
  *out = dup(s);
}

std::optional<fs::path> opt_path(const char* p) {
  if (!p || !*p) return std::nullopt;
  return fs::path(p);
}

}  // namespace

extern "C" {

const char* tcd_version(void) { return tcd::kVersion; }

const char* tcd_status_name(tcd_status status) {
  switch (status) {
    case TCD_OK: return "ok";
    case TCD_E_INVALID_ARGUMENT: return "invalid argument";
    case TCD_E_IO: return "i/o error";
    case TCD_E_SYNTAX: return "syntax error";
    case TCD_E_UNKNOWN_KEYWORD: return "unknown keyword";
    case TCD_E_UNKNOWN_ID: return "unknown id";
    case TCD_E_UNKNOWN_SCOPE: return "unknown scope";
    case TCD_E_UNKNOWN_PROFILE: return "unknown profile";
    case TCD_E_DUPLICATE: return "duplicate";
    case TCD_E_INVALID_CONFIG: return "invalid configuration";
    case TCD_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tcd_last_error(void) { return g_last_error.message.c_str(); }
const char* tcd_last_error_code(void) { return g_last_error.code.c_str(); }
const char* tcd_last_error_json(void) { return g_last_error.json.c_str(); }

void tcd_free(char* s) { std::free(s); }

tcd_status tcd_vocabulary_open(const char* corpus_root, const char* path, tcd_vocabulary** out) {
  return guard([&] {
    require(out, "out");
    auto root = corpus_root && *corpus_root ? fs::path(corpus_root) : fs::path();
    auto [vocab, source] = tcd::resolve_vocabulary(root, opt_path(path));
    *out = new tcd_vocabulary{std::move(vocab)};
  });
}

void tcd_vocabulary_close(tcd_vocabulary* vocab) { delete vocab; }

tcd_status tcd_vocabulary_json(const tcd_vocabulary* vocab, char** out) {
  return guard([&] {
    require(vocab, "vocab");
    emit(out, tcd::views::vocabulary(vocab->vocab));
  });
}

tcd_status tcd_vocabulary_text(const tcd_vocabulary* vocab, char** out) {
  return guard([&] {
    require(vocab, "vocab");
    emit(out, tcd::serialize_vocabulary(vocab->vocab));
  });
}

tcd_status tcd_vocabulary_lookup(const tcd_vocabulary* vocab, const char* keyword, char** out) {
  return guard([&] {
    require(vocab, "vocab");
    require(keyword, "keyword");
    emit(out, tcd::views::keyword(vocab->vocab, keyword));
  });
}

tcd_status tcd_lint(const char* const* paths, size_t count, const char* vocab_path, char** out,
                    size_t* error_count) {
  return guard([&] {
    if (count > 0) require(paths, "paths");
    std::vector<tcd::Diagnostic> all;
    for (size_t i = 0; i < count; ++i) {
      require(paths[i], "path");
      fs::path p(paths[i]);
      std::error_code ec;
      if (fs::is_directory(p, ec)) {
        auto corpus = tcd::load_corpus(p, opt_path(vocab_path));
        all.insert(all.end(), corpus.diagnostics.begin(), corpus.diagnostics.end());
        continue;
      }
      if (!fs::is_regular_file(p, ec)) {
        throw tcd::Error("IoError", "no such file or directory: '" + p.string() + "'");
      }
      auto [vocab, source] = tcd::resolve_vocabulary(p.parent_path(), opt_path(vocab_path));
      std::ifstream in(p, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      const auto name = p.filename().string();
      const auto path = p.generic_string();
      std::vector<tcd::Diagnostic> diags;
      if (name.size() > 6 && name.substr(name.size() - 6) == ".fs.md") {
        diags = tcd::parse_scenario(buf.str(), path).diagnostics;
      } else {
        diags = tcd::parse_test_case(buf.str(), vocab, path).diagnostics;
      }
      all.insert(all.end(), diags.begin(), diags.end());
    }
    if (error_count) {
      *error_count = static_cast<size_t>(std::count_if(all.begin(), all.end(), [](const auto& d) {
        return d.severity == tcd::Severity::Error;
      }));
    }
    emit(out, tcd::views::diagnostics(all));
  });
}

tcd_status tcd_corpus_open(const char* root, const char* vocab_path, const char* profiles_path,
                           tcd_corpus** out) {
  return guard([&] {
    require(root, "root");
    require(out, "out");
    tcd::SnapshotOptions options{fs::path(root), opt_path(vocab_path), opt_path(profiles_path)};
    *out = new tcd_corpus{tcd::Snapshot::load(options)};
  });
}

void tcd_corpus_close(tcd_corpus* corpus) { delete corpus; }

tcd_status tcd_corpus_summary(const tcd_corpus* corpus, char** out) {
  return guard([&] {
    require(corpus, "corpus");
    emit(out, tcd::views::corpus_summary(*corpus->snapshot));
  });
}

tcd_status tcd_corpus_vocabulary(const tcd_corpus* corpus, char** out) {
  return guard([&] {
    require(corpus, "corpus");
    emit(out, tcd::views::vocabulary(corpus->snapshot->corpus.vocabulary));
  });
}

tcd_status tcd_corpus_index_cache(const tcd_corpus* corpus, char** out) {
  return guard([&] {
    require(corpus, "corpus");
    emit(out, corpus->snapshot->index->to_cache_json());
  });
}

tcd_status tcd_testcases(const tcd_corpus* corpus, char** out) {
  return guard([&] {
    require(corpus, "corpus");
    emit(out, tcd::views::test_cases(*corpus->snapshot));
  });
}

tcd_status tcd_testcase(const tcd_corpus* corpus, const char* id, char** out) {
  return guard([&] {
    require(corpus, "corpus");
    require(id, "id");
    emit(out, tcd::views::test_case(*corpus->snapshot, id));
  });
}

tcd_status tcd_query(const tcd_corpus* corpus, const char* filter_json, int with_facet_counts,
                     char** out) {
  return guard([&] {
    require(corpus, "corpus");
    auto filter = tcd::json::filter_from_json(parse_arg(filter_json));
    emit(out, tcd::views::query(*corpus->snapshot, filter, with_facet_counts != 0));
  });
}

tcd_status tcd_similar(const tcd_corpus* corpus, const char* id, size_t k,
                       const char* weights_json, char** out) {
  return guard([&] {
    require(corpus, "corpus");
    require(id, "id");
    auto cfg = tcd::json::similarity_from_json(parse_arg(weights_json));
    emit(out, tcd::views::similar(*corpus->snapshot, id, k, cfg));
  });
}

tcd_status tcd_matrix(const tcd_corpus* corpus, const char* options_json, const char* format,
                      char** out) {
  return guard([&] {
    require(corpus, "corpus");
    auto j = parse_arg(options_json);
    tcd::MatrixOptions options;
    if (j.is_object()) {
      options.scope = tcd::Scope::parse(j.value("scope", std::string("all")));
      for (const auto& d : j.value("dimensions", std::vector<std::string>{})) {
        auto dim = tcd::parse_dimension(d);
        if (!dim) throw tcd::Error("InvalidArgument", "unknown dimension '" + d + "'");
        options.dimensions.push_back(*dim);
      }
      options.full_columns = j.value("full_columns", false);
    }
    emit(out, tcd::views::matrix(*corpus->snapshot, options,
                                 tcd::parse_format(format ? format : "json")));
  });
}

tcd_status tcd_gaps(const tcd_corpus* corpus, const char* options_json, const char* format,
                    char** out, int* has_findings) {
  return guard([&] {
    require(corpus, "corpus");
    auto j = parse_arg(options_json);
    tcd::GapConfig cfg;
    if (j.is_object()) {
      cfg.singleton_threshold = j.value("singleton_threshold", 1);
      cfg.similarity_floor = j.value("similarity_floor", 0.0);
      if (j.contains("weights")) cfg.similarity = tcd::json::similarity_from_json(j.at("weights"));
    }
    const auto& s = *corpus->snapshot;
    auto report = tcd::gap_report(s.corpus, *s.index, cfg);
    if (has_findings) *has_findings = report.has_findings() ? 1 : 0;
    emit(out, tcd::views::gaps(s, cfg, tcd::parse_format(format ? format : "json")));
  });
}

tcd_status tcd_profiles(const tcd_corpus* corpus, char** out) {
  return guard([&] {
    require(corpus, "corpus");
    emit(out, tcd::views::profiles(*corpus->snapshot));
  });
}

tcd_status tcd_profile_add(tcd_corpus* corpus, const char* profile_json, char** out) {
  return guard([&] {
    require(corpus, "corpus");
    require(profile_json, "profile_json");
    const auto& base = *corpus->snapshot;
    auto list = base.profiles;
    list.push_back(tcd::json::profile_from_json(nlohmann::json::parse(profile_json)));
    list = tcd::validate_profiles(base.corpus.vocabulary, std::move(list));
    tcd::save_profiles(list, base.profiles_path);
    auto next = base.with_profiles(std::move(list));
    auto body = tcd::json::dump(tcd::json::profile_to_json(next->profiles.back()));
    corpus->snapshot = std::move(next);
    emit(out, body);
  });
}

tcd_status tcd_profile_members(const tcd_corpus* corpus, const char* name, char** out) {
  return guard([&] {
    require(corpus, "corpus");
    require(name, "name");
    emit(out, tcd::views::profile_members(*corpus->snapshot, name));
  });
}

tcd_status tcd_benchmark_requirements(const tcd_corpus* corpus, const char* name, char** out) {
  return guard([&] {
    require(corpus, "corpus");
    require(name, "name");
    emit(out, tcd::views::benchmark_requirements(*corpus->snapshot, name));
  });
}

tcd_status tcd_capabilities(const tcd_corpus* corpus, const char* capability_json, char** out) {
  return guard([&] {
    require(corpus, "corpus");
    auto j = parse_arg(capability_json);
    tcd::CapabilitySet cap;
    if (j.is_object()) {
      cap.components = j.value("components", std::vector<std::string>{});
      if (j.contains("domains")) cap.domains = j.at("domains").get<std::vector<std::string>>();
    }
    emit(out, tcd::views::capabilities(*corpus->snapshot, cap));
  });
}

tcd_status tcd_serve(const char* root, const char* vocab_path, const char* profiles_path,
                     const char* static_dir, const char* address) {
  return guard([&] {
    require(root, "root");
    auto [host, port] = tcd::parse_address(address ? address : "127.0.0.1:8080");
    tcd::ServiceOptions options;
    options.snapshot = tcd::SnapshotOptions{fs::path(root), opt_path(vocab_path), opt_path(profiles_path)};
    options.static_dir = opt_path(static_dir);
    tcd::Service service(std::move(options));
    const int bound = service.bind(host, port);
    std::cerr << "serving " << root << " on http://" << host << ":" << bound << "\n";
    service.run();
  });
}

}  // extern "C"
