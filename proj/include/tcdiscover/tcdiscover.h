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

/*
 * tcdiscover C API.
 *
 * All functions return a tcd_status. On failure, tcd_last_error() and
 * tcd_last_error_code() describe the error raised on the calling thread.
 * Output strings are UTF-8, heap-allocated by the library and must be
 * released with tcd_free(). Structured arguments are passed as JSON text
 * using the same shapes as the HTTP API.
 *
 * A tcd_corpus is an immutable snapshot and may be shared between threads,
 * except that tcd_profile_add() requires exclusive access.
 */
#ifndef TCDISCOVER_H
#define TCDISCOVER_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(TCD_BUILDING_LIBRARY)
#    define TCD_API __declspec(dllexport)
#  else
#    define TCD_API __declspec(dllimport)
#  endif
#else
#  define TCD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tcd_status {
  TCD_OK = 0,
  TCD_E_INVALID_ARGUMENT = 1,
  TCD_E_IO = 2,
  TCD_E_SYNTAX = 3,
  TCD_E_UNKNOWN_KEYWORD = 4,
  TCD_E_UNKNOWN_ID = 5,
  TCD_E_UNKNOWN_SCOPE = 6,
  TCD_E_UNKNOWN_PROFILE = 7,
  TCD_E_DUPLICATE = 8,
  TCD_E_INVALID_CONFIG = 9,
  TCD_E_INTERNAL = 10
} tcd_status;

typedef struct tcd_corpus tcd_corpus;
typedef struct tcd_vocabulary tcd_vocabulary;

TCD_API const char* tcd_version(void);
TCD_API const char* tcd_status_name(tcd_status status);

/* Last error on this thread; empty strings when none. */
TCD_API const char* tcd_last_error(void);
TCD_API const char* tcd_last_error_code(void);
/* {"code": ..., "message": ..., "suggestions": [...]} */
TCD_API const char* tcd_last_error_json(void);

TCD_API void tcd_free(char* s);

/* Vocabulary. With path == NULL the lookup order is corpus_root/vocabulary.tcv
 * (when corpus_root != NULL), $TC_DISCOVER_VOCAB, then the built-in default. */
TCD_API tcd_status tcd_vocabulary_open(const char* corpus_root, const char* path,
                                       tcd_vocabulary** out);
TCD_API void tcd_vocabulary_close(tcd_vocabulary* vocab);
TCD_API tcd_status tcd_vocabulary_json(const tcd_vocabulary* vocab, char** out);
TCD_API tcd_status tcd_vocabulary_text(const tcd_vocabulary* vocab, char** out);
/* Resolves keyword against every dimension: matches plus suggestions. */
TCD_API tcd_status tcd_vocabulary_lookup(const tcd_vocabulary* vocab, const char* keyword,
                                         char** out);

/* Lints files and directories. Writes a diagnostics JSON document and the
 * number of Error diagnostics. */
TCD_API tcd_status tcd_lint(const char* const* paths, size_t count, const char* vocab_path,
                            char** out, size_t* error_count);

/* Corpus snapshot. vocab_path and profiles_path may be NULL. */
TCD_API tcd_status tcd_corpus_open(const char* root, const char* vocab_path,
                                   const char* profiles_path, tcd_corpus** out);
TCD_API void tcd_corpus_close(tcd_corpus* corpus);
TCD_API tcd_status tcd_corpus_summary(const tcd_corpus* corpus, char** out);
TCD_API tcd_status tcd_corpus_vocabulary(const tcd_corpus* corpus, char** out);
TCD_API tcd_status tcd_corpus_index_cache(const tcd_corpus* corpus, char** out);

TCD_API tcd_status tcd_testcases(const tcd_corpus* corpus, char** out);
TCD_API tcd_status tcd_testcase(const tcd_corpus* corpus, const char* id, char** out);

/* filter_json: {"domain": {"mode": "all", "keywords": [...]}, ...} or NULL. */
TCD_API tcd_status tcd_query(const tcd_corpus* corpus, const char* filter_json,
                             int with_facet_counts, char** out);

/* weights_json: {"domain": 2, ...} or NULL for equal weights. */
TCD_API tcd_status tcd_similar(const tcd_corpus* corpus, const char* id, size_t k,
                               const char* weights_json, char** out);

/* options_json: {"scope": "all"|"fs:ID"|"profile:NAME", "dimensions": [...],
 * "full_columns": bool} or NULL. format: "md", "csv" or "json". */
TCD_API tcd_status tcd_matrix(const tcd_corpus* corpus, const char* options_json,
                              const char* format, char** out);

/* options_json: {"singleton_threshold": N, "similarity_floor": X,
 * "weights": {...}} or NULL. has_findings may be NULL. */
TCD_API tcd_status tcd_gaps(const tcd_corpus* corpus, const char* options_json, const char* format,
                            char** out, int* has_findings);

TCD_API tcd_status tcd_profiles(const tcd_corpus* corpus, char** out);
/* Validates, appends and persists a profile to the corpus profile store. */
TCD_API tcd_status tcd_profile_add(tcd_corpus* corpus, const char* profile_json, char** out);
TCD_API tcd_status tcd_profile_members(const tcd_corpus* corpus, const char* name, char** out);
TCD_API tcd_status tcd_benchmark_requirements(const tcd_corpus* corpus, const char* name,
                                              char** out);

/* capability_json: {"components": [...], "domains": [...]?} */
TCD_API tcd_status tcd_capabilities(const tcd_corpus* corpus, const char* capability_json,
                                    char** out);

/* Runs the HTTP service until the process is terminated. */
TCD_API tcd_status tcd_serve(const char* root, const char* vocab_path, const char* profiles_path,
                             const char* static_dir, const char* address);

#ifdef __cplusplus
}
#endif

#endif /* TCDISCOVER_H */
