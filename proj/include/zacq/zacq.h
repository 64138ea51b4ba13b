/*
 * Copyright 2026 The ZaCQ Authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef ZACQ_ZACQ_H_
#define ZACQ_ZACQ_H_

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define ZACQ_API __attribute__((visibility("default")))
#else
#define ZACQ_API
#endif

typedef enum zacq_status {
  ZACQ_OK = 0,
  ZACQ_ERR_INVALID_ARGUMENT = 1,
  ZACQ_ERR_IO = 2,
  ZACQ_ERR_PARSE = 3,
  ZACQ_ERR_NOT_FOUND = 4,
  ZACQ_ERR_STATE = 5,
  ZACQ_ERR_UNKNOWN_METHOD = 6,
  ZACQ_ERR_PORT_IN_USE = 7,
  ZACQ_ERR_INTERNAL = 8
} zacq_status;

typedef struct zacq_engine zacq_engine;
typedef struct zacq_session zacq_session;

ZACQ_API const char* zacq_version(void);
/* Message of the last failing call on this thread; "" after success. */
ZACQ_API const char* zacq_last_error(void);
ZACQ_API const char* zacq_status_name(zacq_status status);
/* Frees strings returned through char** out-parameters. */
ZACQ_API void zacq_string_free(char* s);

/* lexicon_dir may be NULL to use the built-in default. */
ZACQ_API zacq_status zacq_engine_open_corpus(const char* corpus_path, const char* lexicon_dir, zacq_engine** out);
ZACQ_API zacq_status zacq_engine_open_index(const char* index_dir, const char* lexicon_dir, zacq_engine** out);
ZACQ_API zacq_status zacq_engine_save_index(const zacq_engine* engine, const char* index_dir);
ZACQ_API size_t zacq_engine_size(const zacq_engine* engine);
ZACQ_API void zacq_engine_free(zacq_engine* engine);

/* [{"rank":1,"id":...,"score":...,"name":...}, ...] */
ZACQ_API zacq_status zacq_search_json(const zacq_engine* engine, const char* query, size_t k, char** out_json);

/* method: "zacq", "vdo" or "kw"; config_json may be NULL for defaults. The
   engine must outlive the session. */
ZACQ_API zacq_status zacq_session_create(const zacq_engine* engine, const char* query, const char* method,
                                         const char* config_json, zacq_session** out);
/* Writes 1 when refinement is finished, else 0. */
ZACQ_API zacq_status zacq_session_done(const zacq_session* session, int* out_done);
/* {"kind","text","options",...} or "null" once done. */
ZACQ_API zacq_status zacq_session_question_json(const zacq_session* session, char** out_json);
/* {"kind":"selected","option":"..."} or {"kind":"none"|"yes"|"no"} */
ZACQ_API zacq_status zacq_session_answer_json(zacq_session* session, const char* answer_json);
ZACQ_API zacq_status zacq_session_results_json(const zacq_session* session, char** out_json);
ZACQ_API zacq_status zacq_session_transcript_json(const zacq_session* session, char** out_json);
/* Serialized state accepted by zacq_session_restore. */
ZACQ_API zacq_status zacq_session_save_json(const zacq_session* session, char** out_json);
ZACQ_API zacq_status zacq_session_restore(const zacq_engine* engine, const char* saved_json, zacq_session** out);
ZACQ_API void zacq_session_free(zacq_session* session);

/* Runs the simulated evaluation. methods is a comma list; grid_path may be
   NULL. With out_dir set, reports are written there. out_json receives the
   round table (or grid summary) as JSON and may be NULL. */
ZACQ_API zacq_status zacq_eval_run(const zacq_engine* engine, const char* judgments_path, const char* methods,
                                   const char* grid_path, size_t max_rounds, const char* out_dir, char** out_json);

/* Serves the HTTP API until the process exits. store_path may be NULL. */
ZACQ_API zacq_status zacq_serve(const zacq_engine* engine, const char* host, int port, const char* store_path);

#ifdef __cplusplus
}
#endif

#endif /* ZACQ_ZACQ_H_ */
