// Copyright 2026 The ZaCQ Authors. All rights reserved.
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


#include "zacq/zacq.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "zacq/error.hpp"
#include "zacq/eval.hpp"
#include "zacq/service.hpp"
#include "zacq/session.hpp"

#ifndef ZACQ_DEFAULT_LEXICON_DIR
#define ZACQ_DEFAULT_LEXICON_DIR "data/lexicon"
#endif

struct zacq_engine {
  zacq::Engine engine;
};

struct zacq_session {
  const zacq_engine* owner;
  zacq::Session session;
};

namespace {

thread_local std::string g_last_error;

zacq_status to_status(zacq::ErrorCode code) {
  switch (code) {
    case zacq::ErrorCode::kInvalidArgument: return ZACQ_ERR_INVALID_ARGUMENT;
    case zacq::ErrorCode::kIo: return ZACQ_ERR_IO;
    case zacq::ErrorCode::kParse: return ZACQ_ERR_PARSE;
    case zacq::ErrorCode::kNotFound: return ZACQ_ERR_NOT_FOUND;
    case zacq::ErrorCode::kState: return ZACQ_ERR_STATE;
    case zacq::ErrorCode::kUnknownMethod: return ZACQ_ERR_UNKNOWN_METHOD;
    case zacq::ErrorCode::kPortInUse: return ZACQ_ERR_PORT_IN_USE;
    case zacq::ErrorCode::kInternal: return ZACQ_ERR_INTERNAL;
  }
  return ZACQ_ERR_INTERNAL;
}

template <typename Fn>
zacq_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return ZACQ_OK;
  } catch (const zacq::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return ZACQ_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ZACQ_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ZACQ_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw zacq::Error(zacq::ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

zacq::Lexicon lexicon_from(const char* dir) {
  std::filesystem::path path;
  if (dir != nullptr && *dir != '\0') {
    path = dir;
  } else if (const char* env = std::getenv("ZACQ_LEXICON_DIR"); env != nullptr && *env != '\0') {
    path = env;
  } else {
    path = ZACQ_DEFAULT_LEXICON_DIR;
  }
  if (!std::filesystem::is_directory(path)) {
    throw zacq::Error(zacq::ErrorCode::kIo, "lexicon directory " + path.string() + " not found");
  }
  return zacq::Lexicon::load(path);
}

nlohmann::json ranking_json(const zacq::Engine& engine, const zacq::RankedResults& r) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    nlohmann::json row = {{"rank", i + 1}, {"id", r.items[i].function_id}, {"score", r.items[i].score}};
    if (const auto* doc = engine.corpus().find(r.items[i].function_id)) row["name"] = doc->name;
    out.push_back(std::move(row));
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw zacq::Error(zacq::ErrorCode::kIo, "cannot write " + path.string());
}

}  // namespace

extern "C" {

const char* zacq_version(void) { return "0.1.0"; }

const char* zacq_last_error(void) { return g_last_error.c_str(); }

const char* zacq_status_name(zacq_status status) {
  switch (status) {
    case ZACQ_OK: return "ok";
    case ZACQ_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ZACQ_ERR_IO: return "i/o error";
    case ZACQ_ERR_PARSE: return "parse error";
    case ZACQ_ERR_NOT_FOUND: return "not found";
    case ZACQ_ERR_STATE: return "invalid state";
    case ZACQ_ERR_UNKNOWN_METHOD: return "unknown method";
    case ZACQ_ERR_PORT_IN_USE: return "port in use";
    case ZACQ_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void zacq_string_free(char* s) { std::free(s); }

zacq_status zacq_engine_open_corpus(const char* corpus_path, const char* lexicon_dir, zacq_engine** out) {
  return guarded([&] {
    require(corpus_path != nullptr && out != nullptr, "corpus path and output handle are required");
    *out = nullptr;
    auto engine = zacq::Engine::from_corpus(zacq::load_corpus(corpus_path), lexicon_from(lexicon_dir));
    *out = new zacq_engine{std::move(engine)};
  });
}

zacq_status zacq_engine_open_index(const char* index_dir, const char* lexicon_dir, zacq_engine** out) {
  return guarded([&] {
    require(index_dir != nullptr && out != nullptr, "index directory and output handle are required");
    *out = nullptr;
    auto engine = zacq::Engine::open_index_dir(index_dir, lexicon_from(lexicon_dir));
    *out = new zacq_engine{std::move(engine)};
  });
}

zacq_status zacq_engine_save_index(const zacq_engine* engine, const char* index_dir) {
  return guarded([&] {
    require(engine != nullptr && index_dir != nullptr, "engine and directory are required");
    engine->engine.save(index_dir);
  });
}

size_t zacq_engine_size(const zacq_engine* engine) { return engine == nullptr ? 0 : engine->engine.corpus().size(); }

void zacq_engine_free(zacq_engine* engine) { delete engine; }

zacq_status zacq_search_json(const zacq_engine* engine, const char* query, size_t k, char** out_json) {
  return guarded([&] {
    require(engine != nullptr && query != nullptr && out_json != nullptr, "engine, query and output are required");
    *out_json = dup_string(ranking_json(engine->engine, engine->engine.search(query, k)).dump());
  });
}

zacq_status zacq_session_create(const zacq_engine* engine, const char* query, const char* method,
                                const char* config_json, zacq_session** out) {
  return guarded([&] {
    require(engine != nullptr && query != nullptr && out != nullptr, "engine, query and output are required");
    *out = nullptr;
    const zacq::Method m = zacq::parse_method(method == nullptr ? "zacq" : method);
    zacq::RefineConfig config;
    if (config_json != nullptr) config = zacq::refine_config_from_json(nlohmann::json::parse(config_json));
    *out = new zacq_session{engine, zacq::Session::start(engine->engine, query, m, config)};
  });
}

zacq_status zacq_session_done(const zacq_session* session, int* out_done) {
  return guarded([&] {
    require(session != nullptr && out_done != nullptr, "session and output are required");
    *out_done = session->session.done() ? 1 : 0;
  });
}

zacq_status zacq_session_question_json(const zacq_session* session, char** out_json) {
  return guarded([&] {
    require(session != nullptr && out_json != nullptr, "session and output are required");
    const auto& q = session->session.question();
    *out_json = dup_string(q ? zacq::to_json(*q).dump() : "null");
  });
}

zacq_status zacq_session_answer_json(zacq_session* session, const char* answer_json) {
  return guarded([&] {
    require(session != nullptr && answer_json != nullptr, "session and answer are required");
    const auto parsed = nlohmann::json::parse(answer_json, nullptr, false);
    if (parsed.is_discarded()) throw zacq::Error(zacq::ErrorCode::kParse, "answer is not valid JSON");
    session->session.answer(zacq::answer_from_json(parsed));
  });
}

zacq_status zacq_session_results_json(const zacq_session* session, char** out_json) {
  return guarded([&] {
    require(session != nullptr && out_json != nullptr, "session and output are required");
    *out_json = dup_string(ranking_json(session->owner->engine, session->session.ranking()).dump());
  });
}

zacq_status zacq_session_transcript_json(const zacq_session* session, char** out_json) {
  return guarded([&] {
    require(session != nullptr && out_json != nullptr, "session and output are required");
    *out_json = dup_string(session->session.transcript().dump());
  });
}

zacq_status zacq_session_save_json(const zacq_session* session, char** out_json) {
  return guarded([&] {
    require(session != nullptr && out_json != nullptr, "session and output are required");
    *out_json = dup_string(session->session.to_json().dump());
  });
}

zacq_status zacq_session_restore(const zacq_engine* engine, const char* saved_json, zacq_session** out) {
  return guarded([&] {
    require(engine != nullptr && saved_json != nullptr && out != nullptr, "engine, state and output are required");
    *out = nullptr;
    const auto parsed = nlohmann::json::parse(saved_json, nullptr, false);
    if (parsed.is_discarded()) throw zacq::Error(zacq::ErrorCode::kParse, "saved session is not valid JSON");
    *out = new zacq_session{engine, zacq::Session::restore(engine->engine, parsed)};
  });
}

void zacq_session_free(zacq_session* session) { delete session; }

zacq_status zacq_eval_run(const zacq_engine* engine, const char* judgments_path, const char* methods,
                          const char* grid_path, size_t max_rounds, const char* out_dir, char** out_json) {
  return guarded([&] {
    require(engine != nullptr && judgments_path != nullptr, "engine and judgments are required");
    if (out_json != nullptr) *out_json = nullptr;
    const auto method_list = zacq::parse_methods(methods == nullptr ? "zacq,vdo,kw" : methods);
    const auto judgments = zacq::load_judgments(judgments_path);
    if (out_dir != nullptr) {
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      if (ec) throw zacq::Error(zacq::ErrorCode::kIo, std::string("cannot create ") + out_dir + ": " + ec.message());
    }
    const std::filesystem::path dir = out_dir == nullptr ? "" : out_dir;

    nlohmann::json summary;
    std::ostringstream csv;
    if (grid_path != nullptr) {
      std::ifstream in(grid_path);
      if (!in) throw zacq::Error(zacq::ErrorCode::kIo, std::string("cannot open grid file ") + grid_path);
      const auto grid = nlohmann::json::parse(in, nullptr, false);
      if (grid.is_discarded()) throw zacq::Error(zacq::ErrorCode::kParse, std::string(grid_path) + " is not valid JSON");
      const auto configs = zacq::expand_grid(grid);
      const auto result = zacq::grid_search(engine->engine, judgments, method_list, configs, max_rounds);
      zacq::write_grid_csv(result, csv);
      const auto full = zacq::grid_json(result);
      summary = {{"configs", full["configs"]}, {"best", full["best"]}};
      if (!dir.empty()) {
        write_file(dir / "grid.csv", csv.str());
        write_file(dir / "grid.json", full.dump(2) + "\n");
      }
    } else {
      const auto report = zacq::evaluate(engine->engine, judgments, method_list, zacq::RefineConfig{}, max_rounds);
      zacq::write_rounds_csv(report, csv);
      summary = zacq::report_json(report);
      if (!dir.empty()) {
        std::ostringstream per_query;
        zacq::write_queries_csv(report, per_query);
        write_file(dir / "rounds.csv", csv.str());
        write_file(dir / "queries.csv", per_query.str());
        write_file(dir / "report.json", summary.dump(2) + "\n");
      }
    }
    summary["csv"] = csv.str();
    if (out_json != nullptr) *out_json = dup_string(summary.dump());
  });
}

zacq_status zacq_serve(const zacq_engine* engine, const char* host, int port, const char* store_path) {
  return guarded([&] {
    require(engine != nullptr, "engine is required");
    require(port > 0 && port < 65536, "port must lie in 1..65535");
    zacq::ServiceOptions options;
    if (store_path != nullptr) options.store_path = store_path;
    zacq::serve(engine->engine, options, host == nullptr ? "127.0.0.1" : host, port);
  });
}

}  // extern "C"
