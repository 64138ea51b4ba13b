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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "zacq/zacq.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kData = ZACQ_TEST_DATA_DIR;
const std::string kFig4 = kData + "/fixtures/fig4/corpus.jsonl";
const std::string kLexicon = kData + "/lexicon";

// Takes ownership of a returned string.
json take_json(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  zacq_string_free(s);
  return j;
}

struct Engine {
  zacq_engine* ptr = nullptr;
  explicit Engine(const std::string& corpus = kFig4) {
    REQUIRE(zacq_engine_open_corpus(corpus.c_str(), kLexicon.c_str(), &ptr) == ZACQ_OK);
  }
  ~Engine() { zacq_engine_free(ptr); }
};

struct Scratch {
  fs::path path;
  Scratch() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("zacq_capi_" + std::to_string(getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~Scratch() { fs::remove_all(path); }
};

TEST_CASE("version and status names") {
  CHECK(std::string(zacq_version()).size() > 0);
  CHECK(std::string(zacq_status_name(ZACQ_OK)) == "ok");
  CHECK(std::string(zacq_status_name(ZACQ_ERR_PORT_IN_USE)).size() > 0);
}

TEST_CASE("open failures report a status and a message") {
  zacq_engine* engine = nullptr;
  CHECK(zacq_engine_open_corpus("/nonexistent/corpus.jsonl", kLexicon.c_str(), &engine) == ZACQ_ERR_IO);
  CHECK(engine == nullptr);
  CHECK(std::string(zacq_last_error()).find("nonexistent") != std::string::npos);
  CHECK(zacq_engine_open_index("/nonexistent/index", kLexicon.c_str(), &engine) == ZACQ_ERR_IO);
  CHECK(zacq_engine_open_corpus(nullptr, nullptr, &engine) == ZACQ_ERR_INVALID_ARGUMENT);

  Scratch dir;
  const auto bad = dir.path / "bad.jsonl";
  std::ofstream(bad) << "{\"id\": \n";
  CHECK(zacq_engine_open_corpus(bad.c_str(), kLexicon.c_str(), &engine) == ZACQ_ERR_PARSE);
}

TEST_CASE("search returns ranked JSON") {
  Engine e;
  CHECK(zacq_engine_size(e.ptr) > 24);
  CHECK(std::string(zacq_last_error()).empty());
  char* out = nullptr;
  REQUIRE(zacq_search_json(e.ptr, "convert integer to text", 10, &out) == ZACQ_OK);
  const json hits = take_json(out);
  REQUIRE(hits.size() == 10);
  CHECK(hits[0]["rank"] == 1);
  CHECK(hits[2]["id"] == "f03");
  CHECK(hits[0]["score"].get<double>() >= hits[9]["score"].get<double>());

  REQUIRE(zacq_search_json(e.ptr, "convert", 100000, &out) == ZACQ_OK);
  CHECK(take_json(out).size() == zacq_engine_size(e.ptr));
}

TEST_CASE("index round trip gives the same ranking") {
  Engine e;
  Scratch dir;
  REQUIRE(zacq_engine_save_index(e.ptr, dir.path.c_str()) == ZACQ_OK);
  zacq_engine* loaded = nullptr;
  REQUIRE(zacq_engine_open_index(dir.path.c_str(), kLexicon.c_str(), &loaded) == ZACQ_OK);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(zacq_search_json(e.ptr, "convert integer to text", 30, &a) == ZACQ_OK);
  REQUIRE(zacq_search_json(loaded, "convert integer to text", 30, &b) == ZACQ_OK);
  CHECK(std::string(a) == std::string(b));
  zacq_string_free(a);
  zacq_string_free(b);
  zacq_engine_free(loaded);
}

TEST_CASE("session flow on the worked example") {
  Engine e;
  zacq_session* s = nullptr;
  REQUIRE(zacq_session_create(e.ptr, "convert integer to text", "zacq", nullptr, &s) == ZACQ_OK);
  char* out = nullptr;
  REQUIRE(zacq_session_question_json(s, &out) == ZACQ_OK);
  const json q = take_json(out);
  CHECK(q["text"] == "What kind of value are you interested in converting int to?");

  CHECK(zacq_session_answer_json(s, R"({"kind":"selected","option":"integer"})") == ZACQ_ERR_INVALID_ARGUMENT);
  CHECK(zacq_session_answer_json(s, "{oops") == ZACQ_ERR_PARSE);

  REQUIRE(zacq_session_save_json(s, &out) == ZACQ_OK);
  const std::string saved = out;
  zacq_string_free(out);

  REQUIRE(zacq_session_answer_json(s, R"({"kind":"selected","option":"string"})") == ZACQ_OK);
  int done = 0;
  REQUIRE(zacq_session_done(s, &done) == ZACQ_OK);
  CHECK(done == 1);
  REQUIRE(zacq_session_results_json(s, &out) == ZACQ_OK);
  CHECK(take_json(out)[0]["id"] == "f10");
  REQUIRE(zacq_session_question_json(s, &out) == ZACQ_OK);
  CHECK(take_json(out).is_null());
  CHECK(zacq_session_answer_json(s, R"({"kind":"none"})") == ZACQ_ERR_STATE);

  zacq_session* restored = nullptr;
  REQUIRE(zacq_session_restore(e.ptr, saved.c_str(), &restored) == ZACQ_OK);
  REQUIRE(zacq_session_done(restored, &done) == ZACQ_OK);
  CHECK(done == 0);
  REQUIRE(zacq_session_answer_json(restored, R"({"kind":"selected","option":"string"})") == ZACQ_OK);
  char* t1 = nullptr;
  char* t2 = nullptr;
  REQUIRE(zacq_session_transcript_json(s, &t1) == ZACQ_OK);
  REQUIRE(zacq_session_transcript_json(restored, &t2) == ZACQ_OK);
  CHECK(take_json(t1) == take_json(t2));

  zacq_session_free(restored);
  zacq_session_free(s);
}

TEST_CASE("unknown method and bad config") {
  Engine e;
  zacq_session* s = nullptr;
  CHECK(zacq_session_create(e.ptr, "read file", "bm25", nullptr, &s) == ZACQ_ERR_UNKNOWN_METHOD);
  CHECK(s == nullptr);
  CHECK(zacq_session_create(e.ptr, "read file", "zacq", "[1,", &s) == ZACQ_ERR_PARSE);
  CHECK(zacq_session_restore(e.ptr, "{}", &s) != ZACQ_OK);
  CHECK(std::string(zacq_last_error()).size() > 0);
}

TEST_CASE("eval writes reports") {
  Engine e(kData + "/toy/corpus.jsonl");
  Scratch dir;
  const std::string judgments = kData + "/toy/judgments.csv";
  char* out = nullptr;
  REQUIRE(zacq_eval_run(e.ptr, judgments.c_str(), "zacq,vdo", nullptr, 3, dir.path.c_str(), &out) == ZACQ_OK);
  const json report = take_json(out);
  CHECK(report["csv"].get<std::string>().rfind("method,round", 0) == 0);
  CHECK(fs::exists(dir.path / "rounds.csv"));
  CHECK(fs::exists(dir.path / "queries.csv"));
  CHECK(fs::exists(dir.path / "report.json"));

  CHECK(zacq_eval_run(e.ptr, judgments.c_str(), "zacq,nope", nullptr, 3, nullptr, nullptr) ==
        ZACQ_ERR_UNKNOWN_METHOD);
  CHECK(zacq_eval_run(e.ptr, "/nonexistent.csv", "zacq", nullptr, 3, nullptr, nullptr) == ZACQ_ERR_IO);

  const std::string grid = kData + "/toy/grid.json";
  REQUIRE(zacq_eval_run(e.ptr, judgments.c_str(), "zacq", grid.c_str(), 2, dir.path.c_str(), &out) == ZACQ_OK);
  const json summary = take_json(out);
  CHECK(summary["configs"].size() == 12);
  CHECK(summary.contains("best"));
  CHECK(fs::exists(dir.path / "grid.csv"));
}

TEST_CASE("serve rejects a bad port") {
  Engine e;
  CHECK(zacq_serve(e.ptr, nullptr, 70000, nullptr) == ZACQ_ERR_INVALID_ARGUMENT);
}

}  // namespace
