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


#include <doctest.h>

#include <fstream>

#include "test_support.hpp"
#include "zacq/error.hpp"
#include "zacq/store.hpp"

namespace zacq {
namespace {

SessionRecord record(std::string id, std::string query) {
  SessionRecord r;
  r.id = std::move(id);
  r.created = r.updated = utc_timestamp();
  r.session = {{"version", 1}, {"query", query}, {"method", "zacq"}, {"answers", nlohmann::json::array()}};
  r.events.push_back({r.created, "query", {{"query", query}}});
  return r;
}

TEST_CASE("records round-trip through JSON") {
  const SessionRecord r = record("ab12", "read file");
  const nlohmann::json j = to_json(r);
  const SessionRecord back = session_record_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  CHECK_THROWS_AS(session_record_from_json(nlohmann::json{{"id", "x"}}), Error);
  nlohmann::json bad_event = j;
  bad_event["events"][0]["kind"] = "scroll";
  CHECK_THROWS_AS(session_record_from_json(bad_event), Error);
}

TEST_CASE("the newest snapshot of each session wins") {
  testing::TempDir dir;
  SessionStore store(dir.path() / "sessions.jsonl");
  CHECK(store.load().empty());
  store.append(record("a", "one"));
  store.append(record("b", "two"));
  store.append(record("a", "three"));
  const auto loaded = store.load();
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].id == "a");
  CHECK(loaded[0].session["query"] == "three");
  CHECK(loaded[1].id == "b");
}

TEST_CASE("corrupt lines are skipped with a warning") {
  testing::TempDir dir;
  const auto path = dir.path() / "sessions.jsonl";
  {
    SessionStore store(path);
    store.append(record("a", "one"));
  }
  {
    std::ofstream out(path, std::ios::app);
    out << "{\"id\": \"broken\", \n";
    out << "\n";
    out << "[1, 2, 3]\n";
  }
  SessionStore store(path);
  store.append(record("c", "three"));
  std::vector<std::string> warnings;
  const auto loaded = store.load(&warnings);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].id == "a");
  CHECK(loaded[1].id == "c");
  REQUIRE(warnings.size() == 2);
  CHECK(warnings[0].find(":2: skipped") != std::string::npos);
  CHECK(warnings[1].find(":4: skipped") != std::string::npos);
}

TEST_CASE("an in-memory store keeps nothing") {
  SessionStore store;
  store.append(record("a", "one"));
  CHECK(store.load().empty());
}

TEST_CASE("event kinds") {
  CHECK(is_event_kind("page_change"));
  CHECK_FALSE(is_event_kind("click"));
  const std::string ts = utc_timestamp();
  CHECK(ts.size() == 24);
  CHECK(ts.back() == 'Z');
}

}  // namespace
}  // namespace zacq
