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

#include "test_support.hpp"

namespace zacq {
namespace {

using testing::lexicon;
using testing::task;

std::vector<std::string> rendered(std::string_view sentence) {
  std::vector<std::string> out;
  for (const Task& t : filter_generic(extract_tasks(sentence, lexicon()), lexicon())) out.push_back(render_task(t));
  return out;
}

TEST_CASE("verb lemmas and gerunds") {
  CHECK(verb_lemma("converts", lexicon()) == "convert");
  CHECK(verb_lemma("copies", lexicon()) == "copy");
  CHECK(verb_lemma("reading", lexicon()) == "read");
  CHECK_FALSE(verb_lemma("table", lexicon()).has_value());
  CHECK(gerund("convert", lexicon()) == "converting");
  CHECK(gerund("get", lexicon()) == "getting");
  CHECK(gerund("change", lexicon()) == "changing");
  CHECK(gerund("copy", lexicon()) == "copying");
}

TEST_CASE("task phrases from the worked example") {
  CHECK(rendered("Converts int to string value.") == std::vector<std::string>{"convert int to string value"});
  CHECK(rendered("display text to screen") == std::vector<std::string>{"display text to screen"});
  CHECK(rendered("Converts text to integer.") == std::vector<std::string>{"convert text to integer"});
}

TEST_CASE("roles are assigned to the right slots") {
  const auto tasks = extract_tasks("Copies a file to the target directory", lexicon());
  REQUIRE(tasks.size() == 1);
  CHECK(tasks[0] == task("copy", "file", "to", "directory", "", "target"));
  CHECK(tasks[0].valid());

  const auto q = extract_query_task("convert integer to text", lexicon());
  REQUIRE(q);
  CHECK(*q == task("convert", "integer", "to", "text"));
}

TEST_CASE("conjoined clauses yield several tasks") {
  CHECK(rendered("Reads all lines from the given file and returns them.").front() == "read lines from file");
}

TEST_CASE("generic verbs and objects are dropped") {
  for (const Task& t : filter_generic({task("do", "it"), task("sort", "list")}, lexicon())) {
    CHECK(t == task("sort", "list"));
  }
}

TEST_CASE("function tasks combine name and comment without duplicates") {
  const auto d = testing::doc("f", "intToStringValue", "Converts int to string value.");
  const auto tasks = extract_function_tasks(d, lexicon());
  REQUIRE(tasks.size() == 1);
  CHECK(render_task(tasks[0]) == "convert int to string value");
}

TEST_CASE("render_task orders roles") {
  CHECK(render_task(task("convert", "int", "to", "value", "", "string")) == "convert int to string value");
  CHECK(render_task(task("read", "file", "", "", "config")) == "read config file");
  CHECK_FALSE(task("read", "").valid());
  CHECK(task("go", "", "to", "page").valid());
}

TEST_CASE("task table indexes values by role") {
  TaskTable table({{"a", task("read", "file")}, {"b", task("read", "line")}, {"a", task("write", "file")}});
  CHECK(table.function_ids() == std::vector<std::string>{"a", "b"});
  CHECK(table.functions_with(Role::kV, "read") == std::set<std::string>{"a", "b"});
  CHECK(table.functions_with(Role::kDo, "file") == std::set<std::string>{"a"});
  CHECK(table.functions_with(Role::kDo, "none").empty());
  CHECK(table.rows_for("a").size() == 2);
  CHECK(table.has_tasks("b"));
  CHECK_FALSE(table.has_tasks("c"));
}

TEST_CASE("tagger marks prepositions, determiners and boundaries") {
  const auto tags = tokenize_and_tag("Converts int to string value.", lexicon());
  REQUIRE(tags.size() == 6);
  CHECK(tags[0].tag == Tag::kVerb);
  CHECK(tags[0].lemma == "convert");
  CHECK(tags[2].tag == Tag::kPrep);
  CHECK(tags[5].tag == Tag::kBoundary);
}

}  // namespace
}  // namespace zacq
