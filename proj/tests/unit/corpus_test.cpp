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

#include <sstream>

#include "test_support.hpp"
#include "zacq/error.hpp"

namespace zacq {
namespace {

using Tokens = std::vector<std::string>;

TEST_CASE("identifiers split on case, underscores and digits") {
  CHECK(split_identifier("toUTF8String") == Tokens{"to", "utf", "8", "string"});
  CHECK(split_identifier("parse_http_header") == Tokens{"parse", "http", "header"});
  CHECK(split_identifier("XMLHttpRequest") == Tokens{"xml", "http", "request"});
  CHECK(split_identifier("intToStringValue") == Tokens{"int", "to", "string", "value"});
  CHECK(split_identifier("__init__") == Tokens{"init"});
  CHECK(split_identifier("").empty());
}

TEST_CASE("comments are normalized to their first sentence") {
  CHECK(normalize_comment("Converts int to string value. Handles negatives.") == "Converts int to string value.");
  CHECK(normalize_comment("Returns {@code true} when\n   the list is empty.\n@param xs list") ==
        "Returns true when the list is empty.");
  CHECK(normalize_comment("Version 1.5 parser.") == "Version 1.5 parser.");
  CHECK(normalize_comment("<p>Reads a <b>file</b>.</p>") == "Reads a file.");
  CHECK(normalize_comment("   ").empty());
}

TEST_CASE("preprocessing joins name tokens and the first comment sentence") {
  const auto d = testing::doc("x", "intToStringValue", "Converts int to string value. More text.");
  CHECK(preprocess_doc(d) == "int to string value. Converts int to string value.");
}

TEST_CASE("corpus lines accept generic and CodeSearchNet field names") {
  std::istringstream in(
      R"({"id": "a", "name": "readFile", "comment": "Reads a file.", "code": "x", "language": "java"})"
      "\n\n"
      R"({"func_name": "Util.write_file", "docstring": "Writes.", "code": "y", "language": "python", "url": "u"})"
      "\n");
  const Corpus c = parse_corpus_jsonl(in);
  REQUIRE(c.size() == 2);
  CHECK(c.docs()[0].language == Language::kJava);
  CHECK(c.docs()[1].name == "write_file");
  CHECK(c.docs()[1].comment == "Writes.");
  CHECK(c.docs()[1].url == "u");
  CHECK_FALSE(c.docs()[1].id.empty());
  CHECK(c.find("a") != nullptr);
  CHECK(c.find("missing") == nullptr);
}

TEST_CASE("corpus errors carry line numbers") {
  std::istringstream bad("{\"id\": \"a\", \"name\": \"f\"}\n{not json\n");
  try {
    parse_corpus_jsonl(bad, "c.jsonl");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find("c.jsonl:2") != std::string::npos);
  }
  std::istringstream dup("{\"id\": \"a\", \"name\": \"f\"}\n{\"id\": \"a\", \"name\": \"g\"}\n");
  CHECK_THROWS_AS(parse_corpus_jsonl(dup), Error);
  CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.jsonl"), Error);
}

TEST_CASE("corpus round-trips through JSON lines") {
  const Corpus c = load_corpus(testing::data_dir() / "fixtures/fig4/corpus.jsonl");
  std::stringstream buf;
  write_corpus_jsonl(c, buf);
  const Corpus back = parse_corpus_jsonl(buf);
  CHECK(back.docs() == c.docs());
}

TEST_CASE("language names") {
  CHECK(parse_language("Java") == Language::kJava);
  CHECK(parse_language("javascript") == Language::kJavascript);
  CHECK(parse_language("cobol") == Language::kUnknown);
  CHECK(language_name(Language::kGo) == "go");
}

}  // namespace
}  // namespace zacq
