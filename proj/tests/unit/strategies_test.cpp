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
#include "zacq/error.hpp"
#include "zacq/session.hpp"
#include "zacq/strategies.hpp"

namespace zacq {
namespace {

using Set = std::set<std::string>;
using List = std::vector<std::string>;

// Six results over keywords a..d:
//   f1 {a, b}   f2 {a, c}   f3 {b, c}   f4 {a}   f5 {c, d}   f6 {}
KwState six_functions() {
  KwState s;
  s.results = {"f1", "f2", "f3", "f4", "f5", "f6"};
  s.pool = {"a", "b", "c", "d"};
  s.incidence = {{"f1", {"a", "b"}}, {"f2", {"a", "c"}}, {"f3", {"b", "c"}},
                 {"f4", {"a"}},      {"f5", {"c", "d"}}, {"f6", {}}};
  return s;
}

TEST_CASE("keyword suggestions split the working set evenly") {
  const KwState s = six_functions();
  CHECK(kw_working_set(s).size() == 6);
  // a and c split 3/3, b splits 2/4, d splits 1/5.
  CHECK(kw_suggest(s, 5) == List{"a", "c", "b", "d"});
  CHECK(kw_suggest(s, 2) == List{"a", "c"});
  CHECK(kw_partition(s) == Partition{});
}

TEST_CASE("selecting a keyword narrows candidates to its holders") {
  const List shown{"a", "c", "b", "d"};
  KwState s = kw_apply(six_functions(), shown, Answer::selected("a"));
  CHECK(s.selected == Set{"a"});
  const Partition p = kw_partition(s);
  CHECK(p.candidates == Set{"f1", "f2", "f4"});
  CHECK(p.rejects.empty());
  CHECK(kw_suggest(s, 5) == List{"b", "c"});

  s = kw_apply(s, List{"b", "c"}, Answer::none());
  CHECK(s.rejected == Set{"b", "c"});
  const Partition after = kw_partition(s);
  CHECK(after.candidates == Set{"f4"});
  CHECK(after.rejects == Set{"f1", "f2", "f3", "f5"});
  CHECK(kw_suggest(s, 5).empty());
}

TEST_CASE("rejecting keywords rejects every function that holds one") {
  const List shown{"a", "c", "b", "d"};
  const KwState s = kw_apply(six_functions(), shown, Answer::none());
  const Partition p = kw_partition(s);
  CHECK(p.candidates.empty());
  CHECK(p.rejects == Set{"f1", "f2", "f3", "f4", "f5"});
  CHECK(kw_working_set(s) == Set{"f6"});
  CHECK(kw_suggest(s, 5).empty());
}

TEST_CASE("rejected keywords stay out of later suggestions") {
  KwState s = kw_apply(six_functions(), List{"d"}, Answer::no());
  CHECK(kw_working_set(s) == Set{"f1", "f2", "f3", "f4", "f6"});
  const List next = kw_suggest(s, 5);
  CHECK(std::find(next.begin(), next.end(), "d") == next.end());
  CHECK(next.front() == "a");
  CHECK(kw_partition(s).rejects == Set{"f5"});
}

TEST_CASE("keyword answers are validated") {
  const List shown{"a", "c"};
  CHECK_THROWS_AS(kw_apply(six_functions(), shown, Answer::selected("d")), Error);
  CHECK_THROWS_AS(kw_apply(six_functions(), shown, Answer::yes()), Error);
  CHECK(kw_apply(six_functions(), List{"b"}, Answer::yes()).selected == Set{"b"});
}

TEST_CASE("keyword sessions end with identical keyword sets among candidates") {
  const Engine engine = testing::toy_engine();
  for (const char* query : {"read file", "sort list", "encode url", "parse date"}) {
    CAPTURE(query);
    Session s = Session::start(engine, query, Method::kKw);
    const auto* kw = dynamic_cast<const KwStrategy*>(&s.strategy());
    REQUIRE(kw != nullptr);
    CHECK(kw->state().pool.size() == 25);
    while (!s.done()) {
      const Question& q = *s.question();
      s.answer(q.kind == QuestionKind::kConfirmation ? Answer::yes() : Answer::selected(q.options.front()));
    }
    const auto working = kw_working_set(kw->state());
    REQUIRE_FALSE(working.empty());
    const auto& first = kw->state().incidence.at(*working.begin());
    for (const auto& id : working) CHECK(kw->state().incidence.at(id) == first);
  }
}

TEST_CASE("V-DO asks for a verb, then an object, and never infers") {
  const Engine engine = testing::fig4_engine();
  Session s = Session::start(engine, "convert integer to text", Method::kVdo);
  REQUIRE(s.question());
  CHECK(s.question()->target == "V");
  CHECK(s.question()->text.rfind("Are you interested in doing any of the following: ", 0) == 0);
  const auto& verbs = s.question()->options;
  REQUIRE(std::find(verbs.begin(), verbs.end(), "convert") != verbs.end());
  s.answer(Answer::selected("convert"));
  REQUIRE(s.question());
  CHECK(s.question()->target == "DO");
  const auto objects = s.question()->options;
  REQUIRE_FALSE(objects.empty());
  s.answer(Answer::selected(objects.front()));
  CHECK(s.done());
  CHECK(dynamic_cast<const VdoStrategy&>(s.strategy()).phase() == VdoStrategy::Phase::kDone);
}

TEST_CASE("V-DO stops when the user rejects every verb") {
  const Engine engine = testing::fig4_engine();
  Session s = Session::start(engine, "convert integer to text", Method::kVdo);
  s.answer(Answer::none());
  if (!s.done()) CHECK(s.question()->target == "V");
}

TEST_CASE("every method reranks through the shared Rocchio path") {
  const Engine engine = testing::toy_engine();
  for (Method m : {Method::kZacq, Method::kVdo, Method::kKw}) {
    CAPTURE(method_name(m));
    Session s = Session::start(engine, "compress data", m);
    const auto ids = s.initial_ranking().ids();
    while (!s.done()) {
      const Question& q = *s.question();
      const Answer a = q.kind == QuestionKind::kConfirmation ? Answer::yes() : Answer::selected(q.options.front());
      const Partition p = s.preview_partition(a);
      const RankedResults expect =
          refine_ranking(engine.space(), s.initial_ranking().query_vector, p, s.config().rocchio, ids);
      CHECK(s.answer(a).ids() == expect.ids());
    }
  }
}

TEST_CASE("method names") {
  CHECK(parse_method("zacq") == Method::kZacq);
  CHECK(parse_method("kw") == Method::kKw);
  CHECK_THROWS_AS(parse_method("KW"), Error);
  CHECK(parse_methods("zacq, vdo,kw") == std::vector<Method>{Method::kZacq, Method::kVdo, Method::kKw});
  try {
    parse_method("bm25");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnknownMethod);
  }
}

TEST_CASE("answers and configs round-trip through JSON") {
  for (const Answer& a : {Answer::selected("string"), Answer::none(), Answer::yes(), Answer::no()}) {
    CHECK(answer_from_json(to_json(a)) == a);
  }
  CHECK_THROWS_AS(answer_from_json(nlohmann::json{{"kind", "maybe"}}), Error);
  CHECK_THROWS_AS(answer_from_json(nlohmann::json{{"kind", "selected"}}), Error);

  RefineConfig c;
  c.rocchio.beta = 0.5;
  c.inference.min_support = 3;
  c.max_options = 4;
  CHECK(refine_config_from_json(to_json(c)) == c);
  CHECK(refine_config_from_json(nlohmann::json::object()) == RefineConfig{});
  CHECK_THROWS_AS(refine_config_from_json(nlohmann::json{{"alpha", -1.0}}), Error);
}

TEST_CASE("answers must fit the pending question") {
  Question elicit{QuestionKind::kElicitation, "?", {"a", "b"}, "T1", "V"};
  CHECK_NOTHROW(check_answer_fits(elicit, Answer::selected("a")));
  CHECK_NOTHROW(check_answer_fits(elicit, Answer::none()));
  CHECK_THROWS_AS(check_answer_fits(elicit, Answer::yes()), Error);
  CHECK_THROWS_AS(check_answer_fits(elicit, Answer::selected("c")), Error);
  try {
    check_answer_fits(std::nullopt, Answer::none());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kState);
  }
}

}  // namespace
}  // namespace zacq
