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

#include "sd_truth_table.hpp"
#include "test_support.hpp"
#include "zacq/error.hpp"

namespace zacq {
namespace {

using testing::state_from_rows;
using testing::task;

std::string targets_string(const TargetSet& set) {
  std::string out;
  for (Target t : set.ordered()) {
    if (!out.empty()) out += ' ';
    out += target_name(t);
  }
  return out;
}

AttributeSet from_mask(std::uint8_t mask) {
  AttributeSet d;
  for (std::size_t i = 0; i < kRoleCount; ++i) {
    if (mask & (1U << i)) d.set(kAllRoles[i], "x" + std::to_string(i));
  }
  return d;
}

std::vector<TaskRow> rows(std::initializer_list<std::pair<const char*, Task>> items) {
  std::vector<TaskRow> out;
  for (const auto& [id, t] : items) out.push_back({id, t});
  return out;
}

TEST_CASE("syntactic targets follow the truth table for all 64 subsets") {
  for (const auto& row : testing::kSdTruthTable) {
    CAPTURE(static_cast<int>(row.mask));
    CHECK(targets_string(syntactic_targets(from_mask(row.mask))) == row.targets);
  }
}

TEST_CASE("syntactic targets on the named cases") {
  CHECK(syntactic_targets({}) == TargetSet{Target::kV, Target::kO});
  CHECK(syntactic_targets({{Role::kV, "convert"}}) == TargetSet{Target::kDo, Target::kP, Target::kPo});
  CHECK(syntactic_targets({{Role::kV, "convert"}, {Role::kDo, "int"}, {Role::kP, "to"}, {Role::kPo, "value"}}) ==
        TargetSet{Target::kDom, Target::kPom});
  CHECK(syntactic_targets({{Role::kDo, "file"}}) == TargetSet{Target::kDom, Target::kOm, Target::kOr});
}

TEST_CASE("attribute sets") {
  AttributeSet a{{Role::kV, "read"}, {Role::kDo, "file"}};
  CHECK(a.size() == 2);
  CHECK(a.subset_of(task("read", "file", "from", "disk")));
  CHECK_FALSE(a.subset_of(task("write", "file")));
  AttributeSet b{{Role::kDo, "stream"}, {Role::kP, "to"}};
  a.merge(b);
  CHECK(a.get(Role::kDo) == "stream");
  CHECK(a.get(Role::kP) == "to");
  const AttributeSet diff = a.minus(AttributeSet{{Role::kV, "read"}, {Role::kDo, "file"}});
  CHECK(diff == AttributeSet{{Role::kDo, "stream"}, {Role::kP, "to"}});
  CHECK(AttributeSet::from_task(task("read", "file")).as_task() == task("read", "file"));
}

TEST_CASE("join_options uses a serial comma") {
  const std::vector<std::string> one{"a"}, two{"a", "b"}, three{"a", "b", "c"};
  CHECK(join_options(one) == "a");
  CHECK(join_options(two) == "a or b");
  CHECK(join_options(three) == "a, b, or c");
}

TEST_CASE("facets rank by distinct-function support, then alphabetically") {
  TaskTable table(rows({{"f1", task("read", "file")},
                        {"f1", task("read", "line")},
                        {"f2", task("read", "file")},
                        {"f3", task("write", "file")},
                        {"f4", task("parse", "date")},
                        {"f5", task("sort", "list")}}));
  const Facet verbs = facet_for(table, {}, Target::kV);
  REQUIRE(verbs.options.size() == 4);
  CHECK(verbs.options[0].value == "read");
  CHECK(verbs.options[0].support == 2);
  CHECK(verbs.options[1].value == "parse");
  CHECK(verbs.options[2].value == "sort");
  CHECK(verbs.options[3].value == "write");

  const Facet objects = facet_for(table, {}, Target::kO);
  REQUIRE_FALSE(objects.empty());
  CHECK(objects.options[0].value == "file");
  CHECK(objects.options[0].support == 3);

  const std::vector<AttributeSet> rejected{AttributeSet{{Role::kV, "read"}}};
  const Facet without_read = facet_for(table, {}, Target::kO, rejected);
  CHECK(without_read.options[0].value == "date");
  CHECK(without_read.options[1].value == "file");
  CHECK(without_read.options[1].support == 1);

  CHECK_THROWS_AS(facet_for(table, {}, Target::kP), Error);
}

TEST_CASE("partition puts functions with a matching task first and rejected ones aside") {
  TaskTable table(rows({{"a", task("read", "file")},
                        {"b", task("read", "file")},
                        {"b", task("write", "file")},
                        {"c", task("write", "file")},
                        {"d", task("sort", "list")}}));
  const std::vector<AttributeSet> rejected{AttributeSet{{Role::kV, "write"}}};
  const Partition p = partition_functions(table, AttributeSet{{Role::kV, "read"}}, rejected);
  CHECK(p.candidates == std::set<std::string>{"a", "b"});
  CHECK(p.rejects == std::set<std::string>{"c"});
}

TEST_CASE("V elicitation renders gerund options") {
  auto s = state_from_rows(rows({{"f1", task("read", "config")},
                                 {"f2", task("read", "stream")},
                                 {"f3", task("write", "log")},
                                 {"f4", task("write", "report")},
                                 {"f5", task("parse", "date")},
                                 {"f6", task("parse", "header")}}));
  const auto q = next_round(s);
  REQUIRE(q);
  CHECK(q->aspect.target == Target::kV);
  CHECK(q->tmpl == Template::kT1);
  CHECK(q->text == "Are you interested in doing any of the following: parsing, reading, or writing?");
}

TEST_CASE("O elicitation reproduces the natural-language exemplar") {
  auto s = state_from_rows(rows({{"f1", task("count", "characters")},
                                 {"f2", task("strip", "characters")},
                                 {"f3", task("invoke", "method")},
                                 {"f4", task("find", "method")},
                                 {"f5", task("decode", "string")},
                                 {"f6", task("reverse", "string")},
                                 {"f7", task("throw", "unsupportedencodingexception")},
                                 {"f8", task("catch", "unsupportedencodingexception")},
                                 {"f9", task("encode", "url")},
                                 {"f10", task("open", "url")}}));
  const auto q = next_round(s);
  REQUIRE(q);
  CHECK(q->aspect.target == Target::kO);
  CHECK(q->tmpl == Template::kT2);
  CHECK(q->text ==
        "Are you looking for any of the following: characters, method, string, unsupportedencodingexception, or url?");
}

TEST_CASE("verb-phrase elicitation reproduces the logical exemplar") {
  auto s = state_from_rows(rows({{"f1", task("change", "priority")},
                                 {"f2", task("get", "priority")},
                                 {"f3", task("remove", "priority")},
                                 {"f4", task("return", "priority")},
                                 {"f5", task("set", "priority")}}));
  const auto q = next_round(s);
  REQUIRE(q);
  CHECK(q->aspect.target == Target::kOr);
  CHECK(q->aspect.defined == AttributeSet{{Role::kDo, "priority"}});
  CHECK(q->text ==
        "Are you interested in doing any of the following: changing priority, getting priority, removing priority, "
        "returning priority, or setting priority?");
}

TEST_CASE("T5 confirmation reproduces the meaningful exemplar") {
  auto s = state_from_rows(rows({{"f1", task("convert", "string", "to", "number")},
                                 {"f2", task("convert", "date", "to", "string")},
                                 {"f3", task("convert", "bytes")}}),
                           task("convert", "string", "to", "number"));
  s.accepted = AttributeSet{{Role::kV, "convert"}};
  const auto q = next_round(s);
  REQUIRE(q);
  CHECK(q->kind == QuestionKind::kConfirmation);
  CHECK(q->tmpl == Template::kT5);
  CHECK(q->matching_functions == 1);
  CHECK(q->text == "Found 1 function that specifically mentions converting string to number. Would you like to see "
                   "it first?");
}

TEST_CASE("T5 pluralizes") {
  auto s = state_from_rows(rows({{"f1", task("convert", "string", "to", "number")},
                                 {"f2", task("convert", "string", "to", "number")},
                                 {"f3", task("convert", "bytes")}}),
                           task("convert", "string", "to", "number"));
  s.accepted = AttributeSet{{Role::kV, "convert"}};
  const auto q = next_round(s);
  REQUIRE(q);
  CHECK(q->text == "Found 2 functions that specifically mention converting string to number. Would you like to see "
                   "them first?");
}

TEST_CASE("POM elicitation uses T3 with a gerund verb phrase") {
  auto s = state_from_rows(rows({{"f1", task("convert", "int", "to", "value", "", "string")},
                                 {"f2", task("convert", "int", "to", "value", "", "null")},
                                 {"f3", task("convert", "int", "to", "value", "", "float")},
                                 {"f4", task("convert", "int", "to", "value", "", "datetime")},
                                 {"f5", task("convert", "text", "to", "integer")}}),
                           task("convert", "int", "to", "value"));
  const auto q = next_round(s);
  REQUIRE(q);
  CHECK(q->aspect.target == Target::kPom);
  CHECK(q->tmpl == Template::kT3);
  CHECK(q->text == "What kind of value are you interested in converting int to?");
  CHECK(q->option_values() == std::vector<std::string>{"datetime", "float", "null", "string"});
}

TEST_CASE("P elicitation uses T4") {
  auto s = state_from_rows(rows({{"f1", task("copy", "file", "to", "directory")},
                                 {"f2", task("copy", "file", "to", "stream")},
                                 {"f3", task("copy", "file", "from", "url")},
                                 {"f4", task("copy", "file", "from", "archive")},
                                 {"f5", task("copy", "file", "into", "buffer")}}));
  s.accepted = AttributeSet{{Role::kV, "copy"}, {Role::kDo, "file"}};
  const auto q = next_round(s);
  REQUIRE(q);
  CHECK(q->aspect.target == Target::kP);
  CHECK(q->tmpl == Template::kT4);
  CHECK(q->text == "How do you want to copy file (any of the following: from, to, or into)?");
}

TEST_CASE("DO elicitation with a known verb fills the object slot") {
  auto s = state_from_rows(rows({{"f1", task("read", "file")},
                                 {"f2", task("read", "file")},
                                 {"f3", task("read", "line")},
                                 {"f4", task("read", "line")},
                                 {"f5", task("read", "header")}}));
  s.accepted = AttributeSet{{Role::kV, "read"}};
  const auto q = next_round(s);
  REQUIRE(q);
  CHECK(q->aspect.target == Target::kDo);
  CHECK(q->text == "Are you interested in reading any of the following: file, line, or header?");
}

TEST_CASE("inference takes the query's attributes before frequent ones") {
  auto s = state_from_rows(rows({{"f1", task("read", "file")},
                                 {"f2", task("read", "file")},
                                 {"f3", task("read", "file")},
                                 {"f4", task("write", "file")}}),
                           task("write", "file"));
  const Inference inf = infer_attributes(s);
  CHECK(inf.defined.get(Role::kV) == "write");
  CHECK(inf.from_query.get(Role::kV) == "write");
}

TEST_CASE("inference respects the support and confidence thresholds") {
  auto s = state_from_rows(rows({{"f1", task("read", "file")},
                                 {"f2", task("read", "file")},
                                 {"f3", task("write", "log")}}));
  CHECK(infer_attributes(s).inferred.get(Role::kV) == "read");
  s.inference.min_support = 3;
  CHECK(infer_attributes(s).inferred.empty());
  s.inference.min_support = 2;
  s.inference.min_confidence = 0.9;
  CHECK(infer_attributes(s).inferred.empty());
}

TEST_CASE("answers update accepted and rejected attributes") {
  auto s = state_from_rows(rows({{"f1", task("read", "config")},
                                 {"f2", task("read", "stream")},
                                 {"f3", task("write", "log")},
                                 {"f4", task("write", "report")},
                                 {"f5", task("parse", "date")},
                                 {"f6", task("parse", "header")}}));
  const auto q = next_round(s);
  REQUIRE(q);
  const SessionState picked = apply_answer(s, *q, Answer::selected("write"));
  CHECK(picked.accepted == AttributeSet{{Role::kV, "write"}});
  CHECK(partition_functions(picked).candidates == std::set<std::string>{"f3", "f4"});

  const SessionState none = apply_answer(s, *q, Answer::none());
  CHECK(none.accepted.empty());
  CHECK(none.rejected_sets.size() == 3);
  CHECK(partition_functions(none).rejects.size() == 6);

  CHECK_THROWS_AS(apply_answer(s, *q, Answer::yes()), Error);
  CHECK_THROWS_AS(apply_answer(s, *q, Answer::selected("sort")), Error);
}

TEST_CASE("refinement ends once a complete task leaves nothing to tell apart") {
  auto s = state_from_rows(rows({{"f1", task("read", "file")}, {"f2", task("write", "log")}}));
  s.accepted = AttributeSet{{Role::kV, "read"}, {Role::kDo, "file"}};
  CHECK_FALSE(next_round(s).has_value());
}

}  // namespace
}  // namespace zacq
