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

#ifndef ZACQ_CLARIFY_HPP_
#define ZACQ_CLARIFY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zacq/taskextract.hpp"
#include "zacq/vecsearch.hpp"

namespace zacq {

// Targets of a clarifying question: the six task roles plus object (O = DO
// or PO), object modifier (OM = DOM or POM) and object role (OR = a minimal
// verb phrase, V + DO or V + P + PO).
enum class Target : std::uint8_t { kV, kDom, kDo, kP, kPom, kPo, kO, kOm, kOr };

// Fixed order used to break ties during inference and aspect selection.
inline constexpr std::array<Target, 9> kTargetScanOrder = {Target::kV,  Target::kO,   Target::kDo,
                                                           Target::kP,  Target::kPo,  Target::kOr,
                                                           Target::kDom, Target::kPom, Target::kOm};

std::string_view target_name(Target t);
std::optional<Target> parse_target(std::string_view name);
Target target_of(Role r);
std::optional<Role> concrete_role(Target t);

class TargetSet {
 public:
  TargetSet() = default;
  TargetSet(std::initializer_list<Target> targets);

  bool contains(Target t) const { return (bits_ >> static_cast<unsigned>(t)) & 1U; }
  void insert(Target t) { bits_ |= static_cast<std::uint16_t>(1U << static_cast<unsigned>(t)); }
  void erase(Target t) { bits_ &= static_cast<std::uint16_t>(~(1U << static_cast<unsigned>(t))); }
  bool empty() const { return bits_ == 0; }
  // Members in scan order.
  std::vector<Target> ordered() const;

  friend bool operator==(const TargetSet&, const TargetSet&) = default;

 private:
  std::uint16_t bits_ = 0;
};

// A partial role -> attribute assignment (the defined attributes d).
class AttributeSet {
 public:
  AttributeSet() = default;
  AttributeSet(std::initializer_list<std::pair<Role, std::string>> values);
  static AttributeSet from_task(const Task& task);

  bool has(Role r) const { return !values_[static_cast<std::size_t>(r)].empty(); }
  const std::string& get(Role r) const { return values_[static_cast<std::size_t>(r)]; }
  void set(Role r, std::string value) { values_[static_cast<std::size_t>(r)] = std::move(value); }
  void erase(Role r) { values_[static_cast<std::size_t>(r)].clear(); }

  bool empty() const;
  std::size_t size() const;
  std::vector<Role> roles() const;

  bool subset_of(const Task& task) const;
  bool subset_of(const AttributeSet& other) const;
  // Adds every attribute of `other`; on conflict `other` wins.
  AttributeSet& merge(const AttributeSet& other);
  // Attributes of *this that `other` lacks or holds with a different value.
  AttributeSet minus(const AttributeSet& other) const;
  Task as_task() const;
  std::string to_string() const;

  friend bool operator==(const AttributeSet&, const AttributeSet&) = default;
  friend auto operator<=>(const AttributeSet&, const AttributeSet&) = default;

 private:
  std::array<std::string, kRoleCount> values_;
};

// S_d: the targets worth asking about once `d` is defined.
TargetSet syntactic_targets(const AttributeSet& d);

struct Aspect {
  Target target = Target::kV;
  AttributeSet defined;

  friend bool operator==(const Aspect&, const Aspect&) = default;
};

struct FacetOption {
  std::string value;
  std::size_t support = 0;  // distinct functions
  AttributeSet assignment;  // concrete roles filled by choosing this option

  friend bool operator==(const FacetOption&, const FacetOption&) = default;
};

// Options ordered by support (descending), then alphabetically.
struct Facet {
  Target target = Target::kV;
  std::vector<FacetOption> options;

  bool empty() const { return options.empty(); }
};

// T_d: rows whose task contains `d` and none of the rejected sets.
std::vector<const TaskRow*> tasks_matching(const TaskTable& table, const AttributeSet& d,
                                           std::span<const AttributeSet> rejected = {});
std::size_t distinct_functions(std::span<const TaskRow* const> rows);

// Throws Error(kInvalidArgument) unless s is in syntactic_targets(d).
Facet facet_for(const TaskTable& table, const AttributeSet& d, Target s,
                std::span<const AttributeSet> rejected = {});

struct InferenceParams {
  std::size_t min_support = 2;
  double min_confidence = 0.5;

  friend bool operator==(const InferenceParams&, const InferenceParams&) = default;
};

struct SessionState {
  std::string query_text;
  std::optional<Task> query_task;
  SparseVector query_vector;
  AttributeSet accepted;
  std::vector<AttributeSet> rejected_sets;
  TaskTable task_table;
  RankedResults ranking;
  std::size_t round = 0;
  InferenceParams inference;
  RocchioParams rocchio;
  std::size_t max_options = 5;
  std::size_t top_k = 50;
  // Irregular gerunds for question rendering; spelling rules alone when null.
  const Lexicon* lexicon = nullptr;
};

struct Inference {
  AttributeSet defined;     // accepted plus everything inferred
  AttributeSet inferred;    // not yet confirmed by the user
  AttributeSet from_query;  // inferred because the query task names them
};

Inference infer_attributes(const SessionState& state);

struct Selection {
  Aspect aspect;
  Facet facet;
};

// Greedy choice: the target whose top option has the highest support.
std::optional<Selection> select_aspect(const SessionState& state, const AttributeSet& d);

enum class QuestionKind { kConfirmation, kElicitation };
enum class Template { kT1 = 1, kT2, kT3, kT4, kT5 };

std::string_view question_kind_name(QuestionKind k);
std::string_view template_name(Template t);

struct ClarifyingQuestion {
  QuestionKind kind = QuestionKind::kElicitation;
  Template tmpl = Template::kT1;
  std::string text;
  std::vector<FacetOption> options;  // at most max_options
  Aspect aspect;
  AttributeSet confirmed;            // full attribute set a "yes" accepts
  std::size_t matching_functions = 0;

  std::vector<std::string> option_values() const;
};

ClarifyingQuestion render_question(const Aspect& aspect, const Facet& facet, const SessionState& state);

struct Answer {
  enum class Kind { kSelected, kNoneOfThese, kYes, kNo };
  Kind kind = Kind::kNoneOfThese;
  std::string option;

  static Answer selected(std::string value) { return {Kind::kSelected, std::move(value)}; }
  static Answer none() { return {Kind::kNoneOfThese, {}}; }
  static Answer yes() { return {Kind::kYes, {}}; }
  static Answer no() { return {Kind::kNo, {}}; }

  friend bool operator==(const Answer&, const Answer&) = default;
};

std::string_view answer_kind_name(Answer::Kind k);

// Records the answer; throws Error(kInvalidArgument) when its kind does not
// fit the question or the option was not offered.
SessionState apply_answer(SessionState state, const ClarifyingQuestion& cq, const Answer& answer);

struct Partition {
  std::set<std::string> candidates;
  std::set<std::string> rejects;

  friend bool operator==(const Partition&, const Partition&) = default;
};

Partition partition_functions(const TaskTable& table, const AttributeSet& accepted,
                              std::span<const AttributeSet> rejected);
Partition partition_functions(const SessionState& state);

// The next question, or nullopt once the task is clarified.
std::optional<ClarifyingQuestion> next_round(const SessionState& state);

// "a", "a or b", "a, b, or c".
std::string join_options(std::span<const std::string> items);
// Task phrase with the verb inflected as a gerund.
std::string gerund_phrase(const AttributeSet& attrs, const Lexicon& lex);

}  // namespace zacq

#endif  // ZACQ_CLARIFY_HPP_
