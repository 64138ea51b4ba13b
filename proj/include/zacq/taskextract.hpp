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

#ifndef ZACQ_TASKEXTRACT_HPP_
#define ZACQ_TASKEXTRACT_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "zacq/corpus.hpp"

namespace zacq {

// The six syntactic roles of a task phrase.
enum class Role : std::uint8_t { kV, kDom, kDo, kP, kPom, kPo };
inline constexpr std::size_t kRoleCount = 6;
inline constexpr std::array<Role, kRoleCount> kAllRoles = {Role::kV,   Role::kDom, Role::kDo,
                                                          Role::kP,   Role::kPom, Role::kPo};

std::string_view role_name(Role r);
std::optional<Role> parse_role(std::string_view name);

// One development task: a verb plus optional object/preposition roles.
// Absent roles are empty strings.
class Task {
 public:
  Task() = default;
  Task(std::string v, std::string dom, std::string dobj, std::string p, std::string pom,
       std::string po);

  const std::string& operator[](Role r) const { return attrs_[static_cast<std::size_t>(r)]; }
  void set(Role r, std::string value) { attrs_[static_cast<std::size_t>(r)] = std::move(value); }
  bool has(Role r) const { return !(*this)[r].empty(); }

  // V present and either DO, or both P and PO.
  bool valid() const;

  friend bool operator==(const Task&, const Task&) = default;
  friend auto operator<=>(const Task&, const Task&) = default;

 private:
  std::array<std::string, kRoleCount> attrs_;
};

// "v [dom] do [p [pom] po]".
std::string render_task(const Task& task);

struct Lexicon {
  std::unordered_set<std::string> verbs;
  std::unordered_set<std::string> prepositions;
  std::unordered_set<std::string> determiners;
  std::unordered_set<std::string> function_words;
  std::unordered_set<std::string> generic_verbs;
  std::unordered_set<std::string> generic_nouns;
  std::unordered_set<std::string> collection_nouns;
  std::unordered_map<std::string, std::string> verb_forms;  // irregular form -> lemma
  std::unordered_map<std::string, std::string> gerunds;     // lemma -> irregular gerund
  std::unordered_set<std::string> stopwords;                // keyword suggestion only

  // Loads the word lists under `dir` (verbs.txt, prepositions.txt, ...).
  static Lexicon load(const std::filesystem::path& dir);
};

// Lemma of a verb form when it is (an inflection of) a known verb.
std::optional<std::string> verb_lemma(std::string_view token, const Lexicon& lex);
// Present participle: "convert" -> "converting", "get" -> "getting".
std::string gerund(std::string_view lemma, const Lexicon& lex);

enum class Tag { kVerb, kNoun, kAdj, kPrep, kDet, kOther, kBoundary };
std::string_view tag_name(Tag t);

struct TaggedToken {
  std::string text;
  Tag tag = Tag::kNoun;
  std::string lemma;  // set for verbs

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

std::vector<TaggedToken> tokenize_and_tag(std::string_view sentence, const Lexicon& lex);

std::vector<Task> extract_tasks(std::span<const TaggedToken> tokens, const Lexicon& lex);
std::vector<Task> extract_tasks(std::string_view sentence, const Lexicon& lex);

// Drops tasks with a generic verb or a generic object head.
std::vector<Task> filter_generic(std::vector<Task> tasks, const Lexicon& lex);

std::optional<Task> extract_query_task(std::string_view query, const Lexicon& lex);

// Distinct, generic-filtered tasks of one function, in extraction order.
std::vector<Task> extract_function_tasks(const FunctionDoc& doc, const Lexicon& lex);

struct TaskRow {
  std::string function_id;
  Task task;

  friend bool operator==(const TaskRow&, const TaskRow&) = default;
};

// Rows of (function, task) over a result list, with a role -> value ->
// functions index.
class TaskTable {
 public:
  TaskTable() = default;
  explicit TaskTable(std::vector<TaskRow> rows);

  const std::vector<TaskRow>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  // Distinct function ids in first-appearance order.
  const std::vector<std::string>& function_ids() const noexcept { return function_ids_; }
  bool has_tasks(std::string_view function_id) const;
  std::vector<const TaskRow*> rows_for(std::string_view function_id) const;
  const std::set<std::string>& functions_with(Role role, const std::string& value) const;

 private:
  void rebuild_index();

  std::vector<TaskRow> rows_;
  std::vector<std::string> function_ids_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_function_;
  std::array<std::map<std::string, std::set<std::string>>, kRoleCount> index_;
};

TaskTable build_task_table(std::span<const FunctionDoc> results, const Lexicon& lex);
TaskTable build_task_table(std::span<const FunctionDoc* const> results, const Lexicon& lex);

}  // namespace zacq

#endif  // ZACQ_TASKEXTRACT_HPP_
